// Copyright 2026 The ptq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Synthesis of the two building blocks of every term circuit.
 *
 * U_{E^p} rotates an ancilla by theta_k = 2 asin(C / E_nk^p) conditioned on
 * the system register holding |k>, so that
 *
 *   U_{E^p} |k>|0> = |k> (sqrt(1 - C^2/E_nk^{2p}) |0> + C/E_nk^p |1>),   k != n
 *   U_{E^p} |n>|0> = |n>|0>.
 *
 * The standard decomposition uses one fully controlled Ry per level, with
 * 0-controls where k has a clear bit. The improved decomposition places one
 * Ry per bitmask x, controlled on the set bits of x only, with angles alpha
 * chosen so that the rotations selected by any |k> sum to theta_k:
 *
 *   sum_{y subset of x} alpha_y = theta_x.
 *
 * Its solution is the Mobius transform of theta on the subset lattice.
 */

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ptq/backend.hpp"
#include "ptq/circuit.hpp"
#include "ptq/system.hpp"

namespace ptq {

struct ThetaTable {
  int level = 0;
  int power = 1;
  double c = 0.0;
  std::vector<double> thetas;
};

struct AlphaTable {
  std::vector<double> alphas;
  /// max_x |sum_{y subset of x} alpha_y - theta_x|
  double max_residual = 0.0;
};

enum class UeVariant { Standard, Improved };

std::string variant_name(UeVariant v);
UeVariant parse_variant(std::string_view s);

/// Largest admissible C: min_{k != n} |E_nk|^p.
double select_c(const PerturbedSystem& sys, int level, int power);

ThetaTable theta_angles(const PerturbedSystem& sys, int level, int power);

/// Mobius inversion of the subset-sum constraints. Throws ErrorKind::Numerical
/// when the post-hoc residual exceeds tolerance.
AlphaTable solve_alpha(const ThetaTable& thetas);
AlphaTable solve_alpha(const std::vector<double>& thetas);

/// Subset-sum (zeta) transform: out[x] = sum_{y subset of x} in[y].
std::vector<double> subset_sums(std::vector<double> values);

/// U_{E^p} fragment acting on the system register (controls) and `target`.
std::vector<Gate> build_ue(const PerturbedSystem& sys, int level, int power, UeVariant variant,
                           int target);

/// exp(i t V) for Hermitian V.
Matrix hermitian_exponential(const Matrix& v, double t);

/// (prod_i exp(i lambda c_i P_i / r))^r as a dense matrix.
Matrix trotter_unitary(const std::vector<PauliTerm>& terms, int n_qubits, double lambda, int steps);

/// U_V as a system-register gate.
Gate build_uv(const PerturbedSystem& sys, const UvBackend& backend);

}  // namespace ptq

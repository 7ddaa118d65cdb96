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
 * Perturbed-system model: an unperturbed spectrum E_k, a Hermitian
 * perturbation V written in the unperturbed eigenbasis, a coupling and the
 * level whose corrections are wanted.
 *
 * Basis convention: level index k is the computational basis state whose
 * qubit j holds bit j of k (little endian). Pauli strings are read left to
 * right, character j acting on qubit j.
 */

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptq/types.hpp"

namespace ptq {

struct PauliTerm {
  double coefficient = 0.0;
  std::string string;  // e.g. "XZI", length N
};

struct ValidationOptions {
  double degeneracy_tol = 1e-9;
  double hermitian_tol = 1e-12;
  double pauli_tol = 1e-10;
};

struct PerturbedSystem {
  int n_qubits = 0;
  std::vector<double> energies;
  Matrix perturbation;
  std::vector<PauliTerm> pauli_terms;
  double lambda = 0.0;
  int target_level = 0;

  [[nodiscard]] std::size_t dimension() const { return energies.size(); }

  /// E_ab = E_a - E_b.
  [[nodiscard]] double gap(std::size_t a, std::size_t b) const {
    return energies[a] - energies[b];
  }

  /// E_nk for the target level n.
  [[nodiscard]] double gap(std::size_t k) const {
    return gap(static_cast<std::size_t>(target_level), k);
  }

  [[nodiscard]] Complex v(std::size_t a, std::size_t b) const {
    return perturbation(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }

  [[nodiscard]] PerturbedSystem with_lambda(double l) const {
    PerturbedSystem out = *this;
    out.lambda = l;
    return out;
  }

  [[nodiscard]] PerturbedSystem with_target(int n) const {
    PerturbedSystem out = *this;
    out.target_level = n;
    return out;
  }
};

/// Checks every PerturbedSystem invariant; throws ptq::Error on the first
/// violated one.
void validate_system(const PerturbedSystem& sys, const ValidationOptions& opts = {});

/// Smallest |E_a - E_b| over distinct pairs (infinity for a single level).
double min_pairwise_gap(const std::vector<double>& energies);

Matrix pauli_matrix(std::string_view pauli, int n_qubits);
Matrix assemble_pauli_sum(const std::vector<PauliTerm>& terms, int n_qubits);

/// Parses and validates a problem document (JSON).
PerturbedSystem load_system(std::string_view document, const ValidationOptions& opts = {});
PerturbedSystem load_system_file(const std::filesystem::path& path,
                                 const ValidationOptions& opts = {});
std::string dump_system(const PerturbedSystem& sys);

/// E_nk^p for every k != n; the k = n slot is empty.
struct EnergyGapTable {
  int level = 0;
  int power = 1;
  std::vector<std::optional<double>> gaps;
};

EnergyGapTable gap_table(const PerturbedSystem& sys, int level, int power);

struct Diagonalization {
  std::vector<double> energies;  // ascending
  Matrix transform;              // T with T * H0 * T^dagger diagonal
};

Diagonalization diagonalize_h0(const Matrix& h0, double hermitian_tol = 1e-12);

/// Rewrites an operator into the eigenbasis: T * op * T^dagger.
Matrix to_eigenbasis(const Matrix& op, const Matrix& transform);

/// Builds a system from a general H0 by classical pre-diagonalization.
PerturbedSystem system_from_h0(const Matrix& h0, const Matrix& perturbation, double lambda,
                               int target_level, const ValidationOptions& opts = {});

}  // namespace ptq

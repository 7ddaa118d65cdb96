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
 * Classical Rayleigh-Schrodinger reference values.
 *
 * All sums run over levels k != n of the target level n. E^(3) and E^(4)
 * decompose as
 *
 *   E3 = eps3 - E1 * m_b
 *   E4 = eps4 - m_b * E2 - 2 * E1 * m_a + E1^2 * m_c
 *
 * with E1 = V_nn and E2 = sum |V_nk|^2 / E_nk.
 */

#pragma once

#include <cstddef>
#include <vector>

#include "ptq/backend.hpp"
#include "ptq/series.hpp"
#include "ptq/system.hpp"
#include "ptq/terms.hpp"

namespace ptq {

enum class Summation { Plain, Compensated };

struct PTCorrections {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  double e4 = 0.0;
  double eps3 = 0.0;
  double eps4 = 0.0;
  /// Real part of the sum; its imaginary part cancels against the reversed
  /// path and does not enter E^(4).
  double m_a = 0.0;
  double m_b = 0.0;
  double m_c = 0.0;
  /// Largest |imag| seen among the sums that are real for Hermitian V.
  double max_imag_residue = 0.0;
};

PTCorrections pt_corrections(const PerturbedSystem& sys, Summation mode = Summation::Plain);

/// E_n^(order) for order in 1..4.
double correction(const PerturbedSystem& sys, int order, Summation mode = Summation::Plain);

/// Oracle value of a circuit-estimated term (any eps order via epsilon_m).
double term_value(const PerturbedSystem& sys, const TermId& id);
double term_value(const PTCorrections& pt, const PerturbedSystem& sys, const TermId& id);

/// Generic nested sum of order m by explicit enumeration of the (m-1)-tuples
/// of levels. Refuses (ErrorKind::Budget) when (M-1)^(m-1) exceeds budget.
double epsilon_m(const PerturbedSystem& sys, int m, std::size_t budget = 100'000'000);

/// Eigenvalues of H0 + lambda V; entry k is the eigenvalue whose eigenvector
/// overlaps most with |k>. Throws ErrorKind::Numerical when the matching is
/// ambiguous (best overlap below 0.5 or two eigenvectors claiming a level).
std::vector<double> exact_spectrum(const PerturbedSystem& sys);

/// Textbook first-order state correction coefficients V_kn / E_nk (zero at n).
std::vector<Complex> first_order_coefficients(const PerturbedSystem& sys);

/// Series in lambda of U_V for a backend, truncated at `degree`.
MatrixSeries uv_series(const PerturbedSystem& sys, const UvBackend& backend, int degree);

/// Post-selected amplitude of a term circuit as a series in lambda, computed
/// by contracting  <n| U D_L U ... D_1 U |n>  where D_j = diag(1 / E_nk^p_j)
/// with the k = n entry removed. No C constants are applied.
std::vector<Complex> post_selected_series(const PerturbedSystem& sys, const TermId& id,
                                          const MatrixSeries& uv);

/// The same contraction with a concrete U_V matrix and per-layer constants C_j.
Complex chain_amplitude(const PerturbedSystem& sys, const TermId& id, const Matrix& uv,
                        const std::vector<double>& c_values);

/// Offset b such that the unitary-U_V circuit's lambda^s coefficient, divided
/// by i^s, equals term + b (s = signal order). Computed by series arithmetic.
double uv_series_bias(const PerturbedSystem& sys, const TermId& id,
                      const UvBackend& backend = UvBackend::exact(), int degree = 6);

}  // namespace ptq

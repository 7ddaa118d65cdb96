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
 * Reading perturbation-theory terms back out of term circuits.
 *
 * The post-selected amplitude A(lambda) of a term circuit carries the term
 * in its lambda^s coefficient (s = signal order), scaled by the circuit
 * prefactor i^s * prod C_j. Three readouts are provided:
 *
 *  - linearized: U_V = I + i lambda V makes A an exact degree-s polynomial;
 *    s + 1 samples on a geometric lambda ladder determine it exactly.
 *  - unitary:    U_V = exp(i lambda V) (or its Trotterization); a degree
 *    s + 1 fit on s + 2 ladder nodes strips the lower-order contamination and
 *    leaves the term plus the same-order series bias, up to O(lambda^2).
 *  - sampling:   shot counts of the post-selected outcome give |A|^2 only,
 *    so the result is a magnitude.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptq/builders.hpp"
#include "ptq/oracle.hpp"
#include "ptq/statevector.hpp"

namespace ptq {

enum class EstimationMode { Linearized, Unitary, Sampling };

std::string mode_name(EstimationMode m);
EstimationMode parse_mode(std::string_view s);

struct TermEstimate {
  TermId term;
  EstimationMode mode = EstimationMode::Linearized;
  double value = 0.0;
  bool magnitude_only = false;
  double predicted_bias = 0.0;
  std::vector<double> lambda_nodes;
  /// Coefficient of lambda^s before division by the prefactor.
  Complex raw_coefficient{0.0, 0.0};
  /// |imag| left after dividing by the prefactor.
  double imag_residue = 0.0;

  // Sampling mode only.
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  std::size_t accepted = 0;
  double probability = 0.0;
  double probability_stderr = 0.0;
  double value_stderr = 0.0;
  /// |A|^2 from the simulated amplitude at the same lambda.
  double reference_probability = 0.0;
};

/// lambda * 2^-j for j = 0..count-1.
std::vector<double> lambda_ladder(double lambda, int count);

/// Coefficients c_0..c_{n-1} of the polynomial through (nodes[j], values[j]).
std::vector<Complex> fit_polynomial(const std::vector<double>& nodes, const std::vector<Complex>& values);

/// Runs a term circuit from its initial state and returns the amplitude of
/// its post-selected outcome.
Complex post_selected_amplitude(const TermCircuit& tc, const SimOptions& sim = {});

TermEstimate extract_term_linearized(const PerturbedSystem& sys, const TermCircuit& tc,
                                     const SimOptions& sim = {});
TermEstimate extract_term_unitary(const PerturbedSystem& sys, const TermCircuit& tc,
                                  const SimOptions& sim = {});
TermEstimate extract_term_sampling(const PerturbedSystem& sys, const TermCircuit& tc, std::size_t shots,
                                   std::uint64_t seed, const SimOptions& sim = {});

/// Coefficients of |k> in the first-order state correction, read from the
/// state1 circuit with the linearized U_V: amplitude on |k>|1> / (i lambda C).
std::vector<std::pair<std::size_t, Complex>> first_order_state(const PerturbedSystem& sys,
                                                               UeVariant variant = UeVariant::Improved,
                                                               const SimOptions& sim = {});

double assemble_e3(double eps3, double e1, double m_b);
double assemble_e4(double eps4, double e1, double e2, double m_a, double m_b, double m_c);

struct ReportConfig {
  double lambda = 0.0;
  EstimationMode mode = EstimationMode::Linearized;
  UeVariant variant = UeVariant::Improved;
  UvBackend backend = UvBackend::exact();
  std::size_t shots = 0;
  std::uint64_t seed = 0;
};

struct TermRow {
  TermEstimate estimate;
  double oracle = 0.0;
  double deviation = 0.0;  // value - (oracle + bias), or value - |oracle + bias| for magnitudes
};

struct PTReport {
  PTCorrections oracle;
  std::vector<TermRow> terms;
  double e1 = 0.0;
  double assembled_e3 = 0.0;
  double assembled_e4 = 0.0;
  double deviation_e3 = 0.0;
  double deviation_e4 = 0.0;
  std::vector<std::pair<int, double>> c_values;  // (power, C)
  ReportConfig config;

  [[nodiscard]] const TermEstimate& estimate(const TermId& id) const;
};

/// Assembles E^(3), E^(4) from estimates of eps3, eps4, m_a, m_b, m_c and e2;
/// E^(1) = V_nn is classical.
PTReport assemble_corrections(const PerturbedSystem& sys, const std::vector<TermEstimate>& estimates,
                              const ReportConfig& config = {});

/// Builds, runs and reads out all six energy terms in the configured mode.
PTReport estimate_corrections(const PerturbedSystem& sys, const ReportConfig& config,
                              const SimOptions& sim = {});

/// 12 significant digits, the precision of every report artifact.
std::string format_number(double x);

std::string report_json(const PTReport& report);
/// One row per term: term,mode,value,oracle,bias,deviation.
std::string report_csv(const PTReport& report);

}  // namespace ptq

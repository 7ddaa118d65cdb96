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


#include <gtest/gtest.h>

#include <cmath>

#include "ptq/estimator.hpp"
#include "ptq/random_system.hpp"
#include "support.hpp"

namespace ptq {
namespace {

double scaled(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TermEstimate linearized(const PerturbedSystem& s, const TermId& id) {
  return extract_term_linearized(s, build_term_circuit(s, id, {UeVariant::Improved, UvBackend::linearized()}));
}

TermEstimate unitary(const PerturbedSystem& s, const TermId& id) {
  return extract_term_unitary(s, build_term_circuit(s, id, {UeVariant::Improved, UvBackend::exact()}));
}

TEST(Ladder, GeometricNodes) {
  const auto l = lambda_ladder(0.08, 4);
  ASSERT_EQ(l.size(), 4U);
  EXPECT_DOUBLE_EQ(l[0], 0.08);
  EXPECT_DOUBLE_EQ(l[3], 0.01);
}

TEST(FitPolynomial, RecoversCubic) {
  const std::vector<double> x = {0.1, 0.05, 0.025, 0.0125};
  std::vector<Complex> y;
  for (double t : x) y.push_back(Complex{1.0, -2.0} * t * t * t + 0.5 * t - Complex{0.0, 3.0});
  const auto c = fit_polynomial(x, y);
  ASSERT_EQ(c.size(), 4U);
  EXPECT_LE(std::abs(c[0] - Complex{0.0, -3.0}), 1e-12);
  EXPECT_LE(std::abs(c[1] - 0.5), 1e-11);
  EXPECT_LE(std::abs(c[2]), 1e-9);
  EXPECT_LE(std::abs(c[3] - Complex{1.0, -2.0}), 1e-8);
  EXPECT_THROW(fit_polynomial({0.1, 0.1}, {1.0, 2.0}), Error);
}

TEST(Linearized, ZeroPerturbationGivesZero) {
  PerturbedSystem s = random_system(2, 2);
  s.perturbation.setZero();
  s.pauli_terms.clear();
  for (const TermId& id : energy_terms()) EXPECT_EQ(linearized(s, id).value, 0.0) << term_name(id);
}

TEST(Linearized, TwoLevelTerms) {
  const PerturbedSystem s = ref::two_level(0.01);
  EXPECT_NEAR(linearized(s, TermId::eps(3)).value, 0.0, 1e-12);
  EXPECT_NEAR(linearized(s, TermId::of(TermKind::E2)).value, -0.25, 1e-12);
}

TEST(Linearized, ExactAgainstBruteForce) {
  for (std::uint32_t seed = 0; seed < 4; ++seed) {
    const PerturbedSystem s = ref::dense_random(2, seed);
    EXPECT_LE(scaled(linearized(s, TermId::eps(3)).value, ref::brute_eps(s, 3)), 1e-9);
    EXPECT_LE(scaled(linearized(s, TermId::eps(4)).value, ref::brute_eps(s, 4)), 1e-9);
    EXPECT_LE(scaled(linearized(s, TermId::of(TermKind::MA)).value, ref::brute_m_a(s)), 1e-9);
    EXPECT_LE(scaled(linearized(s, TermId::of(TermKind::MB)).value, ref::brute_sum_power(s, 2)), 1e-9);
    EXPECT_LE(scaled(linearized(s, TermId::of(TermKind::MC)).value, ref::brute_sum_power(s, 3)), 1e-9);
    EXPECT_LE(scaled(linearized(s, TermId::of(TermKind::E2)).value, ref::brute_sum_power(s, 1)), 1e-9);
  }
}

TEST(Linearized, RejectsUnitaryCircuit) {
  const PerturbedSystem s = random_system(2, 2);
  const TermCircuit tc = build_eps_circuit(s, 3, {UeVariant::Improved, UvBackend::exact()});
  EXPECT_THROW(extract_term_linearized(s, tc), Error);
  const TermCircuit lin = build_eps_circuit(s, 3, {UeVariant::Improved, UvBackend::linearized()});
  EXPECT_THROW(extract_term_unitary(s, lin), Error);
  EXPECT_THROW(extract_term_sampling(s, lin, 100, 1), Error);
  EXPECT_THROW(extract_term_linearized(s.with_lambda(0.0), lin), Error);
}

TEST(Unitary, ThirdOrderWithinTolerance) {
  for (std::uint32_t seed = 0; seed < 4; ++seed) {
    const PerturbedSystem s = ref::dense_random(2, seed, 1e-2);
    const TermEstimate e = unitary(s, TermId::eps(3));
    EXPECT_LE(std::abs(e.value - e.predicted_bias - ref::brute_eps(s, 3)), 1e-3);
  }
}

TEST(Unitary, ResidualAfterBiasShrinksQuadratically) {
  for (std::uint32_t seed = 0; seed < 3; ++seed) {
    const PerturbedSystem s = ref::dense_random(2, seed, 2e-2);
    const double oracle = ref::brute_eps(s, 4);
    auto residual = [&](double l) {
      const TermEstimate e = unitary(s.with_lambda(l), TermId::eps(4));
      return std::abs(e.value - e.predicted_bias - oracle);
    };
    const double ratio = residual(2e-2) / residual(1e-2);
    EXPECT_GE(ratio, 3.0) << seed;
    EXPECT_LE(ratio, 5.0) << seed;
  }
}

TEST(Unitary, TrotterBackendWithEnoughSteps) {
  const PerturbedSystem s = random_system(2, 3);
  const TermCircuit tc = build_eps_circuit(s, 3, {UeVariant::Improved, UvBackend::trotter(8)});
  const TermEstimate e = extract_term_unitary(s, tc);
  EXPECT_LE(std::abs(e.value - e.predicted_bias - pt_corrections(s).eps3), 1e-3);
}

TEST(Sampling, WithinFiveSigmaAndStderrHalves) {
  const PerturbedSystem s = ref::dense_random(2, 1, 0.4);
  const TermCircuit tc = build_eps_circuit(s, 3, {UeVariant::Improved, UvBackend::exact()});
  const TermEstimate a = extract_term_sampling(s, tc, 1000000, 5);
  const TermEstimate b = extract_term_sampling(s, tc, 4000000, 5);
  EXPECT_TRUE(a.magnitude_only);
  EXPECT_GT(a.accepted, 0U);
  EXPECT_LE(std::abs(a.probability - a.reference_probability), 5 * a.probability_stderr);
  EXPECT_LE(std::abs(b.probability - b.reference_probability), 5 * b.probability_stderr);
  const double ratio = a.probability_stderr / b.probability_stderr;
  EXPECT_GE(ratio, 1.5);
  EXPECT_LE(ratio, 2.5);
  EXPECT_THROW(extract_term_sampling(s, tc, 0, 5), Error);
}

TEST(Sampling, DeterministicForSeed) {
  const PerturbedSystem s = ref::dense_random(2, 1, 0.4);
  const TermCircuit tc = build_eps_circuit(s, 3, {UeVariant::Improved, UvBackend::exact()});
  EXPECT_EQ(extract_term_sampling(s, tc, 10000, 3).accepted, extract_term_sampling(s, tc, 10000, 3).accepted);
}

TEST(FirstOrderState, TwoLevel) {
  const auto c = first_order_state(ref::two_level(0.01));
  ASSERT_EQ(c.size(), 1U);
  EXPECT_EQ(c[0].first, 1U);
  EXPECT_NEAR(c[0].second.real(), -0.5, 1e-12);
  EXPECT_NEAR(c[0].second.imag(), 0.0, 1e-12);
}

TEST(FirstOrderState, MatchesTextbookCoefficients) {
  const PerturbedSystem s = ref::dense_random(3, 2);
  for (UeVariant variant : {UeVariant::Standard, UeVariant::Improved}) {
    for (const auto& [k, c] : first_order_state(s, variant)) {
      const auto kk = static_cast<Eigen::Index>(k);
      const auto n = static_cast<Eigen::Index>(s.target_level);
      const Complex want = s.perturbation(kk, n) / (s.energies[static_cast<std::size_t>(n)] - s.energies[k]);
      EXPECT_LE(std::abs(c - want), 1e-10);
    }
  }
}

TEST(Assembly, Identities) {
  EXPECT_DOUBLE_EQ(assemble_e3(1.0, 0.5, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(assemble_e4(1.0, 0.5, 2.0, 3.0, 0.25, 4.0), 1.0 - 0.5 - 3.0 + 1.0);
}

TEST(Report, LinearizedAssemblyMatchesOracle) {
  const PerturbedSystem s = random_system(2, 7);
  ReportConfig cfg;
  cfg.lambda = 1e-2;
  const PTReport r = estimate_corrections(s, cfg);
  EXPECT_EQ(r.terms.size(), energy_terms().size());
  EXPECT_LE(std::abs(r.deviation_e3), 1e-9);
  EXPECT_LE(std::abs(r.deviation_e4), 1e-9);
  for (const auto& row : r.terms) EXPECT_LE(std::abs(row.deviation), 1e-9) << term_name(row.estimate.term);
  EXPECT_EQ(r.c_values.size(), 3U);
}

TEST(Report, SerializationIsDeterministic) {
  const PerturbedSystem s = random_system(2, 7);
  ReportConfig cfg;
  cfg.lambda = 1e-2;
  const PTReport a = estimate_corrections(s, cfg);
  const PTReport b = estimate_corrections(s, cfg);
  EXPECT_EQ(report_json(a), report_json(b));
  EXPECT_EQ(report_csv(a), report_csv(b));
  const auto doc = nlohmann::json::parse(report_json(a));
  EXPECT_TRUE(doc.contains("terms"));
  EXPECT_EQ(report_csv(a).find("term,"), 0U);
}

TEST(Modes, Names) {
  for (auto m : {EstimationMode::Linearized, EstimationMode::Unitary, EstimationMode::Sampling}) {
    EXPECT_EQ(parse_mode(mode_name(m)), m);
  }
  EXPECT_THROW(parse_mode("exactish"), Error);
}

}  // namespace
}  // namespace ptq

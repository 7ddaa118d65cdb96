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
#include <limits>

#include "ptq/builders.hpp"
#include "ptq/random_system.hpp"
#include "ptq/statevector.hpp"
#include "support.hpp"

namespace ptq {
namespace {

double min_gap_power(const PerturbedSystem& s, int p) {
  double c = std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::size_t>(s.target_level);
  for (std::size_t k = 0; k < s.dimension(); ++k) {
    if (k != n) c = std::min(c, std::pow(std::abs(s.energies[n] - s.energies[k]), p));
  }
  return c;
}

// Post-selected amplitude written as a nested sum over intermediate levels,
// with U the system unitary and one C_j / E^p factor per ancilla.
Complex nested_amplitude(const PerturbedSystem& s, const Matrix& u, const std::vector<int>& powers) {
  double c = 1.0;
  for (int p : powers) c *= min_gap_power(s, p);
  return c * ref::brute_chain(s, powers, [&](int a, int b) { return u(a, b); });
}

TEST(EpsCircuit, Structure) {
  const PerturbedSystem s = random_system(2, 4);
  for (int m = 3; m <= 5; ++m) {
    const TermCircuit tc = build_eps_circuit(s, m);
    EXPECT_EQ(tc.circuit.layout().n_ancillas(), m - 1);
    EXPECT_EQ(tc.uv_count, m);
    EXPECT_EQ(tc.ue_count, m - 1);
    EXPECT_EQ(tc.signal_order, m);
    EXPECT_EQ(tc.circuit.count(GateKind::SystemUnitary), static_cast<std::size_t>(m));
    EXPECT_EQ(tc.c_values.size(), static_cast<std::size_t>(m - 1));
    EXPECT_EQ(tc.initial_index, static_cast<std::uint64_t>(s.target_level));
    EXPECT_EQ(tc.post_select_index, basis_index(2, s.target_level, (1U << (m - 1)) - 1));
    EXPECT_TRUE(validate(tc.circuit).empty());
  }
  EXPECT_THROW(build_eps_circuit(s, 2), Error);
}

TEST(EpsCircuit, ThirdOrderStageMarks) {
  const TermCircuit tc = build_eps_circuit(random_system(2, 4), 3);
  std::vector<std::string> names;
  for (const auto& m : tc.circuit.stage_marks()) names.push_back(m.name);
  EXPECT_EQ(names, (std::vector<std::string>{"phi_I", "phi_II", "phi_III", "phi_IV", "phi_V"}));
  EXPECT_EQ(tc.circuit.stage_marks().front().position, 0U);
  EXPECT_EQ(tc.circuit.stage_marks().back().position, tc.circuit.gates().size());
}

TEST(AuxCircuits, Shapes) {
  const PerturbedSystem s = random_system(2, 5);
  struct Want {
    TermKind kind;
    int ancillas;
    int uv;
    int order;
  };
  for (const Want& w : {Want{TermKind::MA, 2, 3, 3}, Want{TermKind::MB, 1, 2, 2}, Want{TermKind::MC, 1, 2, 2},
                        Want{TermKind::E2, 1, 2, 2}, Want{TermKind::State1, 1, 1, 1}}) {
    const TermCircuit tc = build_aux_circuit(s, w.kind);
    EXPECT_EQ(tc.circuit.layout().n_ancillas(), w.ancillas) << term_name(tc.term);
    EXPECT_EQ(tc.uv_count, w.uv) << term_name(tc.term);
    EXPECT_EQ(tc.signal_order, w.order) << term_name(tc.term);
    EXPECT_TRUE(validate(tc.circuit).empty());
  }
  EXPECT_THROW(build_aux_circuit(s, TermKind::Eps), Error);
}

TEST(AuxCircuits, CValuesFollowGapPowers) {
  const PerturbedSystem s = random_system(2, 6);
  const TermCircuit ma = build_aux_circuit(s, TermKind::MA);
  ASSERT_EQ(ma.c_values.size(), 2U);
  EXPECT_DOUBLE_EQ(ma.c_values[0], min_gap_power(s, 2));
  EXPECT_DOUBLE_EQ(ma.c_values[1], min_gap_power(s, 1));
  const TermCircuit mc = build_aux_circuit(s, TermKind::MC);
  EXPECT_DOUBLE_EQ(mc.c_values[0], min_gap_power(s, 3));
  // i^2 C
  EXPECT_NEAR(mc.prefactor.real(), -min_gap_power(s, 3), 1e-15);
  EXPECT_NEAR(mc.prefactor.imag(), 0.0, 1e-15);
}

TEST(StateOne, SnapshotCarriesFirstOrderAmplitudes) {
  const PerturbedSystem s = ref::dense_random(2, 3, 0.05);
  for (UeVariant variant : {UeVariant::Standard, UeVariant::Improved}) {
    const TermCircuit tc = build_aux_circuit(s, TermKind::State1, {variant, UvBackend::exact()});
    const RunResult r = run(tc.circuit, tc.initial_index);
    const StateVector& phi = r.snapshot("phi_III");
    const Matrix u = ref::expm_i(s.perturbation, s.lambda);
    const double c = min_gap_power(s, 1);
    const auto n = static_cast<Eigen::Index>(s.target_level);
    for (Eigen::Index k = 0; k < 4; ++k) {
      const std::uint64_t idx = basis_index(2, static_cast<std::uint64_t>(k), 1);
      if (k == n) {
        EXPECT_NEAR(std::abs(phi[idx]), 0.0, 1e-15);
        continue;
      }
      const Complex want = c * u(k, n) / (s.energies[static_cast<std::size_t>(n)] - s.energies[static_cast<std::size_t>(k)]);
      EXPECT_LE(std::abs(phi[idx] - want), 1e-12);
    }
  }
}

TEST(ProbabilityIdentity, MatchesNestedSum) {
  for (std::uint32_t seed = 0; seed < 4; ++seed) {
    const PerturbedSystem s = ref::dense_random(2, seed, 0.3);
    const Matrix u = ref::expm_i(s.perturbation, s.lambda);
    for (const TermId& id : energy_terms()) {
      for (UeVariant variant : {UeVariant::Standard, UeVariant::Improved}) {
        const TermCircuit tc = build_term_circuit(s, id, {variant, UvBackend::exact()});
        const Complex got = amplitude(run(tc.circuit, tc.initial_index).state, tc.post_select_index);
        const Complex want = nested_amplitude(s, u, gap_powers(id));
        EXPECT_LE(std::abs(got - want), 1e-12) << term_name(id) << " seed " << seed;
      }
    }
  }
}

TEST(ProbabilityIdentity, LinearizedBackendUsesIPlusILambdaV) {
  const PerturbedSystem s = ref::dense_random(2, 8, 0.2);
  const Matrix u = Matrix::Identity(4, 4) + Complex{0.0, s.lambda} * s.perturbation;
  const TermCircuit tc = build_eps_circuit(s, 4, {UeVariant::Improved, UvBackend::linearized()});
  const Complex got = amplitude(run(tc.circuit, tc.initial_index).state, tc.post_select_index);
  EXPECT_LE(std::abs(got - nested_amplitude(s, u, gap_powers(TermId::eps(4)))), 1e-12);
}

TEST(BuildTerm, DispatchesEveryTerm) {
  const PerturbedSystem s = random_system(2, 1);
  EXPECT_EQ(build_term_circuit(s, TermId::eps(2)).term, TermId::eps(2));
  EXPECT_EQ(build_term_circuit(s, TermId::eps(2)).uv_count, 2);
  EXPECT_EQ(build_term_circuit(s, TermId::eps(5)).uv_count, 5);
  EXPECT_EQ(build_term_circuit(s, TermId::of(TermKind::MA)).term, TermId::of(TermKind::MA));
}

}  // namespace
}  // namespace ptq

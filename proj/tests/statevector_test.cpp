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
#include <numbers>
#include <random>

#include "ptq/random_system.hpp"
#include "ptq/statevector.hpp"
#include "ptq/synthesis.hpp"
#include "support.hpp"

namespace ptq {
namespace {

RegisterLayout layout(int n, int ancillas) {
  RegisterLayout l;
  l.n_system = n;
  for (int j = 0; j < ancillas; ++j) l.ancillas.push_back("a" + std::to_string(j));
  return l;
}

Circuit random_circuit(int n, int ancillas, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  const int total = n + ancillas;
  Circuit c(layout(n, ancillas));
  c.add(Gate::system_unitary(hermitian_exponential(ref::dense_random(n, seed).perturbation, 0.7), true));
  for (int g = 0; g < 12; ++g) {
    const int target = static_cast<int>(rng() % static_cast<std::uint32_t>(total));
    const std::uint64_t others = ((std::uint64_t{1} << total) - 1) & ~(std::uint64_t{1} << target);
    const std::uint64_t mask = rng() & others;
    c.add(Gate::controlled_ry(target, angle(rng), mask, rng()));
  }
  return c;
}

TEST(Run, EmptyCircuitKeepsInitialState) {
  const Circuit c(layout(2, 1));
  const RunResult r = run(c, 5);
  for (std::size_t i = 0; i < r.state.size(); ++i) EXPECT_EQ(r.state[i], Complex(i == 5 ? 1.0 : 0.0, 0.0));
}

TEST(Run, RyPiFlipsQubit) {
  Circuit c(layout(1, 0));
  c.add(Gate::ry(0, std::numbers::pi));
  const RunResult r = run(c, 0);
  EXPECT_NEAR(std::abs(r.state[0]), 0.0, 1e-15);
  EXPECT_NEAR(r.state[1].real(), 1.0, 1e-15);
}

TEST(Run, SnapshotsAtStageMarks) {
  Circuit c(layout(1, 1));
  c.mark("before");
  c.add(Gate::ry(1, std::numbers::pi));
  c.mark("after");
  const RunResult r = run(c, 0);
  EXPECT_EQ(r.snapshot("before")[0], Complex(1.0, 0.0));
  EXPECT_NEAR(r.snapshot("after")[2].real(), 1.0, 1e-15);
  EXPECT_THROW((void)r.snapshot("missing"), Error);
}

TEST(Amplitude, IndexAndBitstringAgree) {
  const RunResult r = run(random_circuit(2, 1, 4), 0);
  for (std::uint64_t i = 0; i < 8; ++i) {
    std::string bits;
    for (int j = 0; j < 3; ++j) bits += ((i >> j) & 1U) ? '1' : '0';
    EXPECT_EQ(amplitude(r.state, i), amplitude(r.state, bits));
  }
  EXPECT_THROW(amplitude(r.state, 8), Error);
  EXPECT_THROW(amplitude(r.state, "01"), Error);
  EXPECT_THROW(amplitude(r.state, "01x"), Error);
  EXPECT_EQ(basis_index(2, 3, 1), 7U);
}

TEST(Run, PreservesNormOfUnitaryCircuits) {
  for (std::uint32_t seed = 0; seed < 5; ++seed) {
    const RunResult r = run(random_circuit(2, 2, seed), seed % 16);
    EXPECT_NEAR(r.state.norm(), 1.0, 1e-12);
  }
}

TEST(Run, IsLinear) {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  for (std::uint32_t seed = 0; seed < 4; ++seed) {
    const Circuit c = random_circuit(2, 1, seed);
    std::vector<Complex> a(8), b(8), sum(8);
    const Complex alpha{g(rng), g(rng)}, beta{g(rng), g(rng)};
    for (std::size_t i = 0; i < 8; ++i) {
      a[i] = {g(rng), g(rng)};
      b[i] = {g(rng), g(rng)};
      sum[i] = alpha * a[i] + beta * b[i];
    }
    const auto ra = run(c, StateVector::from_amplitudes(3, a)).state;
    const auto rb = run(c, StateVector::from_amplitudes(3, b)).state;
    const auto rs = run(c, StateVector::from_amplitudes(3, sum)).state;
    for (std::size_t i = 0; i < 8; ++i) EXPECT_LE(std::abs(rs[i] - alpha * ra[i] - beta * rb[i]), 1e-12);
  }
}

// Every control pattern on up to 4 qubits against the explicit matrix.
TEST(ApplyGate, ControlledRyMatchesDenseDefinition) {
  for (int total = 1; total <= 4; ++total) {
    for (int target = 0; target < total; ++target) {
      const std::uint64_t all = (std::uint64_t{1} << total) - 1;
      for (std::uint64_t mask = 0; mask <= all; ++mask) {
        if ((mask >> target) & 1U) continue;
        for (std::uint64_t values = mask;; values = (values - 1) & mask) {
          Circuit c(layout(1, total - 1));
          c.add(Gate::controlled_ry(target, 0.83, mask, values));
          const Matrix want = ref::dense_cry(total, target, 0.83, mask, values);
          EXPECT_LE(max_abs(dense_matrix(c) - want), 1e-15) << total << ' ' << target << ' ' << mask;
          if (values == 0) break;
        }
      }
    }
  }
}

TEST(ApplyGate, SystemUnitaryActsOnLowBits) {
  const PerturbedSystem s = ref::dense_random(2, 2);
  const Matrix u = hermitian_exponential(s.perturbation, 0.4);
  Circuit c(layout(2, 1));
  c.add(Gate::system_unitary(u, true));
  EXPECT_LE(max_abs(dense_matrix(c) - ref::dense_system(3, 2, u)), 1e-15);
}

TEST(ApplyGate, RejectsMalformedGates) {
  StateVector s(3);
  auto kind = [&](const Gate& g) {
    try {
      apply_gate(s, g, 2);
    } catch (const Error& e) {
      return e.kind();
    }
    ADD_FAILURE() << "gate accepted";
    return ErrorKind::Numerical;
  };
  EXPECT_EQ(kind(Gate::ry(3, 0.1)), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind(Gate::controlled_ry(0, 0.1, 0b11)), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind(Gate::controlled_ry(0, 0.1, 0b1000)), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind(Gate::system_unitary(Matrix::Identity(2, 2), true)), ErrorKind::DimensionMismatch);
}

TEST(Run, ThreadedLoopsMatchSerial) {
  SimOptions serial;
  SimOptions threaded;
  threaded.threads = 4;
  threaded.parallel_threshold = 1;
  for (std::uint32_t seed = 0; seed < 3; ++seed) {
    const Circuit c = random_circuit(3, 3, seed);
    const auto a = run(c, 1, serial).state;
    const auto b = run(c, 1, threaded).state;
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  }
}

TEST(Sample, BasisStateGivesOneOutcome) {
  const auto out = sample(StateVector::basis(3, 6), 1000, 1);
  ASSERT_EQ(out.size(), 1U);
  EXPECT_EQ(out[0].bits, 6U);
  EXPECT_EQ(out[0].count, 1000U);
}

TEST(Sample, UniformSuperpositionWithinFiveSigma) {
  const double amp = 0.5;
  const StateVector s = StateVector::from_amplitudes(2, std::vector<Complex>(4, Complex{amp, 0.0}));
  const std::size_t shots = 1000000;
  const auto out = sample(s, shots, 99);
  ASSERT_EQ(out.size(), 4U);
  std::size_t total = 0;
  const double sigma = std::sqrt(shots * 0.25 * 0.75);
  for (const auto& o : out) {
    total += o.count;
    EXPECT_LE(std::abs(static_cast<double>(o.count) - shots * 0.25), 5 * sigma);
  }
  EXPECT_EQ(total, shots);
}

TEST(Sample, DeterministicForSeed) {
  const RunResult r = run(random_circuit(2, 1, 9), 0);
  const auto a = sample(r.state, 5000, 17);
  const auto b = sample(r.state, 5000, 17);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].bits, b[i].bits);
    EXPECT_EQ(a[i].count, b[i].count);
  }
}

TEST(Sample, RefusesUnnormalizedState) {
  const StateVector s = StateVector::from_amplitudes(1, {Complex{1.0, 0.0}, Complex{0.1, 0.0}});
  try {
    sample(s, 10, 0);
    FAIL() << "unnormalized state sampled";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Numerical);
  }
}

}  // namespace
}  // namespace ptq

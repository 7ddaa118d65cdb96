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

// Reference computations for the tests. Nothing here calls into the ptq
// oracle, synthesis or simulator code; it only reads PerturbedSystem fields.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "ptq/system.hpp"

namespace ptq::ref {

inline double two_level_v() { return 0.5; }

inline PerturbedSystem two_level(double lambda = 0.1) {
  PerturbedSystem s;
  s.n_qubits = 1;
  s.energies = {0.0, 1.0};
  s.perturbation = Matrix::Zero(2, 2);
  s.perturbation(0, 1) = s.perturbation(1, 0) = two_level_v();
  s.pauli_terms = {{two_level_v(), "X"}};
  s.lambda = lambda;
  s.target_level = 0;
  return s;
}

/// Random Hermitian V with unit max-abs entries scaled to spectral norm <= 1,
/// built from an independent generator (dense entries, not Pauli strings).
inline PerturbedSystem dense_random(int n_qubits, std::uint32_t seed, double lambda = 1e-2) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int m = 1 << n_qubits;
  PerturbedSystem s;
  s.n_qubits = n_qubits;
  std::vector<double> e;
  double level = 0.0;
  for (int k = 0; k < m; ++k) {
    level += 0.6 + 0.4 * (u(rng) + 1.0);
    e.push_back(level);
  }
  std::shuffle(e.begin(), e.end(), rng);
  s.energies = e;
  Matrix v(m, m);
  for (int a = 0; a < m; ++a) {
    v(a, a) = u(rng);
    for (int b = a + 1; b < m; ++b) {
      v(a, b) = Complex{u(rng), u(rng)};
      v(b, a) = std::conj(v(a, b));
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(v);
  v /= es.eigenvalues().cwiseAbs().maxCoeff();
  s.perturbation = v;
  s.lambda = lambda;
  s.target_level = static_cast<int>(rng() % static_cast<std::uint32_t>(m));
  return s;
}

/// Nested sum over (m-1)-tuples of levels != n written as explicit recursion.
inline Complex brute_chain(const PerturbedSystem& s, const std::vector<int>& powers,
                           const std::function<Complex(int, int)>& link) {
  const int n = s.target_level;
  const int m = static_cast<int>(s.dimension());
  std::function<Complex(int, std::size_t)> rec = [&](int from, std::size_t depth) -> Complex {
    if (depth == powers.size()) return link(from, n);
    Complex acc{0.0, 0.0};
    for (int k = 0; k < m; ++k) {
      if (k == n) continue;
      const double g = std::pow(s.energies[n] - s.energies[k], powers[powers.size() - 1 - depth]);
      acc += link(from, k) / g * rec(k, depth + 1);
    }
    return acc;
  };
  return rec(n, 0);
}

inline double brute_eps(const PerturbedSystem& s, int m) {
  auto v = [&](int a, int b) { return s.perturbation(a, b); };
  return brute_chain(s, std::vector<int>(m - 1, 1), v).real();
}

inline double brute_sum_power(const PerturbedSystem& s, int p) {
  double acc = 0.0;
  const int n = s.target_level;
  for (int k = 0; k < static_cast<int>(s.dimension()); ++k) {
    if (k != n) acc += std::norm(s.perturbation(n, k)) / std::pow(s.energies[n] - s.energies[k], p);
  }
  return acc;
}

inline double brute_m_a(const PerturbedSystem& s) {
  const int n = s.target_level;
  const int m = static_cast<int>(s.dimension());
  Complex acc{0.0, 0.0};
  for (int k2 = 0; k2 < m; ++k2) {
    for (int k3 = 0; k3 < m; ++k3) {
      if (k2 == n || k3 == n) continue;
      const double e2 = s.energies[n] - s.energies[k2];
      const double e3 = s.energies[n] - s.energies[k3];
      acc += s.perturbation(n, k3) * s.perturbation(k3, k2) * s.perturbation(k2, n) / (e2 * e2 * e3);
    }
  }
  return acc.real();
}

/// Fourth-order energy from the textbook Rayleigh-Schrodinger expression.
inline double textbook_e4(const PerturbedSystem& s) {
  const double v_nn = s.perturbation(s.target_level, s.target_level).real();
  return brute_eps(s, 4) - brute_sum_power(s, 2) * brute_sum_power(s, 1) - 2.0 * v_nn * brute_m_a(s) +
         v_nn * v_nn * brute_sum_power(s, 3);
}

inline Matrix expm_i(const Matrix& v, double t) {
  const Matrix a = Complex{0.0, t} * v;
  return a.exp();
}

/// Dense matrix of a controlled Ry on `total` qubits, built basis state by
/// basis state.
inline Matrix dense_cry(int total, int target, double angle, std::uint64_t mask, std::uint64_t values) {
  const std::uint64_t dim = std::uint64_t{1} << total;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  for (std::uint64_t col = 0; col < dim; ++col) {
    const auto j = static_cast<Eigen::Index>(col);
    if ((col & mask) != (values & mask)) {
      out(j, j) = 1.0;
      continue;
    }
    const std::uint64_t flipped = col ^ (std::uint64_t{1} << target);
    const bool one = (col >> target) & 1U;
    out(j, j) = c;
    out(static_cast<Eigen::Index>(flipped), j) = one ? -s : s;
  }
  return out;
}

/// Embeds a system-register matrix as U (x) I_ancilla.
inline Matrix dense_system(int total, int n_system, const Matrix& u) {
  const Matrix id = Matrix::Identity(Eigen::Index{1} << (total - n_system), Eigen::Index{1} << (total - n_system));
  Matrix out = Matrix::Zero(Eigen::Index{1} << total, Eigen::Index{1} << total);
  for (Eigen::Index a = 0; a < id.rows(); ++a) {
    out.block(a * u.rows(), a * u.cols(), u.rows(), u.cols()) = u;
  }
  return out;
}

}  // namespace ptq::ref

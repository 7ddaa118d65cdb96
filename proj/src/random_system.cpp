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

#include "ptq/random_system.hpp"

#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>

namespace ptq {

double spectral_norm(const Matrix& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

PerturbedSystem random_system(int n_qubits, std::uint64_t seed, const RandomSystemOptions& opts) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> spacing(opts.min_spacing, opts.max_spacing);
  std::normal_distribution<double> gauss(0.0, 1.0);

  PerturbedSystem sys;
  sys.n_qubits = n_qubits;
  const std::size_t dim = std::size_t{1} << n_qubits;
  sys.energies.resize(dim);
  double e = -spacing(rng);
  for (auto& level : sys.energies) {
    e += spacing(rng);
    level = e;
  }
  std::shuffle(sys.energies.begin(), sys.energies.end(), rng);

  static constexpr char kPaulis[] = {'I', 'X', 'Y', 'Z'};
  const std::size_t n_strings = std::size_t{1} << (2 * n_qubits);
  for (std::size_t code = 0; code < n_strings; ++code) {
    std::string s(static_cast<std::size_t>(n_qubits), 'I');
    for (int j = 0; j < n_qubits; ++j) s[static_cast<std::size_t>(j)] = kPaulis[(code >> (2 * j)) & 3U];
    sys.pauli_terms.push_back({gauss(rng), s});
  }
  Matrix v = assemble_pauli_sum(sys.pauli_terms, n_qubits);
  const double scale = opts.v_norm / spectral_norm(v);
  for (auto& t : sys.pauli_terms) t.coefficient *= scale;
  sys.perturbation = assemble_pauli_sum(sys.pauli_terms, n_qubits);
  if (!opts.with_pauli_terms) sys.pauli_terms.clear();

  sys.lambda = opts.lambda;
  sys.target_level = static_cast<int>(std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng));
  validate_system(sys);
  return sys;
}

}  // namespace ptq

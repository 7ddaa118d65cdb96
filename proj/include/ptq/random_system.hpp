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

#pragma once

#include <cstdint>

#include "ptq/system.hpp"

namespace ptq {

struct RandomSystemOptions {
  double min_spacing = 0.5;  // consecutive unperturbed levels differ by
  double max_spacing = 1.5;  // a uniform draw from [min, max]
  double v_norm = 1.0;       // spectral norm of V
  double lambda = 1e-2;
  bool with_pauli_terms = true;
};

/// Seed-deterministic system: shuffled non-degenerate spectrum, V a dense
/// random Pauli sum rescaled to the requested spectral norm, random target.
PerturbedSystem random_system(int n_qubits, std::uint64_t seed, const RandomSystemOptions& opts = {});

/// Largest |eigenvalue| of a Hermitian matrix.
double spectral_norm(const Matrix& hermitian);

}  // namespace ptq

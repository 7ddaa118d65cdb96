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
#include <vector>

#include "ptq/backend.hpp"
#include "ptq/circuit.hpp"
#include "ptq/synthesis.hpp"
#include "ptq/system.hpp"
#include "ptq/terms.hpp"

namespace ptq {

struct BuildOptions {
  UeVariant variant = UeVariant::Improved;
  UvBackend backend = UvBackend::exact();
};

/// A term circuit together with everything needed to read it out.
///
/// The circuit starts from |n>|0...0>; post-selecting the system on |n> and
/// every ancilla on |1> leaves an amplitude whose lambda^signal_order
/// coefficient equals prefactor * term, prefactor = i^signal_order * prod C_j.
struct TermCircuit {
  Circuit circuit;
  TermId term;
  BuildOptions options;
  std::uint64_t initial_index = 0;
  std::uint64_t post_select_index = 0;  // |n>|1...1>
  int signal_order = 0;
  std::vector<double> c_values;  // one per U_E layer, in circuit order
  Complex prefactor{1.0, 0.0};
  int uv_count = 0;
  int ue_count = 0;
};

/// Alternating U_V, U_E(q'_1), U_V, ..., U_V with m U_V layers; m >= 3.
TermCircuit build_eps_circuit(const PerturbedSystem& sys, int m, const BuildOptions& opts = {});

/// Auxiliary circuits for m_a, m_b, m_c, e2 and the first-order state.
TermCircuit build_aux_circuit(const PerturbedSystem& sys, TermKind kind, const BuildOptions& opts = {});

/// Dispatches on the term id (eps2 builds the e2 circuit).
TermCircuit build_term_circuit(const PerturbedSystem& sys, const TermId& id, const BuildOptions& opts = {});

}  // namespace ptq

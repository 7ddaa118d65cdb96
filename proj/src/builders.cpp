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

#include "ptq/builders.hpp"

#include <array>
#include <string>

#include "ptq/statevector.hpp"

namespace ptq {

namespace {

std::string roman(int v) {
  static constexpr std::array<std::pair<int, const char*>, 6> table{{
      {40, "XL"}, {10, "X"}, {9, "IX"}, {5, "V"}, {4, "IV"}, {1, "I"}}};
  std::string out;
  for (const auto& [value, glyph] : table) {
    while (v >= value) {
      out += glyph;
      v -= value;
    }
  }
  return out;
}

/// Shared assembly for every term shape: U_V, then for each gap power one
/// U_{E^p} on a fresh ancilla followed by U_V. `trailing_uv` is false only
/// for the first-order-state readout.
TermCircuit assemble(const PerturbedSystem& sys, const TermId& id, const std::vector<int>& powers,
                     bool trailing_uv, const BuildOptions& opts) {
  RegisterLayout layout;
  layout.n_system = sys.n_qubits;
  for (std::size_t j = 0; j < powers.size(); ++j) layout.ancillas.push_back("q'" + std::to_string(j + 1));

  TermCircuit tc;
  tc.term = id;
  tc.options = opts;
  tc.circuit = Circuit(layout);
  const auto n = static_cast<std::uint64_t>(sys.target_level);
  tc.initial_index = basis_index(sys.n_qubits, n, 0);
  tc.post_select_index = basis_index(sys.n_qubits, n, (std::uint64_t{1} << powers.size()) - 1);

  const Gate uv = build_uv(sys, opts.backend);
  Circuit& c = tc.circuit;
  int stage = 1;
  auto mark = [&] { c.mark("phi_" + roman(stage++)); };

  mark();
  c.add(uv);
  ++tc.uv_count;
  mark();
  for (std::size_t j = 0; j < powers.size(); ++j) {
    const int target = layout.ancilla_qubit(static_cast<int>(j));
    c.append(build_ue(sys, sys.target_level, powers[j], opts.variant, target));
    tc.c_values.push_back(select_c(sys, sys.target_level, powers[j]));
    ++tc.ue_count;
    mark();
    if (j + 1 < powers.size() || trailing_uv) {
      c.add(uv);
      ++tc.uv_count;
      // Stage IV of the third-order circuit spans the second U_V and U_E.
      if (j != 0) mark();
    }
  }
  if (c.stage_marks().back().position != c.gates().size()) mark();

  tc.signal_order = signal_order(id);
  tc.prefactor = i_pow(tc.signal_order);
  for (double cv : tc.c_values) tc.prefactor *= cv;
  return tc;
}

}  // namespace

TermCircuit build_eps_circuit(const PerturbedSystem& sys, int m, const BuildOptions& opts) {
  if (m < 3) throw Error(ErrorKind::InvalidArgument, "eps circuits need m >= 3 (m = 2 is the e2 circuit)");
  const TermId id = TermId::eps(m);
  return assemble(sys, id, gap_powers(id), true, opts);
}

TermCircuit build_aux_circuit(const PerturbedSystem& sys, TermKind kind, const BuildOptions& opts) {
  if (kind == TermKind::Eps) {
    throw Error(ErrorKind::InvalidArgument, "eps terms are built by build_eps_circuit");
  }
  const TermId id = TermId::of(kind);
  return assemble(sys, id, gap_powers(id), kind != TermKind::State1, opts);
}

TermCircuit build_term_circuit(const PerturbedSystem& sys, const TermId& id, const BuildOptions& opts) {
  if (id.kind == TermKind::Eps) {
    if (id.order == 2) {
      TermCircuit tc = build_aux_circuit(sys, TermKind::E2, opts);
      tc.term = id;
      return tc;
    }
    return build_eps_circuit(sys, id.order, opts);
  }
  return build_aux_circuit(sys, id.kind, opts);
}

}  // namespace ptq

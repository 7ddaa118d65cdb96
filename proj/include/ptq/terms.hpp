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

#include <string>
#include <string_view>
#include <vector>

namespace ptq {

/// The quantities a term circuit can estimate.
///
///   eps(m): sum over k_1..k_{m-1} != n of
///           V_{n k_{m-1}} ... V_{k_2 k_1} V_{k_1 n} / (E_{n k_1} ... E_{n k_{m-1}})
///   m_a:    sum V_{n k3} V_{k3 k2} V_{k2 n} / (E_{n k2}^2 E_{n k3})
///   m_b:    sum |V_{nk}|^2 / E_{nk}^2
///   m_c:    sum |V_{nk}|^2 / E_{nk}^3
///   e2:     sum |V_{nk}|^2 / E_{nk}
///   state1: first-order state coefficients V_{kn} / E_{nk}
enum class TermKind { Eps, MA, MB, MC, E2, State1 };

struct TermId {
  TermKind kind = TermKind::Eps;
  int order = 3;  // only meaningful for Eps

  static TermId eps(int m) { return {TermKind::Eps, m}; }
  static TermId of(TermKind k) { return {k, 0}; }

  friend bool operator==(const TermId& a, const TermId& b) {
    return a.kind == b.kind && (a.kind != TermKind::Eps || a.order == b.order);
  }
};

/// "eps3", "eps4", "m_a", "m_b", "m_c", "e2", "state1".
std::string term_name(const TermId& id);

/// Inverse of term_name; also accepts "eps<m>" for any m >= 2.
TermId parse_term(std::string_view name);

/// Gap powers of the U_{E^p} layers between consecutive U_V applications,
/// in circuit order (first applied first). The circuit is
///   U_V, U_{E^p_1}, U_V, U_{E^p_2}, ..., U_V
/// and has powers.size() ancillas and powers.size() + 1 U_V layers. state1
/// stops after its single U_E layer.
std::vector<int> gap_powers(const TermId& id);

/// Power of lambda at which the term appears in the post-selected amplitude.
int signal_order(const TermId& id);

/// The six terms that enter the 3rd and 4th order energy corrections.
std::vector<TermId> energy_terms();

}  // namespace ptq

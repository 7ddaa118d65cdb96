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

namespace ptq {

/// How the perturbation gate U_V is realized.
///   Exact:      exp(i lambda V)
///   Trotter:    (prod_i exp(i lambda c_i P_i / r))^r over the Pauli terms
///   Linearized: I + i lambda V, non-unitary, reference evaluation only
struct UvBackend {
  enum class Kind { Exact, Trotter, Linearized };

  Kind kind = Kind::Exact;
  int trotter_steps = 1;

  static UvBackend exact() { return {Kind::Exact, 1}; }
  static UvBackend trotter(int steps) { return {Kind::Trotter, steps}; }
  static UvBackend linearized() { return {Kind::Linearized, 1}; }

  [[nodiscard]] bool is_unitary() const { return kind != Kind::Linearized; }
};

/// "exact", "linearized", "trotter:<r>".
std::string backend_name(const UvBackend& b);
UvBackend parse_backend(std::string_view s);

}  // namespace ptq

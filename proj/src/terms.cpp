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

#include "ptq/terms.hpp"

#include <charconv>

#include "ptq/types.hpp"

namespace ptq {

std::string term_name(const TermId& id) {
  switch (id.kind) {
    case TermKind::Eps: return "eps" + std::to_string(id.order);
    case TermKind::MA: return "m_a";
    case TermKind::MB: return "m_b";
    case TermKind::MC: return "m_c";
    case TermKind::E2: return "e2";
    case TermKind::State1: return "state1";
  }
  return "?";
}

TermId parse_term(std::string_view name) {
  if (name == "m_a") return TermId::of(TermKind::MA);
  if (name == "m_b") return TermId::of(TermKind::MB);
  if (name == "m_c") return TermId::of(TermKind::MC);
  if (name == "e2") return TermId::of(TermKind::E2);
  if (name == "state1") return TermId::of(TermKind::State1);
  if (name.starts_with("eps")) {
    int m = 0;
    const auto rest = name.substr(3);
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), m);
    if (ec == std::errc{} && ptr == rest.data() + rest.size() && m >= 2) return TermId::eps(m);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown term '" + std::string(name) + "'");
}

std::vector<int> gap_powers(const TermId& id) {
  switch (id.kind) {
    case TermKind::Eps:
      if (id.order < 2) throw Error(ErrorKind::InvalidArgument, "eps order must be >= 2");
      return std::vector<int>(static_cast<std::size_t>(id.order - 1), 1);
    case TermKind::MA: return {2, 1};
    case TermKind::MB: return {2};
    case TermKind::MC: return {3};
    case TermKind::E2: return {1};
    case TermKind::State1: return {1};
  }
  return {};
}

int signal_order(const TermId& id) {
  if (id.kind == TermKind::State1) return 1;
  return static_cast<int>(gap_powers(id).size()) + 1;
}

std::vector<TermId> energy_terms() {
  return {TermId::eps(3), TermId::eps(4), TermId::of(TermKind::MA), TermId::of(TermKind::MB),
          TermId::of(TermKind::MC), TermId::of(TermKind::E2)};
}

}  // namespace ptq

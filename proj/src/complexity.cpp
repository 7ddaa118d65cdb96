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

#include "ptq/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ptq {

CostModel CostModel::quadratic() {
  return {[](int j) -> std::uint64_t { return std::max<std::uint64_t>(1, std::uint64_t(j) * std::uint64_t(j)); },
          [](int n) -> std::uint64_t { return static_cast<std::uint64_t>(n); }};
}

CostModel CostModel::linear() {
  return {[](int j) -> std::uint64_t { return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(j)); },
          [](int n) -> std::uint64_t { return static_cast<std::uint64_t>(n); }};
}

void check_model(const CostModel& model, int max_n) {
  std::uint64_t prev = 0;
  for (int j = 0; j <= max_n; ++j) {
    const std::uint64_t c = model.cnry_cost(j);
    if (c == 0 || c < prev) throw Error(ErrorKind::InvalidArgument, "cnry_cost must be positive and nondecreasing");
    prev = c;
  }
  for (int n = 1; n <= max_n; ++n) {
    if (model.uv_cost(n) == 0) throw Error(ErrorKind::InvalidArgument, "uv_cost must be positive");
  }
}

namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

std::uint64_t ue_cost(int n, UeVariant variant, const CostModel& model) {
  if (n < 1 || n > 40) throw Error(ErrorKind::InvalidArgument, "ue_cost needs 1 <= N <= 40");
  if (variant == UeVariant::Standard) return (std::uint64_t{1} << n) * model.cnry_cost(n);
  std::uint64_t total = 0;
  for (int j = 0; j <= n; ++j) total += binomial(n, j) * model.cnry_cost(j);
  return total;
}

std::uint64_t circuit_cost(int n, int m, const CostModel& model, UeVariant variant) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "circuit_cost needs m >= 2");
  const auto layers = static_cast<std::uint64_t>(m);
  return (layers - 1) * ue_cost(n, variant, model) + layers * model.uv_cost(n);
}

std::uint64_t circuit_gate_cost(const Circuit& circuit, const CostModel& model) {
  std::uint64_t total = 0;
  for (const auto& g : circuit.gates()) {
    if (g.kind == GateKind::SystemUnitary) {
      total += model.uv_cost(circuit.layout().n_system);
    } else if (g.angle != 0.0) {
      total += model.cnry_cost(g.n_controls());
    }
  }
  return total;
}

CostReport scaling_report(int n_min, int n_max, const CostModel& model) {
  if (n_min < 1 || n_max < n_min) throw Error(ErrorKind::InvalidArgument, "empty or invalid N range");
  CostReport report;
  for (int n = n_min; n <= n_max; ++n) {
    CostRow row;
    row.n = n;
    row.m = std::uint64_t{1} << n;
    row.standard_ue = ue_cost(n, UeVariant::Standard, model);
    row.improved_ue = ue_cost(n, UeVariant::Improved, model);
    row.circuit_e3 = circuit_cost(n, 3, model);
    row.circuit_e4 = circuit_cost(n, 4, model);
    if (n >= 2 && row.improved_ue > row.standard_ue) {
      throw Error(ErrorKind::Numerical, "improved U_E costs more than standard at N = " + std::to_string(n));
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string cost_csv(const CostReport& report) {
  std::ostringstream os;
  os << "N,M,standard_ue,improved_ue,circuit_e3,circuit_e4,ratio\n";
  char ratio[32];
  for (const auto& r : report.rows) {
    std::snprintf(ratio, sizeof ratio, "%.12g", double(r.improved_ue) / double(r.standard_ue));
    os << r.n << ',' << r.m << ',' << r.standard_ue << ',' << r.improved_ue << ',' << r.circuit_e3 << ','
       << r.circuit_e4 << ',' << ratio << '\n';
  }
  return os.str();
}

std::string cost_loglog(const CostReport& report) {
  std::ostringstream os;
  os << "# log10(M) log10(standard_ue) log10(improved_ue) log10(circuit_e3) log10(circuit_e4)\n";
  char buf[160];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g %.12g %.12g\n", std::log10(double(r.m)),
                  std::log10(double(r.standard_ue)), std::log10(double(r.improved_ue)),
                  std::log10(double(r.circuit_e3)), std::log10(double(r.circuit_e4)));
    os << buf;
  }
  return os.str();
}

}  // namespace ptq

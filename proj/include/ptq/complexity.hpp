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

/**
 * @file
 * Gate-count model for the term circuits. Counts are "weighted basic
 * gates": a C^j Ry is charged cnry_cost(j) and one U_V application
 * uv_cost(N). Absolute values depend on the model; only the scaling is
 * meaningful.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ptq/circuit.hpp"
#include "ptq/synthesis.hpp"

namespace ptq {

struct CostModel {
  std::function<std::uint64_t(int)> cnry_cost;  // by number of controls
  std::function<std::uint64_t(int)> uv_cost;    // by system size N

  /// cnry_cost(j) = max(1, j^2), uv_cost(N) = N.
  static CostModel quadratic();
  /// cnry_cost(j) = max(1, j), uv_cost(N) = N.
  static CostModel linear();
};

/// Throws if a model is not positive and nondecreasing over j, N in [0, max_n].
void check_model(const CostModel& model, int max_n);

std::uint64_t ue_cost(int n, UeVariant variant, const CostModel& model = CostModel::quadratic());

/// (m - 1) U_E layers and m U_V layers.
std::uint64_t circuit_cost(int n, int m, const CostModel& model = CostModel::quadratic(),
                           UeVariant variant = UeVariant::Improved);

/// Weighted count of an actual circuit; zero-angle rotations are free.
std::uint64_t circuit_gate_cost(const Circuit& circuit, const CostModel& model = CostModel::quadratic());

struct CostRow {
  int n = 0;
  std::uint64_t m = 0;
  std::uint64_t standard_ue = 0;
  std::uint64_t improved_ue = 0;
  std::uint64_t circuit_e3 = 0;
  std::uint64_t circuit_e4 = 0;
};

struct CostReport {
  std::vector<CostRow> rows;
};

/// Rows for every N in [n_min, n_max]; throws if improved > standard for
/// some N >= 2.
CostReport scaling_report(int n_min, int n_max, const CostModel& model = CostModel::quadratic());

/// N,M,standard_ue,improved_ue,circuit_e3,circuit_e4,ratio (ratio = improved / standard)
std::string cost_csv(const CostReport& report);
/// Whitespace-separated log10 columns for log-log plotting.
std::string cost_loglog(const CostReport& report);

}  // namespace ptq

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
#include <vector>

#include "ptq/statevector.hpp"
#include "ptq/system.hpp"

namespace ptq {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest deviation seen
  double tolerance = 0.0;  // bound it was held to
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  [[nodiscard]] bool passed() const;
};

/// Largest system size for which the dense U_E comparisons are run.
inline constexpr int kDenseCheckMaxQubits = 4;

/// |a - b| <= tol * max(1, |b|).
bool close_relative(double a, double b, double tol);

/// Runs every invariant check on one problem. Checks that do not apply to
/// the problem (e.g. Trotter without Pauli terms) are skipped, not failed.
VerifyReport verify_system(const PerturbedSystem& sys, const SimOptions& sim = {});

/// One "PASS|FAIL name worst tolerance detail" line per check.
std::string format_verify(const VerifyReport& report);

}  // namespace ptq

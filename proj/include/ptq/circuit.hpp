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
 * Gate-level IR for the term circuits. A circuit acts on N system qubits
 * (indices 0..N-1) followed by A ancillas (indices N..N+A-1). System
 * unitaries are dense 2^N x 2^N blocks on the system register.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ptq/types.hpp"

namespace ptq {

struct RegisterLayout {
  int n_system = 0;
  std::vector<std::string> ancillas;

  [[nodiscard]] int n_ancillas() const { return static_cast<int>(ancillas.size()); }
  [[nodiscard]] int total_qubits() const { return n_system + n_ancillas(); }

  /// Qubit index of the ancilla with the given label.
  [[nodiscard]] int ancilla_qubit(std::string_view label) const;
  /// Qubit index of the j-th ancilla (0-based).
  [[nodiscard]] int ancilla_qubit(int j) const { return n_system + j; }
};

enum class GateKind { Ry, MultiControlledRy, SystemUnitary };

struct Gate {
  GateKind kind = GateKind::Ry;
  int target = -1;
  double angle = 0.0;
  /// Qubits that must match control_values for the rotation to act.
  std::uint64_t control_mask = 0;
  std::uint64_t control_values = 0;
  Matrix matrix;
  bool is_unitary = true;
  std::string label;

  static Gate ry(int target, double angle);
  /// Controlled Ry; every control must read 1.
  static Gate controlled_ry(int target, double angle, std::uint64_t controls);
  /// Controlled Ry with arbitrary control values (bits of `values` under `controls`).
  static Gate controlled_ry(int target, double angle, std::uint64_t controls, std::uint64_t values);
  static Gate system_unitary(Matrix m, bool is_unitary, std::string label = "U_V");

  [[nodiscard]] int n_controls() const;
};

struct StageMark {
  std::string name;
  std::size_t position = 0;  // number of gates applied before the snapshot
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(RegisterLayout layout) : layout_(std::move(layout)) {}

  void add(Gate g) { gates_.push_back(std::move(g)); }
  void append(const std::vector<Gate>& gs) { gates_.insert(gates_.end(), gs.begin(), gs.end()); }
  /// Marks the current end of the gate list.
  void mark(std::string name) { marks_.push_back({std::move(name), gates_.size()}); }

  [[nodiscard]] const RegisterLayout& layout() const { return layout_; }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
  [[nodiscard]] const std::vector<StageMark>& stage_marks() const { return marks_; }

  [[nodiscard]] std::size_t count(GateKind kind) const;

  // Direct access for parsers and tests that build malformed circuits.
  std::vector<Gate>& mutable_gates() { return gates_; }
  std::vector<StageMark>& mutable_stage_marks() { return marks_; }

 private:
  RegisterLayout layout_;
  std::vector<Gate> gates_;
  std::vector<StageMark> marks_;
};

struct Violation {
  std::ptrdiff_t gate_index = -1;  // -1 for circuit-level problems
  std::string message;
  double deviation = 0.0;
};

/// Every violated invariant, empty when the circuit is well formed.
std::vector<Violation> validate(const Circuit& circuit, double unitary_tol = 1e-10);

nlohmann::json to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& doc);

std::string serialize_circuit(const Circuit& circuit);
Circuit parse_circuit(std::string_view text);

}  // namespace ptq

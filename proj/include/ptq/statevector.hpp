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
 * Dense statevector simulation of ptq circuits.
 *
 * Index convention: amplitude i belongs to the basis state whose qubit j
 * holds bit j of i. The system register occupies the low N bits, so the
 * index of |k>_q |a>_anc is k + 2^N * a.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptq/circuit.hpp"

namespace ptq {

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n_qubits);

  static StateVector basis(int n_qubits, std::uint64_t index);
  static StateVector from_amplitudes(int n_qubits, std::vector<Complex> amplitudes);

  [[nodiscard]] int n_qubits() const { return n_qubits_; }
  [[nodiscard]] std::size_t size() const { return amps_.size(); }
  [[nodiscard]] const std::vector<Complex>& amplitudes() const { return amps_; }
  std::vector<Complex>& mutable_amplitudes() { return amps_; }
  [[nodiscard]] Complex operator[](std::size_t i) const { return amps_[i]; }

  /// sum |amp|^2, recomputed on each call.
  [[nodiscard]] double norm() const;

 private:
  int n_qubits_ = 0;
  std::vector<Complex> amps_;
};

struct SimOptions {
  /// Worker threads for the amplitude loops; 0 = hardware concurrency.
  unsigned threads = 1;
  /// Below this many amplitudes loops stay single-threaded.
  std::size_t parallel_threshold = std::size_t{1} << 16;
};

/// Reads PTQ_THREADS (0 = auto); 1 when unset or invalid.
SimOptions sim_options_from_env();

void apply_gate(StateVector& state, const Gate& gate, int n_system, const SimOptions& opts = {});

struct RunResult {
  StateVector state;
  std::vector<std::pair<std::string, StateVector>> snapshots;

  [[nodiscard]] const StateVector& snapshot(std::string_view name) const;
};

RunResult run(const Circuit& circuit, std::uint64_t initial, const SimOptions& opts = {});
RunResult run(const Circuit& circuit, StateVector initial, const SimOptions& opts = {});

/// Amplitude of a basis state given by index.
Complex amplitude(const StateVector& state, std::uint64_t index);
/// Amplitude of a basis state given as a bitstring, character j = qubit j.
Complex amplitude(const StateVector& state, std::string_view bits);

/// Index of |k>_q (x) |ancilla bits> under the register convention.
std::uint64_t basis_index(int n_system, std::uint64_t level, std::uint64_t ancilla_bits);

struct MeasurementOutcome {
  std::uint64_t bits = 0;
  std::size_t count = 0;
};

/// Multinomial sampling of all qubits; outcomes with zero counts omitted,
/// ordered by index. Refuses states whose norm differs from 1 by > 1e-10.
std::vector<MeasurementOutcome> sample(const StateVector& state, std::size_t shots, std::uint64_t seed);

/// Dense matrix of a circuit, assembled column by column from basis runs.
Matrix dense_matrix(const Circuit& circuit, const SimOptions& opts = {});

/// Debug dump: one "index re im" line per nonzero amplitude.
void dump_state(std::ostream& os, const StateVector& state, double threshold = 0.0);

}  // namespace ptq

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

#include "ptq/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

namespace ptq {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 30) {
    throw Error(ErrorKind::InvalidArgument, "statevector size must be in [0, 30] qubits");
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.size()) throw Error(ErrorKind::DimensionMismatch, "basis index out of range");
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(int n_qubits, std::vector<Complex> amplitudes) {
  StateVector s(n_qubits);
  if (amplitudes.size() != s.size()) {
    throw Error(ErrorKind::DimensionMismatch, "amplitude count does not match 2^n_qubits");
  }
  s.amps_ = std::move(amplitudes);
  return s;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return sum;
}

SimOptions sim_options_from_env() {
  SimOptions opts;
  if (const char* env = std::getenv("PTQ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) opts.threads = static_cast<unsigned>(v);
  }
  return opts;
}

namespace {

unsigned worker_count(const SimOptions& opts, std::size_t work) {
  if (work < opts.parallel_threshold) return 1;
  unsigned t = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : opts.threads;
  return std::max(1U, t);
}

/// Runs fn(begin, end) over disjoint chunks of [0, count); joins before return.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count < 2) {
    fn(std::size_t{0}, count);
    return;
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
}

/// Scatters the low bits of j onto the set bits of mask.
std::uint64_t deposit(std::uint64_t j, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t m = mask; m != 0 && j != 0; m &= m - 1, j >>= 1) {
    if (j & 1U) out |= m & (~m + 1);
  }
  return out;
}

void apply_controlled_ry(StateVector& state, const Gate& g, const SimOptions& opts) {
  const int n = state.n_qubits();
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  const std::uint64_t tbit = std::uint64_t{1} << g.target;
  const std::uint64_t free = all & ~(g.control_mask | tbit);
  const std::size_t count = std::size_t{1} << std::popcount(free);
  const double c = std::cos(0.5 * g.angle);
  const double s = std::sin(0.5 * g.angle);
  auto& amps = state.mutable_amplitudes();

  parallel_for(count, worker_count(opts, 2 * count), [&](std::size_t begin, std::size_t end) {
    std::uint64_t sub = deposit(begin, free);
    for (std::size_t j = begin; j < end; ++j) {
      const std::uint64_t i0 = sub | g.control_values;
      const std::uint64_t i1 = i0 | tbit;
      const Complex a0 = amps[i0];
      const Complex a1 = amps[i1];
      amps[i0] = c * a0 - s * a1;
      amps[i1] = s * a0 + c * a1;
      sub = ((sub | ~free) + 1) & free;  // next submask of `free`
    }
  });
}

void apply_system_unitary(StateVector& state, const Gate& g, int n_system, const SimOptions& opts) {
  const Eigen::Index block = Eigen::Index{1} << n_system;
  if (g.matrix.rows() != block || g.matrix.cols() != block) {
    throw Error(ErrorKind::DimensionMismatch, "system unitary does not match the system register");
  }
  const std::size_t blocks = state.size() >> n_system;
  auto* data = state.mutable_amplitudes().data();
  parallel_for(blocks, worker_count(opts, state.size()), [&](std::size_t begin, std::size_t end) {
    Vector tmp(block);
    for (std::size_t b = begin; b < end; ++b) {
      Eigen::Map<Vector> view(data + b * static_cast<std::size_t>(block), block);
      if (view.isZero(0.0)) continue;
      tmp.noalias() = g.matrix * view;
      view = tmp;
    }
  });
}

}  // namespace

void apply_gate(StateVector& state, const Gate& gate, int n_system, const SimOptions& opts) {
  switch (gate.kind) {
    case GateKind::SystemUnitary:
      apply_system_unitary(state, gate, n_system, opts);
      return;
    case GateKind::Ry:
    case GateKind::MultiControlledRy:
      if (gate.target < 0 || gate.target >= state.n_qubits()) {
        throw Error(ErrorKind::DimensionMismatch, "gate target outside the register");
      }
      if ((gate.control_mask >> gate.target) & 1U) {
        throw Error(ErrorKind::InvalidArgument, "gate target is also a control");
      }
      if (state.n_qubits() < 64 && (gate.control_mask >> state.n_qubits()) != 0) {
        throw Error(ErrorKind::DimensionMismatch, "gate control outside the register");
      }
      if (gate.angle == 0.0) return;
      apply_controlled_ry(state, gate, opts);
      return;
  }
}

const StateVector& RunResult::snapshot(std::string_view name) const {
  for (const auto& [label, s] : snapshots) {
    if (label == name) return s;
  }
  throw Error(ErrorKind::InvalidArgument, "no snapshot named '" + std::string(name) + "'");
}

RunResult run(const Circuit& circuit, StateVector initial, const SimOptions& opts) {
  const int total = circuit.layout().total_qubits();
  if (initial.n_qubits() != total) {
    throw Error(ErrorKind::DimensionMismatch, "initial state has " + std::to_string(initial.n_qubits()) +
                                                  " qubits, circuit has " + std::to_string(total));
  }
  RunResult result;
  result.state = std::move(initial);
  const auto& marks = circuit.stage_marks();
  std::size_t next_mark = 0;
  auto take_snapshots = [&](std::size_t position) {
    while (next_mark < marks.size() && marks[next_mark].position == position) {
      result.snapshots.emplace_back(marks[next_mark].name, result.state);
      ++next_mark;
    }
  };
  const auto& gates = circuit.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    take_snapshots(i);
    apply_gate(result.state, gates[i], circuit.layout().n_system, opts);
  }
  take_snapshots(gates.size());
  return result;
}

RunResult run(const Circuit& circuit, std::uint64_t initial, const SimOptions& opts) {
  return run(circuit, StateVector::basis(circuit.layout().total_qubits(), initial), opts);
}

Complex amplitude(const StateVector& state, std::uint64_t index) {
  if (index >= state.size()) throw Error(ErrorKind::DimensionMismatch, "outcome index out of range");
  return state[index];
}

Complex amplitude(const StateVector& state, std::string_view bits) {
  if (static_cast<int>(bits.size()) != state.n_qubits()) {
    throw Error(ErrorKind::DimensionMismatch, "bitstring length " + std::to_string(bits.size()) +
                                                  " does not match " + std::to_string(state.n_qubits()) +
                                                  " qubits");
  }
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1') {
      index |= std::uint64_t{1} << j;
    } else if (bits[j] != '0') {
      throw Error(ErrorKind::InvalidArgument, "bitstring may only contain 0 and 1");
    }
  }
  return state[index];
}

std::uint64_t basis_index(int n_system, std::uint64_t level, std::uint64_t ancilla_bits) {
  return level | (ancilla_bits << n_system);
}

std::vector<MeasurementOutcome> sample(const StateVector& state, std::size_t shots, std::uint64_t seed) {
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "refusing to sample from an unnormalized state (norm " << norm << ")";
    throw Error(ErrorKind::Numerical, os.str());
  }
  // Multinomial draw as a chain of conditional binomials.
  std::mt19937_64 rng(seed);
  std::vector<MeasurementOutcome> out;
  std::size_t last = 0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (std::norm(state[i]) > 0.0) last = i;
  }
  std::size_t remaining = shots;
  double remaining_mass = 1.0;
  for (std::size_t i = 0; i < state.size() && remaining > 0; ++i) {
    const double p = std::norm(state[i]);
    if (p == 0.0) continue;
    std::size_t count = remaining;
    if (i != last) {
      const double q = std::clamp(p / remaining_mass, 0.0, 1.0);
      if (q < 1.0) {
        std::binomial_distribution<long long> draw(static_cast<long long>(remaining), q);
        count = static_cast<std::size_t>(draw(rng));
      }
    }
    remaining_mass -= p;
    remaining -= count;
    if (count > 0) out.push_back({i, count});
  }
  return out;
}

Matrix dense_matrix(const Circuit& circuit, const SimOptions& opts) {
  const int total = circuit.layout().total_qubits();
  const Eigen::Index dim = Eigen::Index{1} << total;
  Matrix out(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto result = run(circuit, static_cast<std::uint64_t>(col), opts);
    for (Eigen::Index row = 0; row < dim; ++row) out(row, col) = result.state[static_cast<std::size_t>(row)];
  }
  return out;
}

void dump_state(std::ostream& os, const StateVector& state, double threshold) {
  const auto prec = os.precision(17);
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (std::abs(state[i]) > threshold || (threshold == 0.0 && state[i] != Complex{})) {
      os << i << ' ' << state[i].real() << ' ' << state[i].imag() << '\n';
    }
  }
  os.precision(prec);
}

}  // namespace ptq

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

#include "ptq/circuit.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <sstream>

namespace ptq {

using nlohmann::json;

int RegisterLayout::ancilla_qubit(std::string_view label) const {
  for (std::size_t j = 0; j < ancillas.size(); ++j) {
    if (ancillas[j] == label) return n_system + static_cast<int>(j);
  }
  throw Error(ErrorKind::InvalidArgument, "no ancilla labelled '" + std::string(label) + "'");
}

Gate Gate::ry(int target, double angle) {
  Gate g;
  g.kind = GateKind::Ry;
  g.target = target;
  g.angle = angle;
  return g;
}

Gate Gate::controlled_ry(int target, double angle, std::uint64_t controls) {
  return controlled_ry(target, angle, controls, controls);
}

Gate Gate::controlled_ry(int target, double angle, std::uint64_t controls, std::uint64_t values) {
  Gate g;
  g.kind = GateKind::MultiControlledRy;
  g.target = target;
  g.angle = angle;
  g.control_mask = controls;
  g.control_values = values & controls;
  return g;
}

Gate Gate::system_unitary(Matrix m, bool is_unitary, std::string label) {
  Gate g;
  g.kind = GateKind::SystemUnitary;
  g.matrix = std::move(m);
  g.is_unitary = is_unitary;
  g.label = std::move(label);
  return g;
}

int Gate::n_controls() const { return std::popcount(control_mask); }

std::size_t Circuit::count(GateKind kind) const {
  std::size_t c = 0;
  for (const auto& g : gates_) c += g.kind == kind ? 1 : 0;
  return c;
}

std::vector<Violation> validate(const Circuit& circuit, double unitary_tol) {
  std::vector<Violation> out;
  const RegisterLayout& layout = circuit.layout();
  const int total = layout.total_qubits();

  if (layout.n_system < 1) out.push_back({-1, "layout has no system qubits", 0.0});
  if (total > 62) out.push_back({-1, "layout exceeds 62 qubits", 0.0});
  std::set<std::string> labels;
  for (const auto& l : layout.ancillas) {
    if (!labels.insert(l).second) out.push_back({-1, "duplicate ancilla label '" + l + "'", 0.0});
  }

  const std::uint64_t qubit_mask = total >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << total) - 1;
  for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
    const Gate& g = circuit.gates()[i];
    const auto idx = static_cast<std::ptrdiff_t>(i);
    if (g.kind == GateKind::SystemUnitary) {
      const Eigen::Index dim = Eigen::Index{1} << layout.n_system;
      if (g.matrix.rows() != dim || g.matrix.cols() != dim) {
        out.push_back({idx, "system unitary has wrong dimension", 0.0});
        continue;
      }
      if (!g.matrix.allFinite()) out.push_back({idx, "system unitary has non-finite entries", 0.0});
      if (g.is_unitary) {
        const double dev = max_abs(g.matrix.adjoint() * g.matrix - Matrix::Identity(dim, dim));
        if (!(dev <= unitary_tol)) {
          std::ostringstream os;
          os << "gate flagged unitary deviates from unitarity by " << dev;
          out.push_back({idx, os.str(), dev});
        }
      }
      continue;
    }
    if (g.target < 0 || g.target >= total) out.push_back({idx, "target qubit out of range", 0.0});
    if (!std::isfinite(g.angle)) out.push_back({idx, "rotation angle is not finite", 0.0});
    if (g.kind == GateKind::Ry && g.control_mask != 0) {
      out.push_back({idx, "plain Ry carries controls", 0.0});
    }
    if ((g.control_mask & ~qubit_mask) != 0) out.push_back({idx, "control qubit out of range", 0.0});
    if (g.target >= 0 && g.target < 64 && bit(g.control_mask, g.target)) {
      out.push_back({idx, "target qubit is also a control", 0.0});
    }
    if ((g.control_values & ~g.control_mask) != 0) {
      out.push_back({idx, "control value set on a non-control qubit", 0.0});
    }
  }

  std::size_t prev = 0;
  bool first = true;
  for (const auto& m : circuit.stage_marks()) {
    if (m.position > circuit.gates().size()) {
      out.push_back({-1, "stage mark '" + m.name + "' beyond the gate list", 0.0});
    }
    if (!first && m.position <= prev) {
      out.push_back({-1, "stage mark '" + m.name + "' not strictly after the previous mark", 0.0});
    }
    prev = m.position;
    first = false;
  }
  return out;
}

namespace {

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::Ry: return "ry";
    case GateKind::MultiControlledRy: return "mcry";
    case GateKind::SystemUnitary: return "system_unitary";
  }
  return "?";
}

GateKind parse_kind(const std::string& s) {
  if (s == "ry") return GateKind::Ry;
  if (s == "mcry") return GateKind::MultiControlledRy;
  if (s == "system_unitary") return GateKind::SystemUnitary;
  throw Error(ErrorKind::Parse, "unknown gate kind '" + s + "'");
}

}  // namespace

json to_json(const Circuit& circuit) {
  json doc;
  doc["layout"] = {{"n_system", circuit.layout().n_system}, {"ancillas", circuit.layout().ancillas}};
  json gates = json::array();
  for (const auto& g : circuit.gates()) {
    json jg;
    jg["kind"] = kind_name(g.kind);
    if (g.kind == GateKind::SystemUnitary) {
      json rows = json::array();
      for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < g.matrix.cols(); ++c) {
          row.push_back({g.matrix(r, c).real(), g.matrix(r, c).imag()});
        }
        rows.push_back(std::move(row));
      }
      jg["matrix"] = std::move(rows);
      jg["is_unitary"] = g.is_unitary;
      jg["label"] = g.label;
    } else {
      jg["target"] = g.target;
      jg["angle"] = g.angle;
      json controls = json::array();
      json values = json::array();
      for (int q = 0; q < 64; ++q) {
        if (bit(g.control_mask, q)) {
          controls.push_back(q);
          values.push_back(bit(g.control_values, q) ? 1 : 0);
        }
      }
      jg["controls"] = std::move(controls);
      jg["control_values"] = std::move(values);
    }
    gates.push_back(std::move(jg));
  }
  doc["gates"] = std::move(gates);
  json marks = json::array();
  for (const auto& m : circuit.stage_marks()) marks.push_back({{"name", m.name}, {"position", m.position}});
  doc["stage_marks"] = std::move(marks);
  return doc;
}

Circuit circuit_from_json(const json& doc) {
  try {
    RegisterLayout layout;
    layout.n_system = doc.at("layout").at("n_system").get<int>();
    layout.ancillas = doc.at("layout").at("ancillas").get<std::vector<std::string>>();
    Circuit circuit(layout);
    for (const auto& jg : doc.at("gates")) {
      Gate g;
      g.kind = parse_kind(jg.at("kind").get<std::string>());
      if (g.kind == GateKind::SystemUnitary) {
        const auto& rows = jg.at("matrix");
        const auto dim = static_cast<Eigen::Index>(rows.size());
        g.matrix.resize(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r) {
          const auto& row = rows.at(static_cast<std::size_t>(r));
          if (static_cast<Eigen::Index>(row.size()) != dim) throw Error(ErrorKind::Parse, "matrix must be square");
          for (Eigen::Index c = 0; c < dim; ++c) {
            const auto& e = row.at(static_cast<std::size_t>(c));
            g.matrix(r, c) = Complex{e.at(0).get<double>(), e.at(1).get<double>()};
          }
        }
        g.is_unitary = jg.value("is_unitary", true);
        g.label = jg.value("label", std::string("U_V"));
      } else {
        g.target = jg.at("target").get<int>();
        g.angle = jg.at("angle").get<double>();
        const auto controls = jg.value("controls", std::vector<int>{});
        std::vector<int> values = jg.value("control_values", std::vector<int>(controls.size(), 1));
        if (values.size() != controls.size()) {
          throw Error(ErrorKind::Parse, "controls and control_values differ in length");
        }
        for (std::size_t i = 0; i < controls.size(); ++i) {
          if (controls[i] < 0 || controls[i] >= 64) throw Error(ErrorKind::Parse, "control index out of range");
          g.control_mask |= std::uint64_t{1} << controls[i];
          if (values[i] != 0) g.control_values |= std::uint64_t{1} << controls[i];
        }
      }
      circuit.add(std::move(g));
    }
    for (const auto& jm : doc.value("stage_marks", json::array())) {
      circuit.mutable_stage_marks().push_back(
          {jm.at("name").get<std::string>(), jm.at("position").get<std::size_t>()});
    }
    return circuit;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed circuit document: ") + e.what());
  }
}

std::string serialize_circuit(const Circuit& circuit) { return to_json(circuit).dump(); }

Circuit parse_circuit(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  return circuit_from_json(doc);
}

}  // namespace ptq

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

#include "ptq/system.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <json.hpp>

namespace ptq {

using nlohmann::json;

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::NonHermitian: return "non_hermitian";
    case ErrorKind::PauliMismatch: return "pauli_mismatch";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Numerical: return "numerical";
  }
  return "unknown";
}

double min_pairwise_gap(const std::vector<double>& energies) {
  std::vector<double> sorted = energies;
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::min(gap, sorted[i] - sorted[i - 1]);
  return gap;
}

Matrix pauli_matrix(std::string_view pauli, int n_qubits) {
  if (static_cast<int>(pauli.size()) != n_qubits) {
    throw Error(ErrorKind::InvalidArgument,
                "Pauli string '" + std::string(pauli) + "' has length " +
                    std::to_string(pauli.size()) + ", expected " + std::to_string(n_qubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Matrix out = Matrix::Zero(dim, dim);
  // P|k> = phase(k) |k ^ flip>
  std::uint64_t flip = 0;
  for (int j = 0; j < n_qubits; ++j) {
    const char c = pauli[static_cast<std::size_t>(j)];
    if (c == 'X' || c == 'Y') flip |= std::uint64_t{1} << j;
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw Error(ErrorKind::InvalidArgument, std::string("invalid Pauli character '") + c + "'");
    }
  }
  for (Eigen::Index k = 0; k < dim; ++k) {
    Complex phase{1.0, 0.0};
    for (int j = 0; j < n_qubits; ++j) {
      const bool b = bit(static_cast<std::uint64_t>(k), j);
      switch (pauli[static_cast<std::size_t>(j)]) {
        case 'Y': phase *= b ? Complex{0.0, -1.0} : Complex{0.0, 1.0}; break;
        case 'Z': if (b) phase = -phase; break;
        default: break;
      }
    }
    out(static_cast<Eigen::Index>(static_cast<std::uint64_t>(k) ^ flip), k) = phase;
  }
  return out;
}

Matrix assemble_pauli_sum(const std::vector<PauliTerm>& terms, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& t : terms) out += t.coefficient * pauli_matrix(t.string, n_qubits);
  return out;
}

void validate_system(const PerturbedSystem& sys, const ValidationOptions& opts) {
  if (sys.n_qubits < 1 || sys.n_qubits > 24) {
    throw Error(ErrorKind::InvalidArgument, "n_qubits must be in [1, 24]");
  }
  const std::size_t dim = std::size_t{1} << sys.n_qubits;
  if (sys.energies.size() != dim) {
    throw Error(ErrorKind::DimensionMismatch, "energies has " + std::to_string(sys.energies.size()) +
                                                  " entries, expected 2^N = " + std::to_string(dim));
  }
  if (static_cast<std::size_t>(sys.perturbation.rows()) != dim ||
      static_cast<std::size_t>(sys.perturbation.cols()) != dim) {
    throw Error(ErrorKind::DimensionMismatch, "perturbation must be " + std::to_string(dim) + "x" +
                                                  std::to_string(dim));
  }
  for (double e : sys.energies) {
    if (!std::isfinite(e)) throw Error(ErrorKind::InvalidArgument, "energies must be finite");
  }
  if (!sys.perturbation.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "perturbation must be finite");
  }
  if (!std::isfinite(sys.lambda)) throw Error(ErrorKind::InvalidArgument, "lambda must be finite");
  if (sys.target_level < 0 || static_cast<std::size_t>(sys.target_level) >= dim) {
    throw Error(ErrorKind::InvalidArgument, "target_level out of range");
  }
  const double gap = min_pairwise_gap(sys.energies);
  if (!(gap > opts.degeneracy_tol)) {
    std::ostringstream os;
    os << "degenerate spectrum: minimum gap " << gap << " <= tolerance " << opts.degeneracy_tol;
    throw Error(ErrorKind::Degenerate, os.str());
  }
  const double herm = max_abs(sys.perturbation - sys.perturbation.adjoint());
  if (herm > opts.hermitian_tol) {
    std::ostringstream os;
    os << "perturbation is not Hermitian: max |V_mk - conj(V_km)| = " << herm;
    throw Error(ErrorKind::NonHermitian, os.str());
  }
  if (!sys.pauli_terms.empty()) {
    const double dev = max_abs(assemble_pauli_sum(sys.pauli_terms, sys.n_qubits) - sys.perturbation);
    if (dev > opts.pauli_tol) {
      std::ostringstream os;
      os << "pauli_terms do not reproduce the perturbation matrix: max deviation " << dev;
      throw Error(ErrorKind::PauliMismatch, os.str());
    }
  }
}

namespace {

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error(ErrorKind::Parse, "matrix entries must be [re, im] pairs or reals");
}

Matrix parse_matrix(const json& j, const char* key) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, std::string(key) + " must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Matrix m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
      throw Error(ErrorKind::Parse, std::string(key) + " must be square");
    }
    for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json dump_matrix(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

PerturbedSystem load_system(std::string_view document, const ValidationOptions& opts) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw Error(ErrorKind::Parse, "problem document must be a JSON object");
    for (const char* key : {"n_qubits", "perturbation", "lambda", "target_level"}) {
      if (!doc.contains(key)) throw Error(ErrorKind::Parse, std::string("missing key '") + key + "'");
    }
    const int n_qubits = doc.at("n_qubits").get<int>();
    const Matrix v = parse_matrix(doc.at("perturbation"), "perturbation");
    const double lambda = doc.at("lambda").get<double>();
    const int level = doc.at("target_level").get<int>();

    if (doc.contains("h0")) {
      if (doc.contains("energies")) {
        throw Error(ErrorKind::Parse, "give either 'energies' or 'h0', not both");
      }
      if (doc.contains("pauli_terms")) {
        throw Error(ErrorKind::Parse, "'pauli_terms' must be given in the eigenbasis; not allowed with 'h0'");
      }
      PerturbedSystem sys = system_from_h0(parse_matrix(doc.at("h0"), "h0"), v, lambda, level, opts);
      if (sys.n_qubits != n_qubits) throw Error(ErrorKind::DimensionMismatch, "h0 size does not match n_qubits");
      return sys;
    }

    if (!doc.contains("energies")) throw Error(ErrorKind::Parse, "missing key 'energies'");
    PerturbedSystem sys;
    sys.n_qubits = n_qubits;
    sys.energies = doc.at("energies").get<std::vector<double>>();
    sys.perturbation = v;
    sys.lambda = lambda;
    sys.target_level = level;
    if (doc.contains("pauli_terms")) {
      for (const auto& t : doc.at("pauli_terms")) {
        sys.pauli_terms.push_back({t.at("coefficient").get<double>(), t.at("string").get<std::string>()});
      }
    }
    validate_system(sys, opts);
    return sys;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed problem document: ") + e.what());
  }
}

PerturbedSystem load_system_file(const std::filesystem::path& path, const ValidationOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open problem file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_system(buf.str(), opts);
}

std::string dump_system(const PerturbedSystem& sys) {
  json doc;
  doc["n_qubits"] = sys.n_qubits;
  doc["energies"] = sys.energies;
  doc["perturbation"] = dump_matrix(sys.perturbation);
  if (!sys.pauli_terms.empty()) {
    json terms = json::array();
    for (const auto& t : sys.pauli_terms) terms.push_back({{"coefficient", t.coefficient}, {"string", t.string}});
    doc["pauli_terms"] = std::move(terms);
  }
  doc["lambda"] = sys.lambda;
  doc["target_level"] = sys.target_level;
  return doc.dump(2);
}

EnergyGapTable gap_table(const PerturbedSystem& sys, int level, int power) {
  EnergyGapTable table;
  table.level = level;
  table.power = power;
  table.gaps.resize(sys.dimension());
  for (std::size_t k = 0; k < sys.dimension(); ++k) {
    if (static_cast<int>(k) == level) continue;
    table.gaps[k] = std::pow(sys.gap(static_cast<std::size_t>(level), k), power);
  }
  return table;
}

Diagonalization diagonalize_h0(const Matrix& h0, double hermitian_tol) {
  if (h0.rows() != h0.cols()) throw Error(ErrorKind::DimensionMismatch, "H0 must be square");
  const double herm = max_abs(h0 - h0.adjoint());
  if (herm > hermitian_tol) {
    std::ostringstream os;
    os << "H0 is not Hermitian: max deviation " << herm;
    throw Error(ErrorKind::NonHermitian, os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h0);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Numerical, "eigen-solver failed on H0");
  Diagonalization out;
  const auto& values = solver.eigenvalues();
  out.energies.assign(values.data(), values.data() + values.size());
  // Columns of Q are eigenvectors, T|psi_k> = |k> gives T = Q^dagger.
  out.transform = solver.eigenvectors().adjoint();
  return out;
}

Matrix to_eigenbasis(const Matrix& op, const Matrix& transform) {
  return transform * op * transform.adjoint();
}

PerturbedSystem system_from_h0(const Matrix& h0, const Matrix& perturbation, double lambda,
                               int target_level, const ValidationOptions& opts) {
  if (perturbation.rows() != h0.rows() || perturbation.cols() != h0.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "H0 and V differ in size");
  }
  const auto dim = static_cast<std::size_t>(h0.rows());
  int n_qubits = 0;
  while ((std::size_t{1} << n_qubits) < dim) ++n_qubits;
  if ((std::size_t{1} << n_qubits) != dim) {
    throw Error(ErrorKind::DimensionMismatch, "H0 dimension is not a power of two");
  }
  const Diagonalization d = diagonalize_h0(h0, opts.hermitian_tol);
  PerturbedSystem sys;
  sys.n_qubits = n_qubits;
  sys.energies = d.energies;
  Matrix v = to_eigenbasis(perturbation, d.transform);
  // Hermitian exactly, round-off from the basis change would otherwise trip
  // the 1e-12 check for large entries.
  sys.perturbation = 0.5 * (v + v.adjoint());
  sys.lambda = lambda;
  sys.target_level = target_level;
  validate_system(sys, opts);
  return sys;
}

}  // namespace ptq

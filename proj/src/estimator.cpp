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

#include "ptq/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace ptq {

using nlohmann::json;

std::string mode_name(EstimationMode m) {
  switch (m) {
    case EstimationMode::Linearized: return "linearized";
    case EstimationMode::Unitary: return "unitary";
    case EstimationMode::Sampling: return "sampling";
  }
  return "?";
}

EstimationMode parse_mode(std::string_view s) {
  if (s == "linearized") return EstimationMode::Linearized;
  if (s == "unitary") return EstimationMode::Unitary;
  if (s == "sampling") return EstimationMode::Sampling;
  throw Error(ErrorKind::InvalidArgument, "unknown mode '" + std::string(s) + "'");
}

std::vector<double> lambda_ladder(double lambda, int count) {
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) nodes.push_back(std::ldexp(lambda, -j));
  return nodes;
}

std::vector<Complex> fit_polynomial(const std::vector<double>& nodes, const std::vector<Complex>& values) {
  if (nodes.size() != values.size() || nodes.empty()) {
    throw Error(ErrorKind::InvalidArgument, "fit_polynomial needs matching, non-empty node and value lists");
  }
  const auto n = static_cast<Eigen::Index>(nodes.size());
  double scale = 0.0;
  for (double x : nodes) scale = std::max(scale, std::abs(x));
  if (!(scale > 0.0)) throw Error(ErrorKind::Numerical, "interpolation nodes are all zero");

  // Solve in t = x / scale and rescale the coefficients afterwards.
  Eigen::MatrixXd vander(n, n);
  Vector rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double t = nodes[static_cast<std::size_t>(j)] / scale;
    double p = 1.0;
    for (Eigen::Index d = 0; d < n; ++d) {
      vander(j, d) = p;
      p *= t;
    }
    rhs(j) = values[static_cast<std::size_t>(j)];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(vander);
  if (!lu.isInvertible()) throw Error(ErrorKind::Numerical, "interpolation nodes are not distinct");
  const Eigen::VectorXd re = lu.solve(Eigen::VectorXd(rhs.real()));
  const Eigen::VectorXd im = lu.solve(Eigen::VectorXd(rhs.imag()));
  std::vector<Complex> out(nodes.size());
  double s = 1.0;
  for (Eigen::Index d = 0; d < n; ++d) {
    out[static_cast<std::size_t>(d)] = Complex{re(d), im(d)} / s;
    s *= scale;
  }
  return out;
}

Complex post_selected_amplitude(const TermCircuit& tc, const SimOptions& sim) {
  const RunResult r = run(tc.circuit, tc.initial_index, sim);
  return amplitude(r.state, tc.post_select_index);
}

namespace {

void require_scalar(const TermCircuit& tc) {
  if (tc.term.kind == TermKind::State1) {
    throw Error(ErrorKind::InvalidArgument, "state1 is read out by first_order_state");
  }
}

double require_positive_lambda(const PerturbedSystem& sys) {
  if (!(sys.lambda > 0.0)) throw Error(ErrorKind::InvalidArgument, "estimation requires lambda > 0");
  return sys.lambda;
}

/// Samples A(lambda) on a ladder of `count` nodes and fits a polynomial.
TermEstimate ladder_fit(const PerturbedSystem& sys, const TermCircuit& tc, int count, const SimOptions& sim) {
  TermEstimate est;
  est.term = tc.term;
  est.lambda_nodes = lambda_ladder(require_positive_lambda(sys), count);
  std::vector<Complex> values;
  values.reserve(est.lambda_nodes.size());
  for (double node : est.lambda_nodes) {
    const TermCircuit at = build_term_circuit(sys.with_lambda(node), tc.term, tc.options);
    values.push_back(post_selected_amplitude(at, sim));
  }
  const auto coeffs = fit_polynomial(est.lambda_nodes, values);
  est.raw_coefficient = coeffs[static_cast<std::size_t>(tc.signal_order)];
  const Complex term = est.raw_coefficient / tc.prefactor;
  est.value = term.real();
  est.imag_residue = std::abs(term.imag());
  return est;
}

}  // namespace

TermEstimate extract_term_linearized(const PerturbedSystem& sys, const TermCircuit& tc, const SimOptions& sim) {
  require_scalar(tc);
  if (tc.options.backend.kind != UvBackend::Kind::Linearized) {
    throw Error(ErrorKind::InvalidArgument, "linearized extraction needs a circuit built with the linearized U_V");
  }
  TermEstimate est = ladder_fit(sys, tc, tc.signal_order + 1, sim);
  est.mode = EstimationMode::Linearized;
  est.predicted_bias = 0.0;
  return est;
}

TermEstimate extract_term_unitary(const PerturbedSystem& sys, const TermCircuit& tc, const SimOptions& sim) {
  require_scalar(tc);
  if (!tc.options.backend.is_unitary()) {
    throw Error(ErrorKind::InvalidArgument, "unitary extraction needs a unitary U_V backend");
  }
  TermEstimate est = ladder_fit(sys, tc, tc.signal_order + 2, sim);
  est.mode = EstimationMode::Unitary;
  est.predicted_bias = uv_series_bias(sys, tc.term, tc.options.backend);
  return est;
}

TermEstimate extract_term_sampling(const PerturbedSystem& sys, const TermCircuit& tc, std::size_t shots,
                                   std::uint64_t seed, const SimOptions& sim) {
  require_scalar(tc);
  if (!tc.options.backend.is_unitary()) {
    throw Error(ErrorKind::InvalidArgument, "sampling needs a unitary U_V backend");
  }
  if (shots == 0) throw Error(ErrorKind::InvalidArgument, "sampling needs shots > 0");
  const double lambda = require_positive_lambda(sys);
  TermEstimate est;
  est.term = tc.term;
  est.mode = EstimationMode::Sampling;
  est.magnitude_only = true;
  est.lambda_nodes = {lambda};
  est.shots = shots;
  est.seed = seed;
  est.predicted_bias = uv_series_bias(sys, tc.term, tc.options.backend);

  const TermCircuit at = build_term_circuit(sys, tc.term, tc.options);
  const RunResult r = run(at.circuit, at.initial_index, sim);
  const Complex amp = amplitude(r.state, at.post_select_index);
  est.reference_probability = std::norm(amp);
  est.raw_coefficient = amp / std::pow(lambda, at.signal_order);

  for (const auto& o : sample(r.state, shots, seed)) {
    if (o.bits == at.post_select_index) est.accepted = o.count;
  }
  const double n = static_cast<double>(shots);
  est.probability = static_cast<double>(est.accepted) / n;
  est.probability_stderr = std::sqrt(est.probability * (1.0 - est.probability) / n);
  const double scale = std::pow(lambda, at.signal_order) * std::abs(at.prefactor);
  est.value = std::sqrt(est.probability) / scale;
  // d sqrt(p) = dp / (2 sqrt(p))
  est.value_stderr = est.accepted == 0 ? 0.0 : est.probability_stderr / (2.0 * std::sqrt(est.probability)) / scale;
  return est;
}

std::vector<std::pair<std::size_t, Complex>> first_order_state(const PerturbedSystem& sys, UeVariant variant,
                                                               const SimOptions& sim) {
  const double lambda = sys.lambda != 0.0 ? sys.lambda : 1.0;
  const PerturbedSystem at = sys.with_lambda(lambda);
  const TermCircuit tc =
      build_aux_circuit(at, TermKind::State1, BuildOptions{variant, UvBackend::linearized()});
  const RunResult r = run(tc.circuit, tc.initial_index, sim);
  const Complex scale = kI * lambda * tc.c_values.front();
  std::vector<std::pair<std::size_t, Complex>> out;
  for (std::size_t k = 0; k < sys.dimension(); ++k) {
    if (static_cast<int>(k) == sys.target_level) continue;
    out.emplace_back(k, amplitude(r.state, basis_index(sys.n_qubits, k, 1)) / scale);
  }
  return out;
}

double assemble_e3(double eps3, double e1, double m_b) { return eps3 - e1 * m_b; }

double assemble_e4(double eps4, double e1, double e2, double m_a, double m_b, double m_c) {
  return eps4 - m_b * e2 - 2.0 * e1 * m_a + e1 * e1 * m_c;
}

const TermEstimate& PTReport::estimate(const TermId& id) const {
  for (const auto& row : terms) {
    if (row.estimate.term == id) return row.estimate;
  }
  throw Error(ErrorKind::InvalidArgument, "report has no estimate for " + term_name(id));
}

PTReport assemble_corrections(const PerturbedSystem& sys, const std::vector<TermEstimate>& estimates,
                              const ReportConfig& config) {
  PTReport report;
  report.config = config;
  report.oracle = pt_corrections(sys);
  for (const auto& e : estimates) {
    TermRow row;
    row.estimate = e;
    row.oracle = term_value(report.oracle, sys, e.term);
    const double target = row.oracle + e.predicted_bias;
    row.deviation = e.magnitude_only ? e.value - std::abs(target) : e.value - target;
    report.terms.push_back(std::move(row));
  }
  const auto value = [&](const TermId& id) { return report.estimate(id).value; };
  report.e1 = report.oracle.e1;
  const double eps3 = value(TermId::eps(3));
  const double eps4 = value(TermId::eps(4));
  const double m_a = value(TermId::of(TermKind::MA));
  const double m_b = value(TermId::of(TermKind::MB));
  const double m_c = value(TermId::of(TermKind::MC));
  const double e2 = value(TermId::of(TermKind::E2));
  report.assembled_e3 = assemble_e3(eps3, report.e1, m_b);
  report.assembled_e4 = assemble_e4(eps4, report.e1, e2, m_a, m_b, m_c);
  report.deviation_e3 = report.assembled_e3 - report.oracle.e3;
  report.deviation_e4 = report.assembled_e4 - report.oracle.e4;
  for (int p = 1; p <= 3; ++p) report.c_values.emplace_back(p, select_c(sys, sys.target_level, p));
  return report;
}

PTReport estimate_corrections(const PerturbedSystem& sys, const ReportConfig& config, const SimOptions& sim) {
  BuildOptions opts;
  opts.variant = config.variant;
  opts.backend = config.mode == EstimationMode::Linearized ? UvBackend::linearized() : config.backend;
  const PerturbedSystem at = sys.with_lambda(config.lambda);
  std::vector<TermEstimate> estimates;
  for (const TermId& id : energy_terms()) {
    const TermCircuit tc = build_term_circuit(at, id, opts);
    switch (config.mode) {
      case EstimationMode::Linearized: estimates.push_back(extract_term_linearized(at, tc, sim)); break;
      case EstimationMode::Unitary: estimates.push_back(extract_term_unitary(at, tc, sim)); break;
      case EstimationMode::Sampling:
        estimates.push_back(extract_term_sampling(at, tc, config.shots, config.seed, sim));
        break;
    }
  }
  ReportConfig echoed = config;
  echoed.backend = opts.backend;
  return assemble_corrections(at, estimates, echoed);
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

}  // namespace

std::string report_json(const PTReport& report) {
  json doc;
  doc["config"] = {{"lambda", num(report.config.lambda)},
                   {"mode", mode_name(report.config.mode)},
                   {"ue_variant", variant_name(report.config.variant)},
                   {"uv_backend", backend_name(report.config.backend)},
                   {"shots", report.config.shots},
                   {"seed", report.config.seed}};
  const auto& o = report.oracle;
  doc["oracle"] = {{"e1", num(o.e1)},     {"e2", num(o.e2)},   {"e3", num(o.e3)},     {"e4", num(o.e4)},
                   {"eps3", num(o.eps3)}, {"eps4", num(o.eps4)}, {"m_a", num(o.m_a)}, {"m_b", num(o.m_b)},
                   {"m_c", num(o.m_c)}};
  json terms = json::array();
  for (const auto& row : report.terms) {
    const auto& e = row.estimate;
    json jt = {{"term", term_name(e.term)},
               {"mode", mode_name(e.mode)},
               {"value", num(e.value)},
               {"magnitude_only", e.magnitude_only},
               {"oracle", num(row.oracle)},
               {"bias", num(e.predicted_bias)},
               {"deviation", num(row.deviation)},
               {"imag_residue", num(e.imag_residue)}};
    json nodes = json::array();
    for (double l : e.lambda_nodes) nodes.push_back(num(l));
    jt["lambda_nodes"] = std::move(nodes);
    if (e.mode == EstimationMode::Sampling) {
      jt["shots"] = e.shots;
      jt["seed"] = e.seed;
      jt["accepted"] = e.accepted;
      jt["probability"] = num(e.probability);
      jt["probability_stderr"] = num(e.probability_stderr);
      jt["value_stderr"] = num(e.value_stderr);
      jt["reference_probability"] = num(e.reference_probability);
    }
    terms.push_back(std::move(jt));
  }
  doc["terms"] = std::move(terms);
  doc["assembled"] = {{"e1", num(report.e1)}, {"e3", num(report.assembled_e3)}, {"e4", num(report.assembled_e4)}};
  doc["deviations"] = {{"e3", num(report.deviation_e3)}, {"e4", num(report.deviation_e4)}};
  json cs = json::array();
  for (const auto& [p, c] : report.c_values) cs.push_back({{"power", p}, {"c", num(c)}});
  doc["c_values"] = std::move(cs);
  return doc.dump(2) + "\n";
}

std::string report_csv(const PTReport& report) {
  std::ostringstream os;
  os << "term,mode,value,oracle,bias,deviation\n";
  for (const auto& row : report.terms) {
    const auto& e = row.estimate;
    os << term_name(e.term) << ',' << mode_name(e.mode) << ',' << format_number(e.value) << ','
       << format_number(row.oracle) << ',' << format_number(e.predicted_bias) << ','
       << format_number(row.deviation) << '\n';
  }
  os << "E3," << mode_name(report.config.mode) << ',' << format_number(report.assembled_e3) << ','
     << format_number(report.oracle.e3) << ",0," << format_number(report.deviation_e3) << '\n';
  os << "E4," << mode_name(report.config.mode) << ',' << format_number(report.assembled_e4) << ','
     << format_number(report.oracle.e4) << ",0," << format_number(report.deviation_e4) << '\n';
  return os.str();
}

}  // namespace ptq

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

// ptq: perturbation-theory corrections from post-selected circuits.
//
//   ptq oracle     --problem FILE [--format json|csv]
//   ptq estimate   --problem FILE [--mode M] [--ue-variant V] [--uv-backend B] [--shots S --seed K]
//   ptq verify     --problem FILE
//   ptq complexity --n 2..10 [--format json|csv] [--loglog FILE]
//   ptq circuit    --problem FILE --term NAME [--ue-variant V] [--uv-backend B]
//
// Exit codes: 0 ok, 1 verification failed, 2 configuration error,
// 3 numerical failure while computing.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptq/builders.hpp"
#include "ptq/complexity.hpp"
#include "ptq/estimator.hpp"
#include "ptq/oracle.hpp"
#include "ptq/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

struct RunConfig {
  std::string problem;
  std::string mode = "linearized";
  std::string ue_variant = "improved";
  std::string uv_backend = "exact";
  std::optional<std::size_t> shots;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  std::string n_range = "2..10";
  std::string term;
  std::string loglog;
};

void emit_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ptq::Error(ptq::ErrorKind::InvalidArgument, "cannot open output file '" + cfg.out + "'");
  f << text;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto to_int = [&](std::string_view part) {
    int v = 0;
    const auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || p != part.data() + part.size()) {
      throw ptq::Error(ptq::ErrorKind::InvalidArgument, "bad N range '" + s + "', expected A..B");
    }
    return v;
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const int n = to_int(s);
    return {n, n};
  }
  return {to_int(std::string_view(s).substr(0, dots)), to_int(std::string_view(s).substr(dots + 2))};
}

double round12(double x) { return std::stod(ptq::format_number(x)); }

std::string oracle_output(const ptq::PerturbedSystem& sys, const std::string& format) {
  const ptq::PTCorrections pt = ptq::pt_corrections(sys);
  const std::vector<std::pair<const char*, double>> fields = {
      {"e1", pt.e1},     {"e2", pt.e2},     {"e3", pt.e3},   {"e4", pt.e4},   {"eps3", pt.eps3},
      {"eps4", pt.eps4}, {"m_a", pt.m_a}, {"m_b", pt.m_b}, {"m_c", pt.m_c}};
  if (format == "csv") {
    std::ostringstream os;
    os << "quantity,value\n";
    for (const auto& [name, v] : fields) os << name << ',' << ptq::format_number(v) << '\n';
    return os.str();
  }
  json doc = json::object();
  doc["target_level"] = sys.target_level;
  for (const auto& [name, v] : fields) doc[name] = round12(v);
  return doc.dump(2) + "\n";
}

std::string cost_output(const ptq::CostReport& report, const std::string& format) {
  if (format == "csv") return ptq::cost_csv(report);
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"N", r.n},
                    {"M", r.m},
                    {"standard_ue", r.standard_ue},
                    {"improved_ue", r.improved_ue},
                    {"ratio", round12(double(r.improved_ue) / double(r.standard_ue))},
                    {"circuit_e3", r.circuit_e3},
                    {"circuit_e4", r.circuit_e4}});
  }
  return json{{"cost_model", "quadratic"}, {"rows", rows}}.dump(2) + "\n";
}

ptq::PerturbedSystem load_problem(const RunConfig& cfg) {
  if (cfg.problem.empty()) throw ptq::Error(ptq::ErrorKind::InvalidArgument, "--problem is required");
  return ptq::load_system_file(cfg.problem);
}

ptq::UvBackend backend_for(const RunConfig& cfg, const ptq::PerturbedSystem& sys) {
  const ptq::UvBackend b = ptq::parse_backend(cfg.uv_backend);
  if (b.kind == ptq::UvBackend::Kind::Trotter && sys.pauli_terms.empty()) {
    throw ptq::Error(ptq::ErrorKind::InvalidArgument, "the trotter backend needs pauli_terms in the problem file");
  }
  return b;
}

int cmd_estimate(const RunConfig& cfg) {
  const ptq::PerturbedSystem sys = load_problem(cfg);
  ptq::ReportConfig rc;
  rc.lambda = sys.lambda;
  rc.mode = ptq::parse_mode(cfg.mode);
  rc.variant = ptq::parse_variant(cfg.ue_variant);
  rc.backend = backend_for(cfg, sys);
  if (rc.mode == ptq::EstimationMode::Sampling) {
    if (!cfg.shots) throw ptq::Error(ptq::ErrorKind::InvalidArgument, "--shots is required in sampling mode");
    rc.shots = *cfg.shots;
  } else if (cfg.shots) {
    throw ptq::Error(ptq::ErrorKind::InvalidArgument, "--shots only applies to sampling mode");
  }
  rc.seed = cfg.seed;
  const ptq::PTReport rep = ptq::estimate_corrections(sys, rc, ptq::sim_options_from_env());
  write_output(cfg, cfg.format == "csv" ? ptq::report_csv(rep) : ptq::report_json(rep));
  return 0;
}

int cmd_circuit(const RunConfig& cfg) {
  const ptq::PerturbedSystem sys = load_problem(cfg);
  if (cfg.term.empty()) throw ptq::Error(ptq::ErrorKind::InvalidArgument, "--term is required");
  const ptq::TermId id = ptq::parse_term(cfg.term);
  const ptq::BuildOptions opts{ptq::parse_variant(cfg.ue_variant), backend_for(cfg, sys)};
  const ptq::TermCircuit tc = ptq::build_term_circuit(sys, id, opts);
  json doc = ptq::to_json(tc.circuit);
  doc["term"] = ptq::term_name(tc.term);
  doc["initial_index"] = tc.initial_index;
  doc["post_select_index"] = tc.post_select_index;
  doc["signal_order"] = tc.signal_order;
  doc["c_values"] = tc.c_values;
  doc["prefactor"] = {round12(tc.prefactor.real()), round12(tc.prefactor.imag())};
  write_output(cfg, doc.dump(2) + "\n");
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const ptq::PerturbedSystem sys = load_problem(cfg);
  const ptq::VerifyReport rep = ptq::verify_system(sys, ptq::sim_options_from_env());
  write_output(cfg, ptq::format_verify(rep));
  return rep.passed() ? 0 : kVerifyFailed;
}

int cmd_complexity(const RunConfig& cfg) {
  const auto [lo, hi] = parse_range(cfg.n_range);
  const ptq::CostReport report = ptq::scaling_report(lo, hi);
  if (!cfg.loglog.empty()) {
    std::ofstream f(cfg.loglog, std::ios::binary);
    if (!f) throw ptq::Error(ptq::ErrorKind::InvalidArgument, "cannot open '" + cfg.loglog + "'");
    f << ptq::cost_loglog(report);
  }
  write_output(cfg, cost_output(report, cfg.format));
  return 0;
}

int cmd_oracle(const RunConfig& cfg) {
  write_output(cfg, oracle_output(load_problem(cfg), cfg.format));
  return 0;
}

bool is_config_error(ptq::ErrorKind k) {
  return k != ptq::ErrorKind::Numerical && k != ptq::ErrorKind::Budget;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbation-theory corrections from post-selected quantum circuits"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_problem = [&](CLI::App* sub) { sub->add_option("--problem", cfg.problem, "Problem file (JSON)"); };
  auto add_output = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--out", cfg.out, "Write the artifact here instead of stdout");
    if (with_format) {
      sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    }
  };
  auto add_circuit_opts = [&](CLI::App* sub) {
    sub->add_option("--ue-variant", cfg.ue_variant, "standard or improved");
    sub->add_option("--uv-backend", cfg.uv_backend, "exact, linearized or trotter:<steps>");
  };

  CLI::App* oracle = app.add_subcommand("oracle", "Classical perturbation-theory corrections");
  add_problem(oracle);
  add_output(oracle, true);

  CLI::App* estimate = app.add_subcommand("estimate", "Estimate the corrections from term circuits");
  add_problem(estimate);
  add_output(estimate, true);
  add_circuit_opts(estimate);
  estimate->add_option("--mode", cfg.mode, "linearized, unitary or sampling");
  estimate->add_option("--shots", cfg.shots, "Shots per term (sampling mode)");
  estimate->add_option("--seed", cfg.seed, "Sampling seed");

  CLI::App* verify = app.add_subcommand("verify", "Run the invariant checks on a problem");
  add_problem(verify);
  add_output(verify, false);

  CLI::App* complexity = app.add_subcommand("complexity", "Gate-count scaling of the U_E variants");
  complexity->add_option("--n", cfg.n_range, "System sizes, e.g. 2..10");
  complexity->add_option("--loglog", cfg.loglog, "Also write log10 columns for plotting to this file");
  add_output(complexity, true);
  complexity->callback([&] {
    if (complexity->count("--format") == 0) cfg.format = "csv";
  });

  CLI::App* circuit = app.add_subcommand("circuit", "Serialize one term circuit");
  add_problem(circuit);
  add_output(circuit, false);
  add_circuit_opts(circuit);
  circuit->add_option("--term", cfg.term, "eps3, eps4, m_a, m_b, m_c, e2, state1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return kConfigError;
  }

  try {
    if (*oracle) return cmd_oracle(cfg);
    if (*estimate) return cmd_estimate(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*complexity) return cmd_complexity(cfg);
    if (*circuit) return cmd_circuit(cfg);
  } catch (const ptq::Error& e) {
    emit_error(ptq::to_string(e.kind()), e.what());
    return is_config_error(e.kind()) ? kConfigError : kRuntimeError;
  } catch (const nlohmann::json::exception& e) {
    emit_error("parse", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return kRuntimeError;
  }
  return kConfigError;
}

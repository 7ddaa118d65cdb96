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

#include "ptq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "ptq/builders.hpp"
#include "ptq/estimator.hpp"
#include "ptq/oracle.hpp"
#include "ptq/random_system.hpp"
#include "ptq/synthesis.hpp"

namespace ptq {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool close_relative(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(b), 1.0);
}

namespace {

double rel_dev(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1.0); }

constexpr int kUeActionMaxQubits = 8;

/// Base coupling for the asymptotic checks: small against the gaps.
double asymptotic_lambda(const PerturbedSystem& sys) {
  const double vn = spectral_norm(sys.perturbation);
  const double g = min_pairwise_gap(sys.energies);
  double lam = sys.lambda > 0.0 ? std::min(sys.lambda, 1e-2) : 1e-2;
  if (vn > 0.0) lam *= std::min(1.0, g / vn);
  return lam;
}

CheckResult check_oracle_real(const PTCorrections& pt) {
  CheckResult c{"oracle.real", false, pt.max_imag_residue, 0.0, ""};
  const double scale = std::max({1.0, std::abs(pt.eps3), std::abs(pt.eps4), std::abs(pt.m_a)});
  c.tolerance = 1e-12 * scale;
  c.passed = c.worst <= c.tolerance;
  return c;
}

CheckResult check_generic_sum(const PerturbedSystem& sys, const PTCorrections& pt) {
  CheckResult c{"oracle.generic_sum", true, 0.0, 1e-10, ""};
  try {
    c.worst = std::max({rel_dev(epsilon_m(sys, 2), pt.e2), rel_dev(epsilon_m(sys, 3), pt.eps3),
                        rel_dev(epsilon_m(sys, 4), pt.eps4)});
    c.passed = c.worst <= c.tolerance;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Budget) throw;
    c.detail = "skipped: enumeration budget";
  }
  return c;
}

CheckResult check_compensated(const PerturbedSystem& sys, const PTCorrections& pt) {
  const PTCorrections k = pt_corrections(sys, Summation::Compensated);
  CheckResult c{"oracle.compensated", false, 0.0, 1e-10, ""};
  c.worst = std::max({rel_dev(pt.e2, k.e2), rel_dev(pt.e3, k.e3), rel_dev(pt.e4, k.e4), rel_dev(pt.m_a, k.m_a),
                      rel_dev(pt.m_b, k.m_b), rel_dev(pt.m_c, k.m_c)});
  c.passed = c.worst <= c.tolerance;
  return c;
}

Circuit ue_circuit(const PerturbedSystem& sys, int power, UeVariant variant) {
  Circuit circ(RegisterLayout{sys.n_qubits, {"q'1"}});
  circ.append(build_ue(sys, sys.target_level, power, variant, sys.n_qubits));
  return circ;
}

CheckResult check_ue_action(const PerturbedSystem& sys, const SimOptions& sim) {
  CheckResult c{"ue.action", true, 0.0, 1e-12, ""};
  if (sys.n_qubits > kUeActionMaxQubits) {
    c.detail = "skipped: register too large";
    return c;
  }
  const int n = sys.target_level;
  for (int p = 1; p <= 3; ++p) {
    const double cp = select_c(sys, n, p);
    for (UeVariant variant : {UeVariant::Standard, UeVariant::Improved}) {
      const Circuit circ = ue_circuit(sys, p, variant);
      for (std::size_t k = 0; k < sys.dimension(); ++k) {
        const StateVector out = run(circ, basis_index(sys.n_qubits, k, 0), sim).state;
        const double one = static_cast<int>(k) == n ? 0.0 : cp / std::pow(sys.gap(k), p);
        const double zero = std::sqrt(1.0 - one * one);
        for (std::size_t i = 0; i < out.size(); ++i) {
          Complex want{0.0, 0.0};
          if (i == basis_index(sys.n_qubits, k, 0)) want = zero;
          if (i == basis_index(sys.n_qubits, k, 1)) want = one;
          c.worst = std::max(c.worst, std::abs(out[i] - want));
        }
      }
    }
  }
  c.passed = c.worst <= c.tolerance;
  return c;
}

CheckResult check_ue_equivalence(const PerturbedSystem& sys, const SimOptions& sim) {
  CheckResult c{"ue.equivalence", true, 0.0, 1e-12, ""};
  if (sys.n_qubits > kDenseCheckMaxQubits) {
    c.detail = "skipped: register too large";
    return c;
  }
  for (int p = 1; p <= 3; ++p) {
    const Matrix a = dense_matrix(ue_circuit(sys, p, UeVariant::Standard), sim);
    const Matrix b = dense_matrix(ue_circuit(sys, p, UeVariant::Improved), sim);
    c.worst = std::max(c.worst, max_abs(a - b));
    c.worst = std::max(c.worst, solve_alpha(theta_angles(sys, sys.target_level, p)).max_residual);
  }
  c.passed = c.worst <= c.tolerance;
  return c;
}

std::vector<TermId> scalar_terms() { return energy_terms(); }

CheckResult check_circuits(const PerturbedSystem& sys) {
  CheckResult c{"circuit.wellformed", true, 0.0, 1e-10, ""};
  std::vector<TermId> ids = scalar_terms();
  ids.push_back(TermId::of(TermKind::State1));
  for (const auto& id : ids) {
    for (UeVariant variant : {UeVariant::Standard, UeVariant::Improved}) {
      const TermCircuit tc = build_term_circuit(sys, id, {variant, UvBackend::exact()});
      for (const auto& v : validate(tc.circuit)) {
        c.passed = false;
        c.worst = std::max(c.worst, v.deviation);
        c.detail = term_name(id) + ": " + v.message;
      }
      const Circuit back = parse_circuit(serialize_circuit(tc.circuit));
      if (serialize_circuit(back) != serialize_circuit(tc.circuit)) {
        c.passed = false;
        c.detail = term_name(id) + ": serialization round trip differs";
      }
    }
  }
  return c;
}

CheckResult check_probability_identity(const PerturbedSystem& sys, const SimOptions& sim) {
  CheckResult c{"probability.identity", false, 0.0, 1e-12, ""};
  const Matrix uv = build_uv(sys, UvBackend::exact()).matrix;
  for (const auto& id : scalar_terms()) {
    const TermCircuit tc = build_term_circuit(sys, id, {UeVariant::Improved, UvBackend::exact()});
    const Complex sim_amp = post_selected_amplitude(tc, sim);
    const Complex direct = chain_amplitude(sys, id, uv, tc.c_values);
    c.worst = std::max(c.worst, std::abs(std::norm(sim_amp) - std::norm(direct)));
    c.worst = std::max(c.worst, std::abs(sim_amp - direct));
  }
  c.passed = c.worst <= c.tolerance;
  return c;
}

CheckResult check_norm(const PerturbedSystem& sys, const SimOptions& sim) {
  CheckResult c{"sim.norm", false, 0.0, 1e-12, ""};
  for (const auto& id : scalar_terms()) {
    const TermCircuit tc = build_term_circuit(sys, id, {UeVariant::Improved, UvBackend::exact()});
    c.worst = std::max(c.worst, std::abs(run(tc.circuit, tc.initial_index, sim).state.norm() - 1.0));
  }
  c.passed = c.worst <= c.tolerance;
  return c;
}

CheckResult check_linearized(const PerturbedSystem& sys, const PTCorrections& pt, const SimOptions& sim) {
  CheckResult c{"estimate.linearized", false, 0.0, 1e-9, ""};
  ReportConfig cfg;
  cfg.lambda = sys.lambda > 0.0 ? sys.lambda : 1e-2;
  cfg.mode = EstimationMode::Linearized;
  cfg.backend = UvBackend::linearized();
  const PTReport rep = estimate_corrections(sys.with_lambda(cfg.lambda), cfg, sim);
  for (const auto& row : rep.terms) {
    const double d = rel_dev(row.estimate.value, row.oracle);
    if (d > c.worst) {
      c.worst = d;
      c.detail = "worst term " + term_name(row.estimate.term);
    }
  }
  c.worst = std::max({c.worst, rel_dev(rep.assembled_e3, pt.e3), rel_dev(rep.assembled_e4, pt.e4)});
  c.passed = c.worst <= c.tolerance;
  return c;
}

CheckResult check_first_order_state(const PerturbedSystem& sys, const SimOptions& sim) {
  CheckResult c{"state.first_order", false, 0.0, 1e-10, ""};
  const auto want = first_order_coefficients(sys);
  for (const auto& [k, got] : first_order_state(sys, UeVariant::Improved, sim)) {
    c.worst = std::max(c.worst, std::abs(got - want[k]) / std::max(std::abs(want[k]), 1.0));
  }
  c.passed = c.worst <= c.tolerance;
  return c;
}

CheckResult check_taylor(const PerturbedSystem& sys, const PTCorrections& pt) {
  CheckResult c{"oracle.taylor_closure", false, 0.0, 24.0, ""};
  const auto n = static_cast<std::size_t>(sys.target_level);
  const double lam = asymptotic_lambda(sys);
  auto residual = [&](double l) {
    const double series = sys.energies[n] + l * (pt.e1 + l * (pt.e2 + l * (pt.e3 + l * pt.e4)));
    return std::abs(exact_spectrum(sys.with_lambda(l))[n] - series);
  };
  const double r1 = residual(lam);
  const double r2 = residual(lam / 2);
  const double floor = 1e-13 * std::max(1.0, std::abs(sys.energies[n]));
  c.worst = r2 > 0.0 ? r1 / r2 : INFINITY;
  c.passed = r2 <= floor || c.worst >= c.tolerance;
  std::ostringstream os;
  os << "lambda " << format_number(lam) << " residuals " << format_number(r1) << ", " << format_number(r2);
  c.detail = os.str();
  return c;
}

CheckResult check_bias_law(const PerturbedSystem& sys, const PTCorrections& pt, const SimOptions& sim) {
  CheckResult c{"estimate.unitary_bias", true, INFINITY, 3.0, ""};
  const double lam = asymptotic_lambda(sys);
  for (const TermId id : {TermId::eps(3), TermId::of(TermKind::E2)}) {
    const double oracle = term_value(pt, sys, id);
    std::vector<double> res;
    for (double l : {lam, lam / 2, lam / 4}) {
      const PerturbedSystem at = sys.with_lambda(l);
      const TermCircuit tc = build_term_circuit(at, id, {UeVariant::Improved, UvBackend::exact()});
      const TermEstimate est = extract_term_unitary(at, tc, sim);
      res.push_back(std::abs(est.value - oracle - est.predicted_bias));
    }
    const double floor = 1e-9 * std::max(std::abs(oracle), 1.0);
    for (std::size_t j = 1; j < res.size(); ++j) {
      if (res[j] <= floor) continue;
      const double ratio = res[j - 1] / res[j];
      c.worst = std::min(c.worst, ratio);
      if (ratio < c.tolerance) {
        c.passed = false;
        c.detail = term_name(id) + " residual shrinks too slowly";
      }
    }
  }
  return c;
}

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return CheckResult{name, false, 0.0, 0.0, std::string("error: ") + e.what()};
  }
}

}  // namespace

VerifyReport verify_system(const PerturbedSystem& sys, const SimOptions& sim) {
  VerifyReport report;
  report.checks.push_back(guarded("system.valid", [&] {
    validate_system(sys);
    return CheckResult{"system.valid", true, 0.0, 0.0, ""};
  }));
  if (!report.checks.back().passed) return report;

  const PTCorrections pt = pt_corrections(sys);
  report.checks.push_back(guarded("oracle.real", [&] { return check_oracle_real(pt); }));
  report.checks.push_back(guarded("oracle.generic_sum", [&] { return check_generic_sum(sys, pt); }));
  report.checks.push_back(guarded("oracle.compensated", [&] { return check_compensated(sys, pt); }));
  report.checks.push_back(guarded("oracle.taylor_closure", [&] { return check_taylor(sys, pt); }));
  report.checks.push_back(guarded("ue.action", [&] { return check_ue_action(sys, sim); }));
  report.checks.push_back(guarded("ue.equivalence", [&] { return check_ue_equivalence(sys, sim); }));
  report.checks.push_back(guarded("circuit.wellformed", [&] { return check_circuits(sys); }));
  report.checks.push_back(guarded("sim.norm", [&] { return check_norm(sys, sim); }));
  report.checks.push_back(guarded("probability.identity", [&] { return check_probability_identity(sys, sim); }));
  report.checks.push_back(guarded("estimate.linearized", [&] { return check_linearized(sys, pt, sim); }));
  report.checks.push_back(guarded("estimate.unitary_bias", [&] { return check_bias_law(sys, pt, sim); }));
  report.checks.push_back(guarded("state.first_order", [&] { return check_first_order_state(sys, sim); }));
  return report;
}

std::string format_verify(const VerifyReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ' ' << format_number(c.worst) << ' '
       << format_number(c.tolerance);
    if (!c.detail.empty()) os << ' ' << c.detail;
    os << '\n';
  }
  return os.str();
}

}  // namespace ptq

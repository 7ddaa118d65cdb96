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

#include "ptq/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace ptq {

std::string backend_name(const UvBackend& b) {
  switch (b.kind) {
    case UvBackend::Kind::Exact: return "exact";
    case UvBackend::Kind::Linearized: return "linearized";
    case UvBackend::Kind::Trotter: return "trotter:" + std::to_string(b.trotter_steps);
  }
  return "?";
}

UvBackend parse_backend(std::string_view s) {
  if (s == "exact") return UvBackend::exact();
  if (s == "linearized") return UvBackend::linearized();
  if (s.starts_with("trotter:")) {
    const auto rest = s.substr(8);
    int r = 0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), r);
    if (ec == std::errc{} && ptr == rest.data() + rest.size() && r >= 1) return UvBackend::trotter(r);
  }
  throw Error(ErrorKind::InvalidArgument,
              "unknown U_V backend '" + std::string(s) + "' (expected exact, linearized or trotter:<r>)");
}

std::string variant_name(UeVariant v) { return v == UeVariant::Standard ? "standard" : "improved"; }

UeVariant parse_variant(std::string_view s) {
  if (s == "standard") return UeVariant::Standard;
  if (s == "improved") return UeVariant::Improved;
  throw Error(ErrorKind::InvalidArgument, "unknown U_E variant '" + std::string(s) + "'");
}

double select_c(const PerturbedSystem& sys, int level, int power) {
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < sys.dimension(); ++k) {
    if (static_cast<int>(k) == level) continue;
    c = std::min(c, std::pow(std::abs(sys.gap(static_cast<std::size_t>(level), k)), power));
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::Degenerate, "no admissible C: degenerate or single-level spectrum");
  }
  return c;
}

ThetaTable theta_angles(const PerturbedSystem& sys, int level, int power) {
  ThetaTable t;
  t.level = level;
  t.power = power;
  t.c = select_c(sys, level, power);
  t.thetas.assign(sys.dimension(), 0.0);
  for (std::size_t k = 0; k < sys.dimension(); ++k) {
    if (static_cast<int>(k) == level) continue;
    const double ratio = t.c / std::pow(sys.gap(static_cast<std::size_t>(level), k), power);
    // |ratio| <= 1 holds by construction of C; guard the rounding at the boundary.
    if (std::abs(ratio) > 1.0 + 1e-15) {
      throw Error(ErrorKind::Numerical, "|C / E_nk^p| exceeds 1");
    }
    t.thetas[k] = 2.0 * std::asin(std::clamp(ratio, -1.0, 1.0));
  }
  return t;
}

std::vector<double> subset_sums(std::vector<double> values) {
  const std::size_t m = values.size();
  for (std::size_t b = 1; b < m; b <<= 1) {
    for (std::size_t x = 0; x < m; ++x) {
      if (x & b) values[x] += values[x ^ b];
    }
  }
  return values;
}

AlphaTable solve_alpha(const std::vector<double>& thetas) {
  const std::size_t m = thetas.size();
  if (m == 0 || !std::has_single_bit(m)) {
    throw Error(ErrorKind::InvalidArgument, "theta table size must be a power of two");
  }
  AlphaTable out;
  out.alphas = thetas;
  for (std::size_t b = 1; b < m; b <<= 1) {
    for (std::size_t x = 0; x < m; ++x) {
      if (x & b) out.alphas[x] -= out.alphas[x ^ b];
    }
  }

  // Post-hoc check by explicit submask enumeration, independent of the
  // in-place lattice pass above. Falls back to the zeta pass for large M.
  double l1 = 0.0;
  for (double a : out.alphas) l1 += std::abs(a);
  if (m <= 4096) {
    for (std::size_t x = 0; x < m; ++x) {
      double sum = out.alphas[0];
      for (std::size_t y = x; y != 0; y = (y - 1) & x) sum += out.alphas[y];
      out.max_residual = std::max(out.max_residual, std::abs(sum - thetas[x]));
    }
  } else {
    const auto sums = subset_sums(out.alphas);
    for (std::size_t x = 0; x < m; ++x) {
      out.max_residual = std::max(out.max_residual, std::abs(sums[x] - thetas[x]));
    }
  }
  const double tol = std::max(1e-12, 4.0 * std::numeric_limits<double>::epsilon() * l1);
  if (out.max_residual > tol) {
    std::ostringstream os;
    os << "alpha constraint residual " << out.max_residual << " exceeds " << tol;
    throw Error(ErrorKind::Numerical, os.str());
  }
  return out;
}

AlphaTable solve_alpha(const ThetaTable& thetas) { return solve_alpha(thetas.thetas); }

std::vector<Gate> build_ue(const PerturbedSystem& sys, int level, int power, UeVariant variant,
                           int target) {
  const ThetaTable theta = theta_angles(sys, level, power);
  const std::uint64_t system_mask = (std::uint64_t{1} << sys.n_qubits) - 1;
  std::vector<Gate> gates;
  gates.reserve(sys.dimension());
  if (variant == UeVariant::Standard) {
    for (std::size_t k = 0; k < sys.dimension(); ++k) {
      gates.push_back(Gate::controlled_ry(target, theta.thetas[k], system_mask, k));
      gates.back().label = "U_E^" + std::to_string(power);
    }
    return gates;
  }
  const AlphaTable alpha = solve_alpha(theta);
  for (std::size_t x = 0; x < sys.dimension(); ++x) {
    gates.push_back(x == 0 ? Gate::ry(target, alpha.alphas[0])
                           : Gate::controlled_ry(target, alpha.alphas[x], x));
    gates.back().label = "U_E^" + std::to_string(power);
  }
  return gates;
}

Matrix hermitian_exponential(const Matrix& v, double t) {
  const Eigen::Index dim = v.rows();
  const double norm1 = v.size() == 0 ? 0.0 : v.cwiseAbs().colwise().sum().maxCoeff();
  if (std::abs(t) * norm1 <= 1.0) {
    // Taylor series for small |t| * ||V||_1.
    Matrix out = Matrix::Identity(dim, dim);
    Matrix term = Matrix::Identity(dim, dim);
    for (int d = 1; d < 60; ++d) {
      term = (kI * (t / d)) * (term * v);
      out += term;
      if (max_abs(term) < 1e-20) break;
    }
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(v);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Numerical, "eigen-solver failed in exp(iV)");
  Vector phases(dim);
  for (Eigen::Index k = 0; k < dim; ++k) phases(k) = std::exp(kI * (t * solver.eigenvalues()(k)));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix trotter_unitary(const std::vector<PauliTerm>& terms, int n_qubits, double lambda, int steps) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "trotter steps must be >= 1");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Matrix step = Matrix::Identity(dim, dim);
  for (const auto& t : terms) {
    const double phi = lambda * t.coefficient / steps;
    const Matrix factor = std::cos(phi) * Matrix::Identity(dim, dim) +
                          (kI * std::sin(phi)) * pauli_matrix(t.string, n_qubits);
    step = step * factor;
  }
  Matrix out = Matrix::Identity(dim, dim);
  int e = steps;
  while (e > 0) {
    if (e & 1) out = out * step;
    e >>= 1;
    if (e > 0) step = step * step;
  }
  return out;
}

Gate build_uv(const PerturbedSystem& sys, const UvBackend& backend) {
  const Eigen::Index dim = static_cast<Eigen::Index>(sys.dimension());
  switch (backend.kind) {
    case UvBackend::Kind::Exact:
      return Gate::system_unitary(hermitian_exponential(sys.perturbation, sys.lambda), true, "U_V");
    case UvBackend::Kind::Trotter:
      if (sys.pauli_terms.empty()) {
        throw Error(ErrorKind::InvalidArgument, "trotter backend requires pauli_terms");
      }
      return Gate::system_unitary(
          trotter_unitary(sys.pauli_terms, sys.n_qubits, sys.lambda, backend.trotter_steps), true, "U_V");
    case UvBackend::Kind::Linearized:
      return Gate::system_unitary(Matrix::Identity(dim, dim) + (kI * sys.lambda) * sys.perturbation,
                                  false, "U_V");
  }
  throw Error(ErrorKind::InvalidArgument, "unknown backend");
}

}  // namespace ptq

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

#include "ptq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace ptq {

namespace {

/// Neumaier summation on each of the real and imaginary parts.
class Accumulator {
 public:
  explicit Accumulator(Summation mode) : compensated_(mode == Summation::Compensated) {}

  void add(Complex x) {
    if (!compensated_) {
      sum_ += x;
      return;
    }
    add_part(re_, re_c_, x.real());
    add_part(im_, im_c_, x.imag());
  }

  [[nodiscard]] Complex value() const {
    return compensated_ ? Complex{re_ + re_c_, im_ + im_c_} : sum_;
  }

 private:
  static void add_part(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }

  bool compensated_;
  Complex sum_{0.0, 0.0};
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

std::vector<std::size_t> off_target_levels(const PerturbedSystem& sys) {
  std::vector<std::size_t> ks;
  for (std::size_t k = 0; k < sys.dimension(); ++k) {
    if (static_cast<int>(k) != sys.target_level) ks.push_back(k);
  }
  return ks;
}

double real_part(Complex z, double& residue) {
  residue = std::max(residue, std::abs(z.imag()));
  return z.real();
}

}  // namespace

PTCorrections pt_corrections(const PerturbedSystem& sys, Summation mode) {
  const auto n = static_cast<std::size_t>(sys.target_level);
  const auto ks = off_target_levels(sys);
  PTCorrections out;

  out.e1 = real_part(sys.v(n, n), out.max_imag_residue);

  Accumulator e2(mode), mb(mode), mc(mode);
  for (std::size_t k : ks) {
    const double w = std::norm(sys.v(n, k));
    const double g = sys.gap(k);
    e2.add(w / g);
    mb.add(w / (g * g));
    mc.add(w / (g * g * g));
  }
  out.e2 = e2.value().real();
  out.m_b = mb.value().real();
  out.m_c = mc.value().real();

  Accumulator eps3(mode), ma(mode);
  for (std::size_t k2 : ks) {
    for (std::size_t k1 : ks) {
      const Complex path = sys.v(n, k2) * sys.v(k2, k1) * sys.v(k1, n);
      eps3.add(path / (sys.gap(k1) * sys.gap(k2)));
      // m_a: V_{n k3} V_{k3 k2} V_{k2 n} / (E_{n k2}^2 E_{n k3}) with k3 -> k2, k2 -> k1.
      ma.add(path / (sys.gap(k1) * sys.gap(k1) * sys.gap(k2)));
    }
  }
  out.eps3 = real_part(eps3.value(), out.max_imag_residue);
  out.m_a = ma.value().real();

  Accumulator eps4(mode);
  for (std::size_t k3 : ks) {
    for (std::size_t k2 : ks) {
      const Complex outer = sys.v(n, k3) * sys.v(k3, k2) / (sys.gap(k3) * sys.gap(k2));
      for (std::size_t k1 : ks) {
        eps4.add(outer * sys.v(k2, k1) * sys.v(k1, n) / sys.gap(k1));
      }
    }
  }
  out.eps4 = real_part(eps4.value(), out.max_imag_residue);

  out.e3 = out.eps3 - out.e1 * out.m_b;
  out.e4 = out.eps4 - out.m_b * out.e2 - 2.0 * out.e1 * out.m_a + out.e1 * out.e1 * out.m_c;
  return out;
}

double correction(const PerturbedSystem& sys, int order, Summation mode) {
  const PTCorrections pt = pt_corrections(sys, mode);
  switch (order) {
    case 1: return pt.e1;
    case 2: return pt.e2;
    case 3: return pt.e3;
    case 4: return pt.e4;
    default: throw Error(ErrorKind::InvalidArgument, "correction order must be in 1..4");
  }
}

double term_value(const PTCorrections& pt, const PerturbedSystem& sys, const TermId& id) {
  switch (id.kind) {
    case TermKind::Eps:
      if (id.order == 2) return pt.e2;
      if (id.order == 3) return pt.eps3;
      if (id.order == 4) return pt.eps4;
      return epsilon_m(sys, id.order);
    case TermKind::MA: return pt.m_a;
    case TermKind::MB: return pt.m_b;
    case TermKind::MC: return pt.m_c;
    case TermKind::E2: return pt.e2;
    case TermKind::State1: break;
  }
  throw Error(ErrorKind::InvalidArgument, "state1 has no scalar oracle value");
}

double term_value(const PerturbedSystem& sys, const TermId& id) {
  return term_value(pt_corrections(sys), sys, id);
}

double epsilon_m(const PerturbedSystem& sys, int m, std::size_t budget) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "epsilon_m requires m >= 2");
  const auto n = static_cast<std::size_t>(sys.target_level);
  const auto ks = off_target_levels(sys);
  const auto depth = static_cast<std::size_t>(m - 1);
  if (ks.empty()) return 0.0;

  double paths = 1.0;
  for (std::size_t j = 0; j < depth; ++j) paths *= static_cast<double>(ks.size());
  if (paths > static_cast<double>(budget)) {
    std::ostringstream os;
    os << "epsilon_m: " << paths << " index tuples exceed the budget of " << budget;
    throw Error(ErrorKind::Budget, os.str());
  }

  // Odometer over (k_1, ..., k_{m-1}).
  std::vector<std::size_t> digit(depth, 0);
  Complex sum{0.0, 0.0};
  while (true) {
    Complex term = sys.v(ks[digit[0]], n) / sys.gap(ks[digit[0]]);
    for (std::size_t j = 1; j < depth; ++j) {
      const std::size_t from = ks[digit[j - 1]];
      const std::size_t to = ks[digit[j]];
      term *= sys.v(to, from) / sys.gap(to);
    }
    term *= sys.v(n, ks[digit[depth - 1]]);
    sum += term;

    std::size_t j = 0;
    while (j < depth && ++digit[j] == ks.size()) digit[j++] = 0;
    if (j == depth) break;
  }
  return sum.real();
}

std::vector<double> exact_spectrum(const PerturbedSystem& sys) {
  const auto dim = static_cast<Eigen::Index>(sys.dimension());
  Matrix h = sys.lambda * sys.perturbation;
  for (Eigen::Index k = 0; k < dim; ++k) h(k, k) += sys.energies[static_cast<std::size_t>(k)];
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Numerical, "eigen-solver failed");

  std::vector<double> out(sys.dimension(), std::numeric_limits<double>::quiet_NaN());
  std::vector<bool> taken(sys.dimension(), false);
  for (Eigen::Index j = 0; j < dim; ++j) {
    Eigen::Index best = 0;
    const double overlap = solver.eigenvectors().col(j).cwiseAbs2().maxCoeff(&best);
    if (overlap < 0.5 || taken[static_cast<std::size_t>(best)]) {
      std::ostringstream os;
      os << "cannot match perturbed eigenvector " << j << " to an unperturbed level (overlap "
         << overlap << "); lambda is too large for perturbative matching";
      throw Error(ErrorKind::Numerical, os.str());
    }
    taken[static_cast<std::size_t>(best)] = true;
    out[static_cast<std::size_t>(best)] = solver.eigenvalues()(j);
  }
  return out;
}

std::vector<Complex> first_order_coefficients(const PerturbedSystem& sys) {
  std::vector<Complex> out(sys.dimension(), Complex{0.0, 0.0});
  const auto n = static_cast<std::size_t>(sys.target_level);
  for (std::size_t k : off_target_levels(sys)) out[k] = sys.v(k, n) / sys.gap(k);
  return out;
}

namespace {

MatrixSeries matrix_power(MatrixSeries base, int exponent) {
  MatrixSeries result = MatrixSeries::identity(base.dim(), base.degree());
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Vector inverse_gap_diagonal(const PerturbedSystem& sys, int power, double scale) {
  Vector d = Vector::Zero(static_cast<Eigen::Index>(sys.dimension()));
  for (std::size_t k = 0; k < sys.dimension(); ++k) {
    if (static_cast<int>(k) == sys.target_level) continue;
    d(static_cast<Eigen::Index>(k)) = scale / std::pow(sys.gap(k), power);
  }
  return d;
}

void require_scalar_term(const TermId& id) {
  if (id.kind == TermKind::State1) {
    throw Error(ErrorKind::InvalidArgument, "state1 has no single post-selected amplitude");
  }
}

}  // namespace

MatrixSeries uv_series(const PerturbedSystem& sys, const UvBackend& backend, int degree) {
  const auto dim = static_cast<Eigen::Index>(sys.dimension());
  switch (backend.kind) {
    case UvBackend::Kind::Exact: return MatrixSeries::exp_i(sys.perturbation, degree);
    case UvBackend::Kind::Linearized: return MatrixSeries::linear_i(sys.perturbation, degree);
    case UvBackend::Kind::Trotter: {
      if (sys.pauli_terms.empty()) {
        throw Error(ErrorKind::InvalidArgument, "trotter backend requires pauli_terms");
      }
      const double r = static_cast<double>(backend.trotter_steps);
      MatrixSeries step = MatrixSeries::identity(dim, degree);
      for (const auto& t : sys.pauli_terms) {
        // exp(i a lambda P) = cos(a lambda) I + i sin(a lambda) P
        const double a = t.coefficient / r;
        const Matrix p = pauli_matrix(t.string, sys.n_qubits);
        MatrixSeries factor(dim, degree);
        double ad = 1.0;
        double fact = 1.0;
        for (int d = 0; d <= degree; ++d) {
          if (d > 0) {
            ad *= a;
            fact *= d;
          }
          const double c = ad / fact;
          switch (d % 4) {
            case 0: factor[d] = c * Matrix::Identity(dim, dim); break;
            case 1: factor[d] = (kI * c) * p; break;
            case 2: factor[d] = -c * Matrix::Identity(dim, dim); break;
            case 3: factor[d] = (-kI * c) * p; break;
          }
        }
        step = step * factor;
      }
      return matrix_power(step, backend.trotter_steps);
    }
  }
  return MatrixSeries::identity(dim, degree);
}

std::vector<Complex> post_selected_series(const PerturbedSystem& sys, const TermId& id,
                                          const MatrixSeries& uv) {
  require_scalar_term(id);
  const auto n = static_cast<Eigen::Index>(sys.target_level);
  VectorSeries v = VectorSeries::basis(static_cast<Eigen::Index>(sys.dimension()), n, uv.degree());
  v = uv * v;
  for (int p : gap_powers(id)) {
    v.scale(inverse_gap_diagonal(sys, p, 1.0));
    v = uv * v;
  }
  return v.component(n);
}

Complex chain_amplitude(const PerturbedSystem& sys, const TermId& id, const Matrix& uv,
                        const std::vector<double>& c_values) {
  require_scalar_term(id);
  const auto powers = gap_powers(id);
  if (c_values.size() != powers.size()) {
    throw Error(ErrorKind::InvalidArgument, "one C constant per U_E layer is required");
  }
  const auto n = static_cast<Eigen::Index>(sys.target_level);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(sys.dimension()));
  v(n) = 1.0;
  v = uv * v;
  for (std::size_t j = 0; j < powers.size(); ++j) {
    v = v.cwiseProduct(inverse_gap_diagonal(sys, powers[j], c_values[j]));
    v = uv * v;
  }
  return v(n);
}

double uv_series_bias(const PerturbedSystem& sys, const TermId& id, const UvBackend& backend,
                      int degree) {
  require_scalar_term(id);
  const int s = signal_order(id);
  const int d = std::max(degree, s);
  const auto full = post_selected_series(sys, id, uv_series(sys, backend, d));
  const auto linear = post_selected_series(sys, id, MatrixSeries::linear_i(sys.perturbation, d));
  const Complex phase = i_pow(s);
  const auto idx = static_cast<std::size_t>(s);
  return ((full[idx] - linear[idx]) / phase).real();
}

}  // namespace ptq

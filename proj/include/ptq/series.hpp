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
 * Matrix- and vector-valued power series in lambda, truncated at a fixed
 * degree. Coefficient d multiplies lambda^d.
 */

#pragma once

#include <cstddef>
#include <vector>

#include "ptq/types.hpp"

namespace ptq {

class VectorSeries;

class MatrixSeries {
 public:
  MatrixSeries(Eigen::Index dim, int degree)
      : coeffs_(static_cast<std::size_t>(degree + 1), Matrix::Zero(dim, dim)) {}

  static MatrixSeries identity(Eigen::Index dim, int degree) {
    MatrixSeries s(dim, degree);
    s.coeffs_[0] = Matrix::Identity(dim, dim);
    return s;
  }

  /// exp(i lambda A) truncated at the series degree.
  static MatrixSeries exp_i(const Matrix& a, int degree) {
    MatrixSeries s = identity(a.rows(), degree);
    Matrix term = Matrix::Identity(a.rows(), a.cols());
    for (int d = 1; d <= degree; ++d) {
      term = (kI / static_cast<double>(d)) * (term * a);
      s.coeffs_[static_cast<std::size_t>(d)] = term;
    }
    return s;
  }

  /// I + i lambda A.
  static MatrixSeries linear_i(const Matrix& a, int degree) {
    MatrixSeries s = identity(a.rows(), degree);
    if (degree >= 1) s.coeffs_[1] = kI * a;
    return s;
  }

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] Eigen::Index dim() const { return coeffs_[0].rows(); }
  [[nodiscard]] const Matrix& operator[](int d) const { return coeffs_[static_cast<std::size_t>(d)]; }
  Matrix& operator[](int d) { return coeffs_[static_cast<std::size_t>(d)]; }

  friend MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b) {
    MatrixSeries out(a.dim(), a.degree());
    for (int i = 0; i <= a.degree(); ++i) {
      for (int j = 0; i + j <= a.degree(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }

  friend VectorSeries operator*(const MatrixSeries& a, const VectorSeries& v);

 private:
  std::vector<Matrix> coeffs_;
};

class VectorSeries {
 public:
  VectorSeries(Eigen::Index dim, int degree)
      : coeffs_(static_cast<std::size_t>(degree + 1), Vector::Zero(dim)) {}

  static VectorSeries basis(Eigen::Index dim, Eigen::Index index, int degree) {
    VectorSeries s(dim, degree);
    s.coeffs_[0](index) = 1.0;
    return s;
  }

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] Eigen::Index dim() const { return coeffs_[0].size(); }
  [[nodiscard]] const Vector& operator[](int d) const { return coeffs_[static_cast<std::size_t>(d)]; }
  Vector& operator[](int d) { return coeffs_[static_cast<std::size_t>(d)]; }

  /// Elementwise scaling by a lambda-independent diagonal.
  void scale(const Vector& diag) {
    for (auto& c : coeffs_) c = c.cwiseProduct(diag);
  }

  /// Series of a single component.
  [[nodiscard]] std::vector<Complex> component(Eigen::Index index) const {
    std::vector<Complex> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c(index));
    return out;
  }

 private:
  std::vector<Vector> coeffs_;
};

inline VectorSeries operator*(const MatrixSeries& a, const VectorSeries& v) {
  VectorSeries out(v.dim(), a.degree());
  for (int i = 0; i <= a.degree(); ++i) {
    for (int j = 0; i + j <= a.degree() && j <= v.degree(); ++j) out[i + j] += a[i] * v[j];
  }
  return out;
}

}  // namespace ptq

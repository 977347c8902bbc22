// Copyright 2026 The ncdyn Authors
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

#include "ncdyn/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncdyn/error.hpp"
#include "ncdyn/rng.hpp"

namespace ncdyn {

double operator_norm(const Matrix &m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix &m) {
  Matrix h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Channel Channel::from_kraus(std::size_t d, std::vector<Matrix> kraus, double tol_cp) {
  if (kraus.empty()) throw Error(ErrorCode::ShapeMismatch, "Kraus family is empty");
  const auto n = static_cast<Eigen::Index>(d);
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    if (kraus[i].rows() != n || kraus[i].cols() != n) {
      throw Error(ErrorCode::ShapeMismatch,
                  "Kraus operator " + std::to_string(i) + " is " +
                      std::to_string(kraus[i].rows()) + "x" +
                      std::to_string(kraus[i].cols()) + ", expected " +
                      std::to_string(d) + "x" + std::to_string(d));
    }
  }
  Matrix unit = Matrix::Zero(n, n);
  for (const auto &v : kraus) unit += v.adjoint() * v;
  const double top = hermitian_eigenvalues(unit).maxCoeff();
  if (top > 1.0 + tol_cp) {
    throw Error(ErrorCode::NotContractive,
                "largest eigenvalue of sum V*V is " + std::to_string(top));
  }
  return Channel(d, std::move(kraus), tol_cp, std::move(unit));
}

void Channel::check_argument(const Matrix &a) const {
  const auto n = static_cast<Eigen::Index>(d_);
  if (a.rows() != n || a.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch,
                "argument is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    ", channel dimension is " + std::to_string(d_));
  }
}

Matrix Channel::apply(const Matrix &a) const {
  check_argument(a);
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (const auto &v : kraus_) out.noalias() += v.adjoint() * a * v;
  return out;
}

Matrix Channel::power_apply(std::size_t n, const Matrix &a) const {
  check_argument(a);
  Matrix out = a;
  for (std::size_t i = 0; i < n; ++i) out = apply(out);
  return out;
}

bool Channel::is_unital(double tol) const {
  const auto n = static_cast<Eigen::Index>(d_);
  return operator_norm(unit_image_ - Matrix::Identity(n, n)) <= tol;
}

Channel channel_from_kraus(std::size_t d, std::vector<Matrix> kraus, double tol_cp) {
  return Channel::from_kraus(d, std::move(kraus), tol_cp);
}

Matrix channel_apply(const Channel &phi, const Matrix &a) { return phi.apply(a); }

Matrix channel_power_apply(const Channel &phi, std::size_t n, const Matrix &a) {
  return phi.power_apply(n, a);
}

bool channel_is_unital(const Channel &phi, double tol) { return phi.is_unital(tol); }

Channel identity_channel(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return Channel::from_kraus(d, {Matrix::Identity(n, n)});
}

Channel scalar_channel(std::size_t d, double lambda) {
  const auto n = static_cast<Eigen::Index>(d);
  if (!(lambda >= 0.0)) throw Error(ErrorCode::Config, "lambda must be nonnegative");
  return Channel::from_kraus(d, {Matrix::Identity(n, n) * std::sqrt(lambda)});
}

namespace {

// Modified Gram-Schmidt over the columns, run twice for numerical
// orthogonality at the 1e-15 level.
void orthonormalize_columns(Matrix &w) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const Complex proj = w.col(i).dot(w.col(j));
        w.col(j) -= proj * w.col(i);
      }
      w.col(j) /= w.col(j).norm();
    }
  }
}

}  // namespace

Channel random_channel(std::size_t d, std::size_t r, std::uint64_t seed, bool unital,
                       double lambda) {
  if (d == 0) throw Error(ErrorCode::Config, "dimension must be positive");
  if (r == 0) throw Error(ErrorCode::Config, "Kraus count must be positive");
  if (!(lambda > 0.0)) throw Error(ErrorCode::Config, "lambda must be positive");
  Rng rng(seed);
  Matrix w = random_gaussian_matrix(rng, r * d, d);
  orthonormalize_columns(w);
  const double scale = unital ? 1.0 : std::sqrt(lambda);
  const auto n = static_cast<Eigen::Index>(d);
  std::vector<Matrix> kraus;
  kraus.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    kraus.emplace_back(w.block(static_cast<Eigen::Index>(i) * n, 0, n, n) * scale);
  }
  return Channel::from_kraus(d, std::move(kraus));
}

PsdResult psd_check(const Matrix &m, double tol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "psd_check needs a square matrix");
  PsdResult out;
  if (m.size() == 0) {
    out.pass = true;
    return out;
  }
  const Matrix anti = m - m.adjoint();
  // i (m - m^*) is Hermitian, so its spectral radius is the operator norm.
  const Matrix herm_anti = anti * Complex(0.0, 1.0);
  const Eigen::VectorXd anti_eigs = hermitian_eigenvalues(herm_anti);
  out.asymmetry = anti_eigs.cwiseAbs().maxCoeff();
  const Eigen::VectorXd eigs = hermitian_eigenvalues(m);
  out.min_eigenvalue = eigs(0);
  out.norm = std::max(std::abs(eigs(0)), std::abs(eigs(eigs.size() - 1)));
  const double scale = std::max(1.0, out.norm);
  if (out.asymmetry > kAsymmetryTol * scale) {
    throw Error(ErrorCode::AsymmetryTooLarge,
                "||m - m*|| = " + std::to_string(out.asymmetry));
  }
  out.pass = out.min_eigenvalue >= -tol * scale;
  return out;
}

}  // namespace ncdyn

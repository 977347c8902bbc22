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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ncdyn {

using Complex = std::complex<double>;
/// Elements of A = M_d(C) and every other dense complex matrix in the library.
using Matrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTolCp = 1e-10;
inline constexpr double kDefaultPsdTol = 1e-8;
inline constexpr double kAsymmetryTol = 1e-8;

/// Largest singular value.
double operator_norm(const Matrix &m);

/// A contractive completely positive map on M_d(C) in Kraus form, acting in
/// the Heisenberg picture: phi(a) = sum_i V_i^* a V_i.
class Channel {
 public:
  /// Throws ShapeMismatch if any operator is not d x d (or the list is empty)
  /// and NotContractive if the top eigenvalue of sum V_i^* V_i exceeds
  /// 1 + tol_cp.
  static Channel from_kraus(std::size_t d, std::vector<Matrix> kraus,
                            double tol_cp = kDefaultTolCp);

  std::size_t dim() const noexcept { return d_; }
  const std::vector<Matrix> &kraus() const noexcept { return kraus_; }
  double tol_cp() const noexcept { return tol_cp_; }

  Matrix apply(const Matrix &a) const;
  Matrix power_apply(std::size_t n, const Matrix &a) const;
  /// phi(e) = sum V_i^* V_i.
  const Matrix &unit_image() const noexcept { return unit_image_; }
  bool is_unital(double tol) const;

 private:
  void check_argument(const Matrix &a) const;

  Channel(std::size_t d, std::vector<Matrix> kraus, double tol_cp, Matrix unit_image)
      : d_(d), kraus_(std::move(kraus)), tol_cp_(tol_cp), unit_image_(std::move(unit_image)) {}

  std::size_t d_;
  std::vector<Matrix> kraus_;
  double tol_cp_;
  Matrix unit_image_;
};

Channel channel_from_kraus(std::size_t d, std::vector<Matrix> kraus,
                           double tol_cp = kDefaultTolCp);
Matrix channel_apply(const Channel &phi, const Matrix &a);
Matrix channel_power_apply(const Channel &phi, std::size_t n, const Matrix &a);
bool channel_is_unital(const Channel &phi, double tol);

/// Identity channel on M_d (single Kraus operator I).
Channel identity_channel(std::size_t d);
/// phi(a) = lambda * a, realised with the Kraus operator sqrt(lambda) I.
Channel scalar_channel(std::size_t d, double lambda);

/// Seeded random channel. Draws an (r d) x d complex Gaussian matrix
/// (see Rng), orthonormalises its columns into an isometry W by modified
/// Gram-Schmidt with one re-orthogonalisation pass, and slices W into r
/// consecutive d x d row blocks V_1..V_r, so sum V_i^* V_i = W^* W = I.
/// Non-unital channels scale every block by sqrt(lambda).
Channel random_channel(std::size_t d, std::size_t r, std::uint64_t seed, bool unital,
                       double lambda = 1.0);

struct PsdResult {
  bool pass = false;
  double min_eigenvalue = 0.0;
  double norm = 0.0;        // operator norm of the symmetrised matrix
  double asymmetry = 0.0;   // ||m - m^*||
};

/// Positivity test on the Hermitian part (m + m^*)/2. Passes iff the smallest
/// eigenvalue is >= -tol * max(1, ||m||). Throws AsymmetryTooLarge when
/// ||m - m^*|| > 1e-8 max(1, ||m||), ShapeMismatch for non-square input.
PsdResult psd_check(const Matrix &m, double tol = kDefaultPsdTol);

/// Eigenvalues (ascending) of the Hermitian part of m.
Eigen::VectorXd hermitian_eigenvalues(const Matrix &m);

}  // namespace ncdyn

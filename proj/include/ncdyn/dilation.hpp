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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ncdyn/algebra.hpp"
#include "ncdyn/expectation.hpp"

namespace ncdyn {

/// Desk-scale truncation of the free-product model: words with letters in
/// {0..max_height} and at most max_length letters.
struct TruncationParams {
  Index max_height = 2;
  std::size_t max_length = 2;
  /// Eigenvalues below eig_tol * lambda_max span the discarded null space.
  double eig_tol = 1e-10;
  /// Build aborts when the most negative Gram eigenvalue is below
  /// -clip_abort_tol * lambda_max.
  double clip_abort_tol = 1e-6;
  /// Largest basis (catalog size times d) build_gns accepts. The dense Gram
  /// matrix and its eigensolver take roughly 64 max_basis^2 bytes.
  std::size_t max_basis = 6000;

  void validate() const;
};

/// Number of catalog generators: sum_{l=1..L} (N+1) N^(l-1) (d^2)^l.
std::size_t catalog_size(std::size_t d, const TruncationParams &params);

/// All generators with in-range words and matrix-unit tensors, ordered by
/// length, then word (lexicographic), then tensor units (lexicographic, unit
/// E_pq numbered p d + q). Grows like ((N+1) d^2)^L.
std::vector<Generator> enumerate_generators(std::size_t d, const TruncationParams &params);

/// Finite-horizon GNS data for (M_d, phi).
///
/// Basis vector alpha = g d + s stands for (catalog generator g) (x) e_s, with
/// <alpha, beta> = E_0(u_g^* u_h)[s, t]. The quotient by the null space is
/// coordinatised by X = Lambda^{1/2} U^* (rank x basis), so X^* X reproduces
/// the Gram matrix on the retained spectrum.
class DilationModel {
 public:
  std::size_t dim() const noexcept { return phi_.dim(); }
  const Channel &channel() const noexcept { return phi_; }
  const TruncationParams &params() const noexcept { return params_; }
  const std::vector<Generator> &catalog() const noexcept { return catalog_; }
  std::size_t basis_size() const noexcept { return catalog_.size() * dim(); }
  const Matrix &gram() const noexcept { return gram_; }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(coords_.rows()); }
  /// rank x basis_size.
  const Matrix &coords() const noexcept { return coords_; }
  /// Columns are the quotient images of ((0), e) (x) e_s; an isometry onto
  /// the A-corner.
  const Matrix &corner_isometry() const noexcept { return corner_; }
  /// Orthogonal projection onto the A-corner, in quotient coordinates.
  const Matrix &corner_projection() const noexcept { return corner_projection_; }

  double gram_min_eigenvalue() const noexcept { return gram_min_eigenvalue_; }
  double gram_max_eigenvalue() const noexcept { return gram_max_eigenvalue_; }
  double gram_asymmetry() const noexcept { return gram_asymmetry_; }
  /// Smallest eigenvalue of the d^2 x d^2 matrix
  /// [tr E_0(E_pq^* E_p'q')] read through quotient coordinates.
  double corner_min_eigenvalue() const noexcept { return corner_min_eigenvalue_; }
  /// ||W^* W - I|| for the corner isometry W.
  double corner_isometry_residual() const noexcept { return corner_isometry_residual_; }

  /// Catalog position of a generator with matrix-unit tensors, given as the
  /// word and the unit number of each slot.
  std::optional<std::size_t> find(const Word &word, std::span<const std::size_t> units) const;
  bool in_truncation(const Word &word) const;
  /// Basis indices of the A-level vectors ((0), E_pq) (x) e_s.
  std::vector<std::size_t> corner_basis() const;
  /// Quotient coordinates of an arbitrary generator applied to e_s, expanded
  /// over matrix units. Throws OutOfTruncation if the word is not in range.
  Eigen::VectorXcd vector_of(const Generator &g, std::size_t s) const;

 private:
  friend DilationModel build_gns(const Channel &phi, const TruncationParams &params);
  DilationModel(Channel phi, TruncationParams params) : phi_(std::move(phi)), params_(params) {}

  Channel phi_;
  TruncationParams params_;
  std::vector<Generator> catalog_;
  std::map<Word, std::size_t> word_offset_;
  Matrix gram_;
  Matrix coords_;
  Matrix corner_;
  Matrix corner_projection_;
  double gram_min_eigenvalue_ = 0.0;
  double gram_max_eigenvalue_ = 0.0;
  double gram_asymmetry_ = 0.0;
  double corner_min_eigenvalue_ = 0.0;
  double corner_isometry_residual_ = 0.0;
};

/// Throws NotContractive, GramClipTooLarge.
DilationModel build_gns(const Channel &phi, const TruncationParams &params);

/// Left multiplication by a generator, as a rank x rank matrix on the
/// quotient. It is fitted by least squares on the span of the domain vectors
/// and is zero on the orthogonal complement of that span.
struct RepresentedOperator {
  Matrix matrix;
  std::vector<std::size_t> domain;
  /// max over domain vectors of ||T x_alpha - (g u_alpha)||.
  double well_definedness_residual = 0.0;
};

/// Basis vectors alpha with g . u_alpha inside the truncation.
std::vector<std::size_t> admissible_domain(const DilationModel &model, const Generator &g);

/// Represents g on the whole basis. Throws OutOfTruncation naming the first
/// basis element whose product leaves the truncation.
RepresentedOperator represent(const DilationModel &model, const Generator &g);
/// Represents g on the given basis vectors only (same error contract).
RepresentedOperator represent_on(const DilationModel &model, const Generator &g,
                                 std::span<const std::size_t> domain);

struct Compression {
  Matrix value;            // d x d
  double residual = 0.0;   // max mismatch over A-level vector pairs
};

/// p x p read as an element of M_d. Throws CornerDegenerate if the corner
/// Gram data is singular, ShapeMismatch if x is not rank x rank.
Compression compress_to_A(const DilationModel &model, const Matrix &x);

inline constexpr double kCornerTol = 1e-10;
inline constexpr double kDilationTol = 1e-8;

struct MomentFormulaReport {
  double max_residual = 0.0;
  double threshold = kDilationTol;
  std::size_t accepted = 0;
  std::size_t skipped = 0;
  double skip_rate = 0.0;
  std::uint64_t seed = 0;
  bool pass = false;
};

/// Samples products ((n_1), a_1) ... ((n_k), a_k) with k <= max_length + 2,
/// letters <= max_height and unit-norm Gaussian a_i (trial t uses seed + t),
/// skips products that leave the truncation on the corner, and compares the
/// corner compression of their representation with moment_eval.
MomentFormulaReport verify_moment_formula(const DilationModel &model, std::size_t trials,
                                          std::uint64_t seed);

struct StandardPropertiesReport {
  double corner_identity_residual = 0.0;
  double hereditarity_residual = 0.0;
  double threshold = kDilationTol;
  std::size_t generators_checked = 0;
  bool pass = false;
};

/// For unital phi: ||F xi - xi|| on A-level vectors with F = pi((1), e), and
/// compress(pi(g)) = E_0(g) for every catalog generator representable on the
/// corner. Throws NotUnital, OutOfTruncation (when (1, 0) is out of range).
StandardPropertiesReport verify_standard_properties(const DilationModel &model);

}  // namespace ncdyn

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

#include <span>
#include <string>
#include <vector>

#include "ncdyn/algebra.hpp"
#include "ncdyn/words.hpp"

namespace ncdyn {

/// Expression tree for a moment polynomial in canonical form.
///
/// Leaves refer to argument slots. Phi nodes never wrap Phi nodes (powers are
/// merged) and products never contain products (they are flattened); the
/// factory functions enforce both.
class MomentExpr {
 public:
  enum class Kind { Leaf, Phi, Prod };

  static MomentExpr leaf(std::size_t slot);
  static MomentExpr phi(std::size_t power, MomentExpr child);
  /// A single factor is returned unchanged.
  static MomentExpr product(std::vector<MomentExpr> factors);

  Kind kind() const noexcept { return kind_; }
  std::size_t slot() const noexcept { return value_; }
  std::size_t power() const noexcept { return value_; }
  const MomentExpr &child() const { return children_.front(); }
  const std::vector<MomentExpr> &factors() const noexcept { return children_; }

  friend bool operator==(const MomentExpr &, const MomentExpr &) = default;

 private:
  MomentExpr(Kind kind, std::size_t value, std::vector<MomentExpr> children)
      : kind_(kind), value_(value), children_(std::move(children)) {}

  Kind kind_;
  std::size_t value_;
  std::vector<MomentExpr> children_;
};

/// Canonical reduction of [n_1..n_k; a_1..a_k]: split at the leftmost zero
/// index, otherwise pull phi^min out of the whole bracket.
/// Throws LengthMismatch when |names| != k.
MomentExpr moment_normal_form(const IndexTuple &indices, std::span<const std::string> names);

/// Renders in the grammar  expr := atom | phi(expr) | phi^INT(expr) | expr*expr.
std::string moment_render(const MomentExpr &expr, std::span<const std::string> names);

/// Interprets a normal form with concrete matrices bound to its slots.
Matrix moment_interpret(const MomentExpr &expr, std::span<const Matrix> mats,
                        const Channel &phi);

/// Numeric value of the bracket, by the same reduction strategy as
/// moment_normal_form. Throws LengthMismatch, ShapeMismatch.
Matrix moment_eval(const IndexTuple &indices, std::span<const Matrix> mats,
                   const Channel &phi);

/// Evaluates by applying the product rule at a caller-chosen zero position
/// (0-based) of the tuple, then evaluating both sides with moment_eval.
/// Throws LengthMismatch if indices[position] != 0 or position is out of range.
Matrix moment_eval_split_at(const IndexTuple &indices, std::span<const Matrix> mats,
                            const Channel &phi, std::size_t position);

/// || [n_1..n_k; a_1..a_k]^* - [n_k..n_1; a_k^*..a_1^*] || (operator norm).
double moment_symmetry_residual(const IndexTuple &indices, std::span<const Matrix> mats,
                                const Channel &phi);

}  // namespace ncdyn

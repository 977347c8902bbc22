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
#include <vector>

#include "ncdyn/algebra.hpp"
#include "ncdyn/words.hpp"

namespace ncdyn {

/// Elementary section delta_w . a_1 (x) ... (x) a_k: a word of the index
/// semigroup paired with one d x d tensor factor per letter.
class Generator {
 public:
  const Word &word() const noexcept { return word_; }
  const std::vector<Matrix> &tensors() const noexcept { return tensors_; }
  std::size_t size() const noexcept { return tensors_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(tensors_.front().rows()); }

 private:
  friend Generator gen_make(const IndexTuple &indices, std::vector<Matrix> tensors);
  Generator(Word word, std::vector<Matrix> tensors)
      : word_(std::move(word)), tensors_(std::move(tensors)) {}

  Word word_;
  std::vector<Matrix> tensors_;
};

/// Builds a generator from any index tuple; runs of equal neighbouring
/// indices are merged by multiplying their tensors left to right.
/// Throws LengthMismatch, ShapeMismatch.
Generator gen_make(const IndexTuple &indices, std::vector<Matrix> tensors);
Generator gen_make(const Word &word, std::vector<Matrix> tensors);

Generator gen_product(const Generator &g, const Generator &h);
Generator gen_involution(const Generator &g);
Generator gen_shift(const Generator &g, Index t);
Index gen_height(const Generator &g);

/// The A-level generator ((0), a).
Generator gen_scalar(const Matrix &a);

/// E_0(delta_w . a_1 (x) ... (x) a_k) = [w; a_1, ..., a_k].
Matrix expectation_E0(const Generator &g, const Channel &phi);

/// Max entrywise/operator-norm residual between two generators with equal
/// words; +infinity when the words differ.
double gen_distance(const Generator &g, const Generator &h);

/// A finitely supported section kept as an unsimplified list of generators.
class FiniteSection {
 public:
  FiniteSection() = default;
  explicit FiniteSection(std::vector<Generator> terms);

  const std::vector<Generator> &terms() const noexcept { return terms_; }
  void add(Generator g);

  /// Sum of products of tensor norms over the terms; bounds the l1 norm.
  double l1_norm_bound() const;

  friend FiniteSection operator*(const FiniteSection &f, const FiniteSection &g);
  FiniteSection adjoint() const;
  FiniteSection shifted(Index t) const;

 private:
  std::vector<Generator> terms_;
};

Matrix expectation_E0(const FiniteSection &f, const Channel &phi);

struct GramResult {
  Matrix gram;               // n d x n d, block (r, c) = E_0(u_r^* u_c)
  double min_eigenvalue = 0.0;
  double norm = 0.0;
  bool psd = false;
};

/// Block Gram matrix of a generator family. Blocks are assembled
/// independently (in parallel for large families); the result does not depend
/// on scheduling.
GramResult gram_matrix(std::span<const Generator> us, const Channel &phi,
                       double tol = kDefaultPsdTol);

struct KeyLemmaResult {
  std::vector<Generator> vs;
  std::vector<Matrix> bs;
  std::vector<Matrix> cs;
  Index max_height = 0;
  double residual = 0.0;
};

/// Height-lowering factorisation
///   E_0(u_j^* u_i) = b_j^* phi(E_0(v_j^* v_i)) b_i + c_j^* (e - phi(e)) c_i
/// with h(v_k) < max_k h(u_k). Throws HeightZero when every u_k has height 0.
KeyLemmaResult key_lemma_step(std::span<const Generator> us, const Channel &phi);

}  // namespace ncdyn

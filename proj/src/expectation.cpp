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

#include "ncdyn/expectation.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ncdyn/error.hpp"
#include "ncdyn/moments.hpp"
#include "parallel.hpp"

namespace ncdyn {

Generator gen_make(const IndexTuple &indices, std::vector<Matrix> tensors) {
  if (indices.size() != tensors.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(indices.size()) + " indices but " +
                    std::to_string(tensors.size()) + " tensors");
  }
  const Eigen::Index d = tensors.front().rows();
  for (const auto &t : tensors) {
    if (t.rows() != d || t.cols() != d || d == 0) {
      throw Error(ErrorCode::ShapeMismatch, "generator tensors must share one square shape");
    }
  }
  std::vector<Index> letters;
  std::vector<Matrix> merged;
  letters.reserve(indices.size());
  merged.reserve(tensors.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (!letters.empty() && letters.back() == indices[i]) {
      merged.back() = merged.back() * tensors[i];
    } else {
      letters.push_back(indices[i]);
      merged.push_back(std::move(tensors[i]));
    }
  }
  return Generator(make_word(std::move(letters)), std::move(merged));
}

Generator gen_make(const Word &word, std::vector<Matrix> tensors) {
  return gen_make(word.as_tuple(), std::move(tensors));
}

Generator gen_product(const Generator &g, const Generator &h) {
  if (g.dim() != h.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "generator dimensions differ");
  }
  std::vector<Index> letters = g.word().entries();
  letters.insert(letters.end(), h.word().entries().begin(), h.word().entries().end());
  std::vector<Matrix> tensors = g.tensors();
  tensors.insert(tensors.end(), h.tensors().begin(), h.tensors().end());
  // a single boundary merge at most, since both words are reduced
  return gen_make(IndexTuple(std::move(letters)), std::move(tensors));
}

Generator gen_involution(const Generator &g) {
  std::vector<Matrix> tensors;
  tensors.reserve(g.size());
  for (auto it = g.tensors().rbegin(); it != g.tensors().rend(); ++it) {
    tensors.push_back(it->adjoint());
  }
  return gen_make(word_involution(g.word()), std::move(tensors));
}

Generator gen_shift(const Generator &g, Index t) {
  return gen_make(word_shift(g.word(), t), g.tensors());
}

Index gen_height(const Generator &g) { return word_height(g.word()); }

Generator gen_scalar(const Matrix &a) { return gen_make(IndexTuple({0}), {a}); }

Matrix expectation_E0(const Generator &g, const Channel &phi) {
  return moment_eval(g.word().as_tuple(), g.tensors(), phi);
}

double gen_distance(const Generator &g, const Generator &h) {
  if (g.word() != h.word()) return std::numeric_limits<double>::infinity();
  double out = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.tensors()[i].rows() != h.tensors()[i].rows()) {
      return std::numeric_limits<double>::infinity();
    }
    out = std::max(out, operator_norm(g.tensors()[i] - h.tensors()[i]));
  }
  return out;
}

FiniteSection::FiniteSection(std::vector<Generator> terms) : terms_(std::move(terms)) {
  for (const auto &t : terms_) {
    if (t.dim() != terms_.front().dim()) {
      throw Error(ErrorCode::ShapeMismatch, "section terms differ in dimension");
    }
  }
}

void FiniteSection::add(Generator g) {
  if (!terms_.empty() && g.dim() != terms_.front().dim()) {
    throw Error(ErrorCode::ShapeMismatch, "section terms differ in dimension");
  }
  terms_.push_back(std::move(g));
}

double FiniteSection::l1_norm_bound() const {
  double total = 0.0;
  for (const auto &t : terms_) {
    double term = 1.0;
    for (const auto &a : t.tensors()) term *= operator_norm(a);
    total += term;
  }
  return total;
}

FiniteSection operator*(const FiniteSection &f, const FiniteSection &g) {
  FiniteSection out;
  for (const auto &x : f.terms_) {
    for (const auto &y : g.terms_) out.terms_.push_back(gen_product(x, y));
  }
  return out;
}

FiniteSection FiniteSection::adjoint() const {
  FiniteSection out;
  for (const auto &t : terms_) out.terms_.push_back(gen_involution(t));
  return out;
}

FiniteSection FiniteSection::shifted(Index t) const {
  FiniteSection out;
  for (const auto &x : terms_) out.terms_.push_back(gen_shift(x, t));
  return out;
}

Matrix expectation_E0(const FiniteSection &f, const Channel &phi) {
  const auto d = static_cast<Eigen::Index>(phi.dim());
  Matrix out = Matrix::Zero(d, d);
  for (const auto &t : f.terms()) out += expectation_E0(t, phi);
  return out;
}

GramResult gram_matrix(std::span<const Generator> us, const Channel &phi, double tol) {
  if (us.empty()) throw Error(ErrorCode::Empty, "gram_matrix needs at least one generator");
  const std::size_t d = phi.dim();
  for (const auto &u : us) {
    if (u.dim() != d) throw Error(ErrorCode::ShapeMismatch, "generator dimension differs from channel");
  }
  const std::size_t n = us.size();
  const auto dd = static_cast<Eigen::Index>(d);
  std::vector<Generator> adjoints;
  adjoints.reserve(n);
  for (const auto &u : us) adjoints.push_back(gen_involution(u));

  GramResult out;
  out.gram = Matrix::Zero(static_cast<Eigen::Index>(n * d), static_cast<Eigen::Index>(n * d));
  detail::parallel_for(n, [&](std::size_t r) {
    for (std::size_t c = 0; c < n; ++c) {
      out.gram.block(static_cast<Eigen::Index>(r) * dd, static_cast<Eigen::Index>(c) * dd, dd, dd) =
          expectation_E0(gen_product(adjoints[r], us[c]), phi);
    }
  });
  const PsdResult psd = psd_check(out.gram, tol);
  out.min_eigenvalue = psd.min_eigenvalue;
  out.norm = psd.norm;
  out.psd = psd.pass;
  return out;
}

KeyLemmaResult key_lemma_step(std::span<const Generator> us, const Channel &phi) {
  if (us.empty()) throw Error(ErrorCode::Empty, "key_lemma_step needs at least one generator");
  const auto d = static_cast<Eigen::Index>(phi.dim());
  const Matrix unit = Matrix::Identity(d, d);
  KeyLemmaResult out;
  for (const auto &u : us) out.max_height = std::max(out.max_height, gen_height(u));
  if (out.max_height == 0) {
    throw Error(ErrorCode::HeightZero, "every generator has height 0");
  }

  const Generator e = gen_scalar(unit);
  for (const auto &u : us) {
    const Generator ue = gen_product(u, e);
    const auto &letters = ue.word().entries();
    if (letters.front() > 0) {
      // ue ends in 0, so a first zero exists past position 0
      const auto split = static_cast<std::size_t>(
          std::find(letters.begin(), letters.end(), Index{0}) - letters.begin());
      std::vector<Index> lowered(letters.begin(), letters.begin() + split);
      for (auto &x : lowered) x -= 1;
      std::vector<Matrix> head(ue.tensors().begin(), ue.tensors().begin() + split);
      std::vector<Index> tail_letters(letters.begin() + split, letters.end());
      std::vector<Matrix> tail(ue.tensors().begin() + split, ue.tensors().end());
      const Generator w = gen_make(IndexTuple(std::move(tail_letters)), std::move(tail));
      out.vs.push_back(gen_make(IndexTuple(std::move(lowered)), std::move(head)));
      out.bs.push_back(expectation_E0(w, phi));
      out.cs.push_back(Matrix::Zero(d, d));
    } else {
      const Matrix b = expectation_E0(u, phi);
      out.vs.push_back(e);
      out.bs.push_back(b);
      out.cs.push_back(b);
    }
  }

  const Matrix defect = unit - phi.unit_image();
  const std::size_t n = us.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix lhs = expectation_E0(gen_product(gen_involution(us[j]), us[i]), phi);
      const Matrix inner =
          phi.apply(expectation_E0(gen_product(gen_involution(out.vs[j]), out.vs[i]), phi));
      const Matrix rhs = out.bs[j].adjoint() * inner * out.bs[i] +
                         out.cs[j].adjoint() * defect * out.cs[i];
      out.residual = std::max(out.residual, operator_norm(lhs - rhs));
    }
  }
  return out;
}

}  // namespace ncdyn

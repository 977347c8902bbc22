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

#include "ncdyn/moments.hpp"

#include <algorithm>
#include <cassert>

#include "ncdyn/error.hpp"

namespace ncdyn {

MomentExpr MomentExpr::leaf(std::size_t slot) { return MomentExpr(Kind::Leaf, slot, {}); }

MomentExpr MomentExpr::phi(std::size_t power, MomentExpr child) {
  if (power == 0) return child;
  if (child.kind_ == Kind::Phi) {
    const std::size_t merged = power + child.value_;
    return MomentExpr(Kind::Phi, merged, std::move(child.children_));
  }
  std::vector<MomentExpr> children;
  children.push_back(std::move(child));
  return MomentExpr(Kind::Phi, power, std::move(children));
}

MomentExpr MomentExpr::product(std::vector<MomentExpr> factors) {
  if (factors.empty()) throw Error(ErrorCode::Empty, "empty product");
  if (factors.size() == 1) return std::move(factors.front());
  std::vector<MomentExpr> flat;
  for (auto &f : factors) {
    if (f.kind_ == Kind::Prod) {
      for (auto &g : f.children_) flat.push_back(std::move(g));
    } else {
      flat.push_back(std::move(f));
    }
  }
  return MomentExpr(Kind::Prod, 0, std::move(flat));
}

namespace {

void check_lengths(std::size_t indices, std::size_t args) {
  if (indices != args) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(indices) + " indices but " +
                                               std::to_string(args) + " arguments");
  }
}

// The recursion works on a window [lo, hi) of the tuple whose entries have
// already been lowered by `base`. Its measure (sum of lowered entries plus
// window length) strictly decreases at every step.
[[maybe_unused]] std::size_t measure(std::span<const Index> n, std::size_t lo, std::size_t hi, Index base) {
  std::size_t total = hi - lo;
  for (std::size_t i = lo; i < hi; ++i) total += n[i] - base;
  return total;
}

MomentExpr normal_form_rec(std::span<const Index> n, std::size_t lo, std::size_t hi,
                           Index base) {
  Index low = n[lo] - base;
  std::size_t zero = hi;
  for (std::size_t i = lo; i < hi; ++i) {
    const Index v = n[i] - base;
    if (v == 0 && zero == hi) zero = i;
    low = std::min(low, v);
  }
  if (zero == hi) {
    assert(measure(n, lo, hi, base + low) < measure(n, lo, hi, base));
    return MomentExpr::phi(low, normal_form_rec(n, lo, hi, base + low));
  }
  std::vector<MomentExpr> factors;
  if (zero > lo) factors.push_back(normal_form_rec(n, lo, zero, base));
  factors.push_back(MomentExpr::leaf(zero));
  if (zero + 1 < hi) factors.push_back(normal_form_rec(n, zero + 1, hi, base));
  return MomentExpr::product(std::move(factors));
}

Matrix eval_rec(std::span<const Index> n, std::span<const Matrix> a, const Channel &phi,
                std::size_t lo, std::size_t hi, Index base) {
  Index low = n[lo] - base;
  std::size_t zero = hi;
  for (std::size_t i = lo; i < hi; ++i) {
    const Index v = n[i] - base;
    if (v == 0 && zero == hi) zero = i;
    low = std::min(low, v);
  }
  if (zero == hi) {
    assert(measure(n, lo, hi, base + low) < measure(n, lo, hi, base));
    return phi.power_apply(low, eval_rec(n, a, phi, lo, hi, base + low));
  }
  Matrix out = a[zero];
  if (zero > lo) out = eval_rec(n, a, phi, lo, zero, base) * out;
  if (zero + 1 < hi) out = out * eval_rec(n, a, phi, zero + 1, hi, base);
  return out;
}

void check_shapes(std::span<const Matrix> mats, const Channel &phi) {
  const auto d = static_cast<Eigen::Index>(phi.dim());
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].rows() != d || mats[i].cols() != d) {
      throw Error(ErrorCode::ShapeMismatch, "argument " + std::to_string(i) +
                                                " does not match channel dimension " +
                                                std::to_string(phi.dim()));
    }
  }
}

void render_rec(const MomentExpr &e, std::span<const std::string> names, std::string &out) {
  switch (e.kind()) {
    case MomentExpr::Kind::Leaf:
      out += names[e.slot()];
      return;
    case MomentExpr::Kind::Phi:
      out += "phi";
      if (e.power() != 1) out += "^" + std::to_string(e.power());
      out += '(';
      render_rec(e.child(), names, out);
      out += ')';
      return;
    case MomentExpr::Kind::Prod:
      for (std::size_t i = 0; i < e.factors().size(); ++i) {
        if (i > 0) out += '*';
        render_rec(e.factors()[i], names, out);
      }
      return;
  }
}

}  // namespace

MomentExpr moment_normal_form(const IndexTuple &indices, std::span<const std::string> names) {
  check_lengths(indices.size(), names.size());
  return normal_form_rec(indices.view(), 0, indices.size(), 0);
}

std::string moment_render(const MomentExpr &expr, std::span<const std::string> names) {
  std::string out;
  render_rec(expr, names, out);
  return out;
}

Matrix moment_interpret(const MomentExpr &expr, std::span<const Matrix> mats,
                        const Channel &phi) {
  switch (expr.kind()) {
    case MomentExpr::Kind::Leaf:
      return mats[expr.slot()];
    case MomentExpr::Kind::Phi:
      return phi.power_apply(expr.power(), moment_interpret(expr.child(), mats, phi));
    case MomentExpr::Kind::Prod: {
      Matrix out = moment_interpret(expr.factors().front(), mats, phi);
      for (std::size_t i = 1; i < expr.factors().size(); ++i) {
        out = out * moment_interpret(expr.factors()[i], mats, phi);
      }
      return out;
    }
  }
  return {};
}

Matrix moment_eval(const IndexTuple &indices, std::span<const Matrix> mats,
                   const Channel &phi) {
  check_lengths(indices.size(), mats.size());
  check_shapes(mats, phi);
  return eval_rec(indices.view(), mats, phi, 0, indices.size(), 0);
}

Matrix moment_eval_split_at(const IndexTuple &indices, std::span<const Matrix> mats,
                            const Channel &phi, std::size_t position) {
  check_lengths(indices.size(), mats.size());
  check_shapes(mats, phi);
  if (position >= indices.size() || indices[position] != 0) {
    throw Error(ErrorCode::LengthMismatch,
                "position " + std::to_string(position) + " is not a zero of " +
                    indices.to_string());
  }
  const auto &n = indices.entries();
  Matrix out = mats[position];
  if (position > 0) {
    IndexTuple left(std::vector<Index>(n.begin(), n.begin() + position));
    out = moment_eval(left, mats.first(position), phi) * out;
  }
  if (position + 1 < n.size()) {
    IndexTuple right(std::vector<Index>(n.begin() + position + 1, n.end()));
    out = out * moment_eval(right, mats.subspan(position + 1), phi);
  }
  return out;
}

double moment_symmetry_residual(const IndexTuple &indices, std::span<const Matrix> mats,
                                const Channel &phi) {
  const Matrix forward = moment_eval(indices, mats, phi);
  std::vector<Index> reversed(indices.entries().rbegin(), indices.entries().rend());
  std::vector<Matrix> adjoints;
  adjoints.reserve(mats.size());
  for (auto it = mats.rbegin(); it != mats.rend(); ++it) adjoints.push_back(it->adjoint());
  const Matrix backward = moment_eval(IndexTuple(std::move(reversed)), adjoints, phi);
  return operator_norm(forward.adjoint() - backward);
}

}  // namespace ncdyn

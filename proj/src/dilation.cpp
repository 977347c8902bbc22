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

#include "ncdyn/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncdyn/error.hpp"
#include "ncdyn/moments.hpp"
#include "ncdyn/rng.hpp"
#include "parallel.hpp"

namespace ncdyn {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

Matrix matrix_unit(std::size_t d, std::size_t unit) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m = Matrix::Zero(n, n);
  m(static_cast<Eigen::Index>(unit / d), static_cast<Eigen::Index>(unit % d)) = 1.0;
  return m;
}

// Words of one length in lexicographic order.
void words_of_length(Index max_letter, std::size_t length, std::vector<Index> &prefix,
                     std::vector<Word> &out) {
  if (prefix.size() == length) {
    out.push_back(make_word(prefix));
    return;
  }
  for (Index x = 0; x <= max_letter; ++x) {
    if (!prefix.empty() && prefix.back() == x) continue;
    prefix.push_back(x);
    words_of_length(max_letter, length, prefix, out);
    prefix.pop_back();
  }
}

std::string describe(const Generator &g, std::size_t d) {
  std::string out = g.word().to_string() + " with units [";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i > 0) out += ',';
    const auto &t = g.tensors()[i];
    for (std::size_t u = 0; u < d * d; ++u) {
      if (t(static_cast<Eigen::Index>(u / d), static_cast<Eigen::Index>(u % d)) != Complex(0.0)) {
        out += "E" + std::to_string(u / d) + std::to_string(u % d);
        break;
      }
    }
  }
  return out + "]";
}

}  // namespace

void TruncationParams::validate() const {
  if (max_height < 1) throw Error(ErrorCode::Config, "max_height must be >= 1");
  if (max_length < 1) throw Error(ErrorCode::Config, "max_length must be >= 1");
  if (!(eig_tol > 0.0)) throw Error(ErrorCode::Config, "eig_tol must be positive");
  if (!(clip_abort_tol > 0.0)) throw Error(ErrorCode::Config, "clip_abort_tol must be positive");
  if (max_basis < 1) throw Error(ErrorCode::Config, "max_basis must be >= 1");
}

std::size_t catalog_size(std::size_t d, const TruncationParams &params) {
  std::size_t total = 0;
  const std::size_t units = d * d;
  for (std::size_t l = 1; l <= params.max_length; ++l) {
    total += (params.max_height + 1) * ipow(params.max_height, l - 1) * ipow(units, l);
  }
  return total;
}

std::vector<Generator> enumerate_generators(std::size_t d, const TruncationParams &params) {
  params.validate();
  const std::size_t units = d * d;
  std::vector<Matrix> unit_mats;
  for (std::size_t u = 0; u < units; ++u) unit_mats.push_back(matrix_unit(d, u));

  std::vector<Generator> out;
  out.reserve(catalog_size(d, params));
  for (std::size_t l = 1; l <= params.max_length; ++l) {
    std::vector<Word> words;
    std::vector<Index> prefix;
    words_of_length(params.max_height, l, prefix, words);
    const std::size_t combos = ipow(units, l);
    for (const auto &w : words) {
      for (std::size_t c = 0; c < combos; ++c) {
        std::vector<Matrix> tensors(l);
        std::size_t rest = c;
        for (std::size_t slot = l; slot-- > 0;) {
          tensors[slot] = unit_mats[rest % units];
          rest /= units;
        }
        out.push_back(gen_make(w, std::move(tensors)));
      }
    }
  }
  return out;
}

std::optional<std::size_t> DilationModel::find(const Word &word,
                                               std::span<const std::size_t> units) const {
  auto it = word_offset_.find(word);
  if (it == word_offset_.end() || units.size() != word.size()) return std::nullopt;
  const std::size_t nunits = dim() * dim();
  std::size_t local = 0;
  for (auto u : units) {
    if (u >= nunits) return std::nullopt;
    local = local * nunits + u;
  }
  return it->second + local;
}

bool DilationModel::in_truncation(const Word &word) const {
  return word.size() <= params_.max_length && word_height(word) <= params_.max_height;
}

std::vector<std::size_t> DilationModel::corner_basis() const {
  const std::size_t d = dim();
  const std::size_t offset = word_offset_.at(make_word({0}));
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < d * d; ++u) {
    for (std::size_t s = 0; s < d; ++s) out.push_back((offset + u) * d + s);
  }
  return out;
}

Eigen::VectorXcd DilationModel::vector_of(const Generator &g, std::size_t s) const {
  if (!in_truncation(g.word())) {
    throw Error(ErrorCode::OutOfTruncation, "word " + g.word().to_string() +
                                                " exceeds the truncation");
  }
  const std::size_t d = dim();
  const std::size_t nunits = d * d;
  const std::size_t length = g.size();
  const std::size_t offset = word_offset_.at(g.word());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(coords_.rows());
  const std::size_t combos = ipow(nunits, length);
  for (std::size_t c = 0; c < combos; ++c) {
    Complex coef = 1.0;
    std::size_t rest = c;
    for (std::size_t slot = length; slot-- > 0 && coef != Complex(0.0);) {
      const std::size_t u = rest % nunits;
      rest /= nunits;
      coef *= g.tensors()[slot](static_cast<Eigen::Index>(u / d), static_cast<Eigen::Index>(u % d));
    }
    if (coef == Complex(0.0)) continue;
    out += coef * coords_.col(static_cast<Eigen::Index>((offset + c) * d + s));
  }
  return out;
}

DilationModel build_gns(const Channel &phi, const TruncationParams &params) {
  params.validate();
  const double top = hermitian_eigenvalues(phi.unit_image()).maxCoeff();
  if (top > 1.0 + phi.tol_cp()) {
    throw Error(ErrorCode::NotContractive, "largest eigenvalue of phi(e) is " + std::to_string(top));
  }
  const std::size_t d = phi.dim();
  if (const std::size_t basis = catalog_size(d, params) * d; basis > params.max_basis) {
    throw Error(ErrorCode::Config, "truncation basis of " + std::to_string(basis) +
                                       " vectors exceeds max_basis " + std::to_string(params.max_basis));
  }
  DilationModel model(phi, params);
  const auto dd = static_cast<Eigen::Index>(d);
  model.catalog_ = enumerate_generators(d, params);
  for (std::size_t i = 0; i < model.catalog_.size(); ++i) {
    model.word_offset_.try_emplace(model.catalog_[i].word(), i);
  }

  const std::size_t n = model.catalog_.size();
  std::vector<Generator> adjoints;
  adjoints.reserve(n);
  for (const auto &u : model.catalog_) adjoints.push_back(gen_involution(u));
  Matrix &gram = model.gram_;
  gram = Matrix::Zero(static_cast<Eigen::Index>(n * d), static_cast<Eigen::Index>(n * d));
  detail::parallel_for(n, [&](std::size_t a) {
    for (std::size_t b = 0; b < n; ++b) {
      gram.block(static_cast<Eigen::Index>(a) * dd, static_cast<Eigen::Index>(b) * dd, dd, dd) =
          expectation_E0(gen_product(adjoints[a], model.catalog_[b]), phi);
    }
  });
  model.gram_asymmetry_ = (gram - gram.adjoint()).cwiseAbs().maxCoeff();

  const Matrix herm = (gram + gram.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  const Eigen::VectorXd &evals = solver.eigenvalues();
  model.gram_min_eigenvalue_ = evals(0);
  model.gram_max_eigenvalue_ = evals(evals.size() - 1);
  const double lmax = model.gram_max_eigenvalue_;
  if (model.gram_min_eigenvalue_ < -params.clip_abort_tol * lmax) {
    throw Error(ErrorCode::GramClipTooLarge,
                "Gram eigenvalue " + std::to_string(model.gram_min_eigenvalue_) +
                    " against max " + std::to_string(lmax));
  }
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    if (evals(k) > params.eig_tol * lmax) kept.push_back(k);
  }
  model.coords_.resize(static_cast<Eigen::Index>(kept.size()), gram.cols());
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const Eigen::Index k = kept[r];
    model.coords_.row(static_cast<Eigen::Index>(r)) =
        std::sqrt(evals(k)) * solver.eigenvectors().col(k).adjoint();
  }

  const std::vector<std::size_t> corner = model.corner_basis();
  model.corner_ = Matrix::Zero(model.coords_.rows(), dd);
  for (std::size_t q = 0; q < d; ++q) {
    for (std::size_t s = 0; s < d; ++s) {
      // ((0), E_qq) (x) e_s sits at corner[(q d + q) d + s]
      model.corner_.col(static_cast<Eigen::Index>(s)) +=
          model.coords_.col(static_cast<Eigen::Index>(corner[(q * d + q) * d + s]));
    }
  }
  model.corner_projection_ = model.corner_ * model.corner_.adjoint();
  model.corner_isometry_residual_ =
      operator_norm(model.corner_.adjoint() * model.corner_ - Matrix::Identity(dd, dd));

  const std::size_t nunits = d * d;
  Matrix trace_gram = Matrix::Zero(static_cast<Eigen::Index>(nunits), static_cast<Eigen::Index>(nunits));
  for (std::size_t u = 0; u < nunits; ++u) {
    for (std::size_t v = 0; v < nunits; ++v) {
      Complex acc = 0.0;
      for (std::size_t s = 0; s < d; ++s) {
        acc += model.coords_.col(static_cast<Eigen::Index>(corner[u * d + s]))
                   .dot(model.coords_.col(static_cast<Eigen::Index>(corner[v * d + s])));
      }
      trace_gram(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = acc;
    }
  }
  model.corner_min_eigenvalue_ = hermitian_eigenvalues(trace_gram)(0);
  return model;
}

std::vector<std::size_t> admissible_domain(const DilationModel &model, const Generator &g) {
  std::vector<std::size_t> out;
  const std::size_t d = model.dim();
  for (std::size_t c = 0; c < model.catalog().size(); ++c) {
    if (model.in_truncation(word_product(g.word(), model.catalog()[c].word()))) {
      for (std::size_t s = 0; s < d; ++s) out.push_back(c * d + s);
    }
  }
  return out;
}

RepresentedOperator represent_on(const DilationModel &model, const Generator &g,
                                 std::span<const std::size_t> domain) {
  const std::size_t d = model.dim();
  if (g.dim() != d) throw Error(ErrorCode::ShapeMismatch, "generator dimension differs from model");
  const auto rank = static_cast<Eigen::Index>(model.rank());
  const auto m = static_cast<Eigen::Index>(domain.size());
  Matrix sources(rank, m);
  Matrix images(rank, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const std::size_t alpha = domain[static_cast<std::size_t>(i)];
    if (alpha >= model.basis_size()) {
      throw Error(ErrorCode::ShapeMismatch, "basis index " + std::to_string(alpha) + " out of range");
    }
    const Generator &u = model.catalog()[alpha / d];
    const Generator image = gen_product(g, u);
    if (!model.in_truncation(image.word())) {
      throw Error(ErrorCode::OutOfTruncation,
                  g.word().to_string() + " times basis element " + describe(u, d) +
                      " gives " + image.word().to_string());
    }
    sources.col(i) = model.coords().col(static_cast<Eigen::Index>(alpha));
    images.col(i) = model.vector_of(image, alpha % d);
  }

  RepresentedOperator out;
  out.domain.assign(domain.begin(), domain.end());
  if (m == 0 || rank == 0) {
    out.matrix = Matrix::Zero(rank, rank);
    return out;
  }
  // T sources = images in the least-squares sense, minimal norm:
  // sources^* T^* = images^*.
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(1e-10);
  cod.compute(sources.adjoint());
  out.matrix = cod.solve(images.adjoint()).adjoint();
  const Matrix misfit = out.matrix * sources - images;
  out.well_definedness_residual = misfit.colwise().norm().maxCoeff();
  return out;
}

RepresentedOperator represent(const DilationModel &model, const Generator &g) {
  std::vector<std::size_t> all(model.basis_size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return represent_on(model, g, all);
}

Compression compress_to_A(const DilationModel &model, const Matrix &x) {
  const auto rank = static_cast<Eigen::Index>(model.rank());
  if (x.rows() != rank || x.cols() != rank) {
    throw Error(ErrorCode::ShapeMismatch, "operator is not rank x rank");
  }
  if (!(model.corner_min_eigenvalue() > kCornerTol) ||
      !(model.corner_isometry_residual() < 1e-6)) {
    throw Error(ErrorCode::CornerDegenerate,
                "corner Gram minimum eigenvalue " + std::to_string(model.corner_min_eigenvalue()));
  }
  const std::size_t d = model.dim();
  Compression out;
  out.value = model.corner_isometry().adjoint() * x * model.corner_isometry();

  // ((0), E_pq) (x) e_s is W(E_pq e_s) = delta_{qs} W e_p in the quotient, so
  // <(pq, s), x (p'q', s')> must equal delta_{qs} delta_{q's'} value(p, p').
  const std::vector<std::size_t> corner = model.corner_basis();
  for (std::size_t a = 0; a < corner.size(); ++a) {
    const std::size_t p = a / (d * d), q = (a / d) % d, s = a % d;
    const Eigen::VectorXcd xa = model.coords().col(static_cast<Eigen::Index>(corner[a]));
    for (std::size_t b = 0; b < corner.size(); ++b) {
      const std::size_t p2 = b / (d * d), q2 = (b / d) % d, s2 = b % d;
      const Eigen::VectorXcd xb = model.coords().col(static_cast<Eigen::Index>(corner[b]));
      const Complex measured = xa.dot(x * xb);
      const Complex predicted =
          (q == s && q2 == s2)
              ? out.value(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p2))
              : Complex(0.0);
      out.residual = std::max(out.residual, std::abs(measured - predicted));
    }
  }
  return out;
}

MomentFormulaReport verify_moment_formula(const DilationModel &model, std::size_t trials,
                                          std::uint64_t seed) {
  MomentFormulaReport report;
  report.seed = seed;
  const std::size_t d = model.dim();
  const auto &params = model.params();
  const std::vector<std::size_t> corner = model.corner_basis();
  const Word zero = make_word({0});
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(seed + t);
    const std::size_t k = 1 + rng.below(params.max_length + 2);
    std::vector<Index> indices(k);
    std::vector<Matrix> mats;
    for (auto &n : indices) n = static_cast<Index>(rng.below(params.max_height + 1));
    for (std::size_t i = 0; i < k; ++i) mats.push_back(random_unit_matrix(rng, d));

    Generator product = gen_make(IndexTuple({indices[0]}), {mats[0]});
    for (std::size_t i = 1; i < k; ++i) {
      product = gen_product(product, gen_make(IndexTuple({indices[i]}), {mats[i]}));
    }
    if (!model.in_truncation(word_product(product.word(), zero))) {
      ++report.skipped;
      continue;
    }
    ++report.accepted;
    const RepresentedOperator op = represent_on(model, product, corner);
    const Matrix via_dilation = compress_to_A(model, op.matrix).value;
    const Matrix via_recursion = moment_eval(IndexTuple(indices), mats, model.channel());
    report.max_residual = std::max(report.max_residual, operator_norm(via_dilation - via_recursion));
  }
  report.skip_rate = trials == 0 ? 0.0 : static_cast<double>(report.skipped) / static_cast<double>(trials);
  report.pass = report.accepted > 0 && report.max_residual < report.threshold;
  return report;
}

StandardPropertiesReport verify_standard_properties(const DilationModel &model) {
  const Channel &phi = model.channel();
  if (!phi.is_unital(phi.tol_cp())) throw Error(ErrorCode::NotUnital, "phi(e) != e");
  const std::size_t d = model.dim();
  const auto dd = static_cast<Eigen::Index>(d);
  const std::vector<std::size_t> corner = model.corner_basis();
  StandardPropertiesReport report;

  const Generator shifted_unit = gen_make(IndexTuple({1}), {Matrix::Identity(dd, dd)});
  const RepresentedOperator lifted = represent_on(model, shifted_unit, corner);
  for (auto alpha : corner) {
    const Eigen::VectorXcd xi = model.coords().col(static_cast<Eigen::Index>(alpha));
    report.corner_identity_residual =
        std::max(report.corner_identity_residual, (lifted.matrix * xi - xi).norm());
  }

  const Word zero = make_word({0});
  for (const auto &g : model.catalog()) {
    if (!model.in_truncation(word_product(g.word(), zero))) continue;
    const RepresentedOperator op = represent_on(model, g, corner);
    const Matrix compressed = compress_to_A(model, op.matrix).value;
    report.hereditarity_residual =
        std::max(report.hereditarity_residual, operator_norm(compressed - expectation_E0(g, phi)));
    ++report.generators_checked;
  }
  report.pass = report.corner_identity_residual < report.threshold &&
                report.hereditarity_residual < report.threshold;
  return report;
}

}  // namespace ncdyn

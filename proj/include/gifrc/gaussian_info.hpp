/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The gifrc Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

// Exact mutual information between linear Gaussian observables.
//
// A GaussianSystem is a list of mutually independent zero-mean Gaussian
// sources and a list of named observables, each a fixed linear combination
// of the sources. Every conditional covariance is computed on the whitened
// factor G (row k of G is the coefficient vector of observable k scaled by
// the source standard deviations): conditioning on C removes the row space
// of G_C, so Cov(B | C) = (G_B Q)(G_B Q)^T with Q an orthonormal basis of the
// complement. This never squares the condition number and handles singular
// conditioning sets (zero-power inputs, deterministic relay signals) without
// special cases.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gifrc/common.hpp"

namespace gifrc {

struct Source {
  std::string name;
  double variance = 0.0;
};

struct Observable {
  std::string name;
  std::vector<double> coeffs;  // one entry per source, in declaration order
};

/// One term of a linear combination. The name may refer to a source or to an
/// already declared observable (which is expanded into its coefficients).
struct Term {
  std::string name;
  double coeff = 1.0;
};

class GaussianSystem {
 public:
  void add_source(std::string name, double variance) {
    if (!(variance >= 0.0) || !std::isfinite(variance)) {
      throw Error("source '" + name + "' has invalid variance");
    }
    if (source_index_.contains(name)) throw Error("duplicate source '" + name + "'");
    source_index_.emplace(name, sources_.size());
    sources_.push_back({std::move(name), variance});
    for (auto& obs : observables_) obs.coeffs.push_back(0.0);
  }

  void add_observable(std::string name, std::span<const Term> terms) {
    std::vector<double> coeffs(sources_.size(), 0.0);
    for (const auto& t : terms) {
      if (auto s = source_index_.find(t.name); s != source_index_.end()) {
        coeffs[s->second] += t.coeff;
      } else if (auto o = observable_index_.find(t.name); o != observable_index_.end()) {
        const auto& inner = observables_[o->second].coeffs;
        for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += t.coeff * inner[k];
      } else {
        throw Error("unknown source or observable '" + t.name + "'");
      }
    }
    add_observable_coeffs(std::move(name), std::move(coeffs));
  }

  void add_observable(std::string name, std::initializer_list<Term> terms) {
    add_observable(std::move(name), std::span<const Term>(terms.begin(), terms.size()));
  }

  void add_observable_coeffs(std::string name, std::vector<double> coeffs) {
    if (coeffs.size() != sources_.size()) {
      throw Error("observable '" + name + "' has wrong coefficient count");
    }
    for (double c : coeffs) {
      if (!std::isfinite(c)) throw Error("observable '" + name + "' has non-finite coefficient");
    }
    if (observable_index_.contains(name)) throw Error("duplicate observable '" + name + "'");
    observable_index_.emplace(name, observables_.size());
    observables_.push_back({std::move(name), std::move(coeffs)});
  }

  [[nodiscard]] std::span<const Source> sources() const { return sources_; }
  [[nodiscard]] std::span<const Observable> observables() const { return observables_; }

  [[nodiscard]] bool has_observable(std::string_view name) const {
    return observable_index_.contains(std::string(name));
  }

  [[nodiscard]] const Observable& observable(std::string_view name) const {
    auto it = observable_index_.find(std::string(name));
    if (it == observable_index_.end()) throw Error("unknown observable '" + std::string(name) + "'");
    return observables_[it->second];
  }

  /// Whitened factor: row i is observable names[i] scaled by source std-devs.
  [[nodiscard]] Eigen::MatrixXd factor(std::span<const std::string> names) const {
    Eigen::MatrixXd g(static_cast<Eigen::Index>(names.size()),
                      static_cast<Eigen::Index>(sources_.size()));
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& obs = observable(names[i]);
      for (std::size_t k = 0; k < sources_.size(); ++k) {
        g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
            obs.coeffs[k] * std::sqrt(sources_[k].variance);
      }
    }
    return g;
  }

 private:
  std::vector<Source> sources_;
  std::vector<Observable> observables_;
  std::unordered_map<std::string, std::size_t> source_index_;
  std::unordered_map<std::string, std::size_t> observable_index_;
};

/// I(A; B | C). A and B must be non-empty; all three pairwise disjoint.
struct MIQuery {
  std::vector<std::string> a;
  std::vector<std::string> b;
  std::vector<std::string> c;
};

namespace detail {

// Singular values below this fraction of the reference scale are structural
// zeros. Applied to singular values of whitened factors, so it corresponds to
// 1e-24 on covariance eigenvalues.
inline constexpr double kRankTol = 1e-12;

inline constexpr double kNegativeSlack = 1e-9;

inline std::vector<std::string> concat(std::span<const std::string> x,
                                       std::span<const std::string> y) {
  std::vector<std::string> out(x.begin(), x.end());
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

/// Orthonormal basis (columns) of the orthogonal complement of the row space of g.
inline Eigen::MatrixXd complement_basis(const Eigen::MatrixXd& g, Eigen::Index dim) {
  if (g.rows() == 0) return Eigen::MatrixXd::Identity(dim, dim);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    const double tol = kRankTol * s(0);
    while (rank < s.size() && s(rank) > tol) ++rank;
  }
  return svd.matrixV().rightCols(dim - rank);
}

inline void validate(const MIQuery& q) {
  if (q.a.empty() || q.b.empty()) throw Error("mutual information needs non-empty A and B");
  auto overlaps = [](const std::vector<std::string>& x, const std::vector<std::string>& y) {
    return std::any_of(x.begin(), x.end(), [&](const std::string& n) {
      return std::find(y.begin(), y.end(), n) != y.end();
    });
  };
  if (overlaps(q.a, q.b) || overlaps(q.a, q.c) || overlaps(q.b, q.c)) {
    throw Error("mutual information query sets must be pairwise disjoint");
  }
}

}  // namespace detail

/// Joint covariance of the named observables.
inline Eigen::MatrixXd covariance(const GaussianSystem& sys, std::span<const std::string> names) {
  const Eigen::MatrixXd g = sys.factor(names);
  Eigen::MatrixXd cov = g * g.transpose();
  // exact symmetry
  cov = 0.5 * (cov + cov.transpose()).eval();
  return cov;
}

inline Eigen::MatrixXd covariance(const GaussianSystem& sys, std::initializer_list<std::string> names) {
  return covariance(sys, std::span<const std::string>(names.begin(), names.size()));
}

/// Cov(B | C).
inline Eigen::MatrixXd conditional_covariance(const GaussianSystem& sys,
                                              std::span<const std::string> b,
                                              std::span<const std::string> c) {
  const auto dim = static_cast<Eigen::Index>(sys.sources().size());
  const Eigen::MatrixXd r = sys.factor(b) * detail::complement_basis(sys.factor(c), dim);
  Eigen::MatrixXd cov = r * r.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return cov;
}

inline Eigen::MatrixXd conditional_covariance(const GaussianSystem& sys, std::initializer_list<std::string> b,
                                              std::initializer_list<std::string> c) {
  return conditional_covariance(sys, std::span<const std::string>(b.begin(), b.size()),
                                std::span<const std::string>(c.begin(), c.size()));
}

/// I(A; B | C) in bits. Singular Cov(B|C) is handled on its range space; if B
/// is deterministic given (A, C) but not given C the result is +infinity.
inline double mutual_information(const GaussianSystem& sys, const MIQuery& q) {
  detail::validate(q);
  const auto dim = static_cast<Eigen::Index>(sys.sources().size());
  const Eigen::MatrixXd gb = sys.factor(q.b);
  const Eigen::MatrixXd r_c = gb * detail::complement_basis(sys.factor(q.c), dim);
  const Eigen::MatrixXd r_ac =
      gb * detail::complement_basis(sys.factor(detail::concat(q.a, q.c)), dim);

  const double scale = gb.norm();
  if (scale == 0.0 || r_c.cols() == 0) return 0.0;
  const double tol = detail::kRankTol * scale;

  Eigen::JacobiSVD<Eigen::MatrixXd> outer(r_c, Eigen::ComputeThinU);
  const auto& s = outer.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol) ++rank;
  if (rank == 0) return 0.0;

  const Eigen::MatrixXd projected = outer.matrixU().leftCols(rank).transpose() * r_ac;
  if (projected.cols() < rank) return kInf;
  Eigen::JacobiSVD<Eigen::MatrixXd> inner(projected);
  const auto& t = inner.singularValues();
  if (t(rank - 1) <= tol) return kInf;

  double bits = 0.0;
  for (Eigen::Index i = 0; i < rank; ++i) bits += std::log2(s(i)) - std::log2(t(i));
  if (bits < 0.0) {
    if (bits < -detail::kNegativeSlack) {
      throw Error("negative mutual information: covariance is not positive semidefinite");
    }
    bits = 0.0;
  }
  return bits;
}

/// Shorthand for mutual_information(sys, {a, b, c}).
inline double mi(const GaussianSystem& sys, std::vector<std::string> a, std::vector<std::string> b,
                 std::vector<std::string> c = {}) {
  return mutual_information(sys, MIQuery{std::move(a), std::move(b), std::move(c)});
}

struct McEstimate {
  double bits = 0.0;
  double stderr_bits = 0.0;
};

/// Monte-Carlo estimate of I(A; B | C): sample the joint law and average
/// log2 p(b | a, c) - log2 p(b | c) with exact Gaussian conditional densities.
/// Uses Cholesky solves on the plain covariance, independent of the factor-space
/// path of mutual_information. Requires nondegenerate conditionals.
inline McEstimate mc_estimate_mi(const GaussianSystem& sys, const MIQuery& q,
                                 std::size_t n_samples, std::uint64_t seed) {
  detail::validate(q);
  if (n_samples < 1000) throw Error("mc_estimate_mi needs at least 1000 samples");

  const auto na = static_cast<Eigen::Index>(q.a.size());
  const auto nb = static_cast<Eigen::Index>(q.b.size());
  const auto nc = static_cast<Eigen::Index>(q.c.size());
  const auto nac = na + nc;

  // joint ordering: [A, C, B]
  const auto names = detail::concat(detail::concat(q.a, q.c), q.b);
  std::vector<std::vector<double>> rows;
  for (const auto& n : names) rows.push_back(sys.observable(n).coeffs);
  const auto srcs = sys.sources();
  const auto dim = static_cast<Eigen::Index>(srcs.size());
  Eigen::MatrixXd coeff(static_cast<Eigen::Index>(names.size()), dim);
  for (Eigen::Index i = 0; i < coeff.rows(); ++i) {
    for (Eigen::Index k = 0; k < dim; ++k) coeff(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  }
  Eigen::VectorXd var(dim);
  for (Eigen::Index k = 0; k < dim; ++k) var(k) = srcs[static_cast<std::size_t>(k)].variance;
  const Eigen::MatrixXd sigma = coeff * var.asDiagonal() * coeff.transpose();

  struct Conditional {
    Eigen::MatrixXd gain;      // E[B | X] = gain * x
    Eigen::LLT<Eigen::MatrixXd> chol;
    double log_det = 0.0;
  };
  auto conditional = [&](Eigen::Index offset, Eigen::Index count) {
    Conditional out;
    const Eigen::MatrixXd sbb = sigma.block(nac, nac, nb, nb);
    Eigen::MatrixXd cond = sbb;
    if (count > 0) {
      const Eigen::MatrixXd sxx = sigma.block(offset, offset, count, count);
      const Eigen::MatrixXd sbx = sigma.block(nac, offset, nb, count);
      Eigen::LLT<Eigen::MatrixXd> lx(sxx);
      if (lx.info() != Eigen::Success) throw Error("mc_estimate_mi: degenerate conditioning covariance");
      out.gain = lx.solve(sbx.transpose()).transpose();
      cond = sbb - out.gain * sbx.transpose();
    } else {
      out.gain = Eigen::MatrixXd::Zero(nb, 0);
    }
    out.chol.compute(cond);
    if (out.chol.info() != Eigen::Success) throw Error("mc_estimate_mi: degenerate conditional covariance");
    const Eigen::MatrixXd l = out.chol.matrixL();
    for (Eigen::Index i = 0; i < nb; ++i) {
      const double d = l(i, i);
      if (!(d > 0.0)) throw Error("mc_estimate_mi: degenerate conditional covariance");
      out.log_det += 2.0 * std::log(d);
    }
    return out;
  };
  const Conditional given_ac = conditional(0, nac);
  const Conditional given_c = conditional(na, nc);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd w(dim);
  const Eigen::VectorXd sd = var.cwiseSqrt();
  double sum = 0.0;
  double sum_sq = 0.0;
  const double log2e = 1.0 / std::log(2.0);
  for (std::size_t n = 0; n < n_samples; ++n) {
    for (Eigen::Index k = 0; k < dim; ++k) w(k) = sd(k) * normal(rng);
    const Eigen::VectorXd x = coeff * w;
    const Eigen::VectorXd b = x.tail(nb);
    const Eigen::VectorXd e1 = b - given_ac.gain * x.head(nac);
    const Eigen::VectorXd e2 = b - given_c.gain * x.segment(na, nc);
    const double q1 = e1.dot(given_ac.chol.solve(e1));
    const double q2 = e2.dot(given_c.chol.solve(e2));
    const double term = 0.5 * ((q2 - q1) + (given_c.log_det - given_ac.log_det)) * log2e;
    sum += term;
    sum_sq += term * term;
  }
  const double mean = sum / static_cast<double>(n_samples);
  const double variance =
      std::max(0.0, sum_sq / static_cast<double>(n_samples) - mean * mean);
  return {mean, std::sqrt(variance / static_cast<double>(n_samples))};
}

}  // namespace gifrc

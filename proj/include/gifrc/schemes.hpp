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

// Achievable sum rates for the Gaussian interference relay channel:
// compress-and-forward with rate splitting (CF), generalized CF (GCF),
// generalized hash-and-forward (GHF), the noisy-network-coding substitution
// (NNC) and nested-lattice compute-and-forward. Every information quantity is
// evaluated by the GaussianSystem engine on the model built by build_system.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gifrc/channel.hpp"
#include "gifrc/common.hpp"
#include "gifrc/gaussian_info.hpp"
#include "gifrc/param_search.hpp"

namespace gifrc {

/// Common-message power fractions and compression noise. sigma2 = +inf is the
/// limit in which the compressed relay observation carries nothing.
struct CFParams {
  double alpha = 0.0;
  double beta = 0.0;
  double sigma2 = 1.0;

  void validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0)) {
      throw Error("power splits must lie in [0,1]");
    }
    if (!(sigma2 > 0.0)) throw Error("compression noise variance must be positive");
  }
};

/// XR = c1 X1 + c2 X2 + X~R, with var(X~R) = PR - c1^2 P1 - c2^2 P2.
struct RelayCorrelation {
  double c1 = 0.0;
  double c2 = 0.0;
};

struct RateResult {
  double value = 0.0;  // sum rate R1 + R2, bits per channel use
  double r1 = 0.0;
  double r2 = 0.0;
  std::optional<CFParams> params{};
  bool feasible = true;
  std::string binding{};  // active constraints at the reported point, '|'-separated
  std::string note{};
};

enum class Scheme { CF, GCF, GHF, NNC, Lattice };
enum class Mode { Noise, Decode, Split };

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::CF: return "cf";
    case Scheme::GCF: return "gcf";
    case Scheme::GHF: return "ghf";
    case Scheme::NNC: return "nnc";
    case Scheme::Lattice: return "lattice";
  }
  return "?";
}

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Noise: return "noise";
    case Mode::Decode: return "decode";
    case Mode::Split: return "split";
  }
  return "?";
}

/// Gaussian inputs for one channel. Sources U1 V1 U2 V2 XRt Z1 Z2 ZR Zq;
/// observables U1 U2 X1 X2 XR Y1 Y2 YR YRhat. Without `split` all power is in
/// the private parts V1, V2.
inline GaussianSystem build_system(const Channel& ch, const CFParams& p, bool split,
                                   std::optional<RelayCorrelation> relay_corr = std::nullopt) {
  ch.validate();
  p.validate();
  const double a = split ? p.alpha : 0.0;
  const double b = split ? p.beta : 0.0;
  const RelayCorrelation rc = relay_corr.value_or(RelayCorrelation{});
  double fresh = ch.PR - rc.c1 * rc.c1 * ch.P1 - rc.c2 * rc.c2 * ch.P2;
  if (fresh < -1e-12 * std::max(1.0, ch.PR)) throw Error("relay correlation exceeds the relay power");
  fresh = std::max(0.0, fresh);
  const bool discard = std::isinf(p.sigma2);

  GaussianSystem sys;
  sys.add_source("U1", a * ch.P1);
  sys.add_source("V1", (1.0 - a) * ch.P1);
  sys.add_source("U2", b * ch.P2);
  sys.add_source("V2", (1.0 - b) * ch.P2);
  sys.add_source("XRt", fresh);
  sys.add_source("Z1", 1.0);
  sys.add_source("Z2", 1.0);
  sys.add_source("ZR", 1.0);
  sys.add_source("Zq", discard ? 0.0 : p.sigma2);

  sys.add_observable("U1", {{"U1", 1.0}});
  sys.add_observable("U2", {{"U2", 1.0}});
  sys.add_observable("X1", {{"U1", 1.0}, {"V1", 1.0}});
  sys.add_observable("X2", {{"U2", 1.0}, {"V2", 1.0}});
  sys.add_observable("XR", {{"X1", rc.c1}, {"X2", rc.c2}, {"XRt", 1.0}});
  sys.add_observable("Y1", {{"X1", ch.h11}, {"X2", ch.h21}, {"XR", ch.hR1}, {"Z1", 1.0}});
  sys.add_observable("Y2", {{"X1", ch.h12}, {"X2", ch.h22}, {"XR", ch.hR2}, {"Z2", 1.0}});
  sys.add_observable("YR", {{"X1", ch.h1R}, {"X2", ch.h2R}, {"ZR", 1.0}});
  if (discard) {
    sys.add_observable("YRhat", {});
  } else {
    sys.add_observable("YRhat", {{"YR", 1.0}, {"Zq", 1.0}});
  }
  return sys;
}

namespace detail {

inline constexpr double kFeasTol = 1e-12;

inline std::string dest(int i) { return "Y" + std::to_string(i); }
inline std::string input(int i) { return "X" + std::to_string(i); }

/// min over destinations of I(XR; Yi): the relay-to-destination bin rate.
inline double relay_rate(const GaussianSystem& sys) {
  return std::min(mi(sys, {"XR"}, {"Y1"}), mi(sys, {"XR"}, {"Y2"}));
}

inline std::string join_binding(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += '|';
    out += p;
  }
  return out;
}

// Per-user caps and sum cap -> operating point maximizing R1 + R2, then R1.
inline RateResult corner(double cap1, double cap2, double sum_cap) {
  cap1 = std::max(0.0, cap1);
  cap2 = std::max(0.0, cap2);
  sum_cap = std::max(0.0, sum_cap);
  RateResult r;
  r.value = std::min(cap1 + cap2, sum_cap);
  r.r1 = std::min(cap1, r.value);
  r.r2 = r.value - r.r1;
  return r;
}

struct MinTerm {
  double value = 0.0;
  bool second = false;  // true when the R0-dependent term binds
};

inline MinTerm min_term(double first, double second) {
  return second < first ? MinTerm{second, true} : MinTerm{first, false};
}

}  // namespace detail

/// Binning feasibility of CF: min_i I(XR;Yi) >= max_i I(YR;YRhat | XR, Yi).
inline bool cf_feasible(const Channel& ch, const CFParams& p) {
  const auto sys = build_system(ch, p, true);
  const double r0 = detail::relay_rate(sys);
  const double need = std::max(mi(sys, {"YR"}, {"YRhat"}, {"XR", "Y1"}),
                               mi(sys, {"YR"}, {"YRhat"}, {"XR", "Y2"}));
  return r0 >= need - detail::kFeasTol;
}

/// Smallest compression noise satisfying the CF binning condition. Rates only
/// decrease in sigma2 and the condition only depends on total input powers, so
/// this is the optimal sigma2 for every power split. +inf when the relay link
/// carries nothing.
inline double cf_min_sigma2(const Channel& ch) {
  const auto sys = build_system(ch, CFParams{0.0, 0.0, 1.0}, false);
  const double r0 = detail::relay_rate(sys);
  const double denom = std::exp2(2.0 * r0) - 1.0;
  if (!(denom > 0.0)) return kInf;
  double v = 0.0;
  for (const char* y : {"Y1", "Y2"}) {
    const std::array<std::string, 1> b{"YR"};
    const std::array<std::string, 2> c{"XR", y};
    v = std::max(v, conditional_covariance(sys, b, c)(0, 0));
  }
  const double s2 = v / denom;
  return s2 > 0.0 ? s2 * (1.0 + 1e-12) : kInf;
}

namespace detail {

// Rows of the rate-splitting polytope over (R10, R11, R20, R22): four per
// destination (own private; own common + private; own private + other common;
// all three), then the four non-negativity rows.
struct CfPolytope {
  static constexpr int kRows = 12;
  std::array<std::array<double, 4>, kRows> coef{};
  std::array<const char*, kRows> name{};
  struct Vertex {
    std::array<int, 4> rows;
    Eigen::Matrix4d inverse;
  };
  std::vector<Vertex> vertices;  // every invertible 4-subset of rows

  CfPolytope() {
    int r = 0;
    auto row = [&](std::initializer_list<int> idx, double sign, const char* n) {
      coef[static_cast<std::size_t>(r)] = {0, 0, 0, 0};
      for (int k : idx) coef[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = sign;
      name[static_cast<std::size_t>(r)] = n;
      ++r;
    };
    row({1}, 1, "D1:private");
    row({0, 1}, 1, "D1:own");
    row({1, 2}, 1, "D1:private+cross");
    row({0, 1, 2}, 1, "D1:all");
    row({3}, 1, "D2:private");
    row({2, 3}, 1, "D2:own");
    row({3, 0}, 1, "D2:private+cross");
    row({2, 3, 0}, 1, "D2:all");
    for (int k = 0; k < 4; ++k) row({k}, -1, "nonneg");
    for (int a = 0; a < kRows; ++a)
      for (int b = a + 1; b < kRows; ++b)
        for (int c = b + 1; c < kRows; ++c)
          for (int d = c + 1; d < kRows; ++d) {
            Eigen::Matrix4d m;
            const std::array<int, 4> act{a, b, c, d};
            for (int i = 0; i < 4; ++i)
              for (int k = 0; k < 4; ++k) {
                m(i, k) = coef[static_cast<std::size_t>(act[static_cast<std::size_t>(i)])][static_cast<std::size_t>(k)];
              }
            Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
            if (lu.isInvertible()) vertices.push_back({act, lu.inverse()});
          }
  }

  static const CfPolytope& instance() {
    static const CfPolytope p;
    return p;
  }
};

}  // namespace detail

/// Rate-splitting CF region at fixed (alpha, beta, sigma2); reports the corner
/// of the (R10, R11, R20, R22) polytope with the largest R1 + R2 (then R1).
inline RateResult cf_rates(const Channel& ch, const CFParams& p) {
  RateResult out;
  out.params = p;
  const auto sys = build_system(ch, p, true);
  const double r0 = detail::relay_rate(sys);
  const double need = std::max(mi(sys, {"YR"}, {"YRhat"}, {"XR", "Y1"}),
                               mi(sys, {"YR"}, {"YRhat"}, {"XR", "Y2"}));
  if (r0 < need - detail::kFeasTol) {
    out.feasible = false;
    out.note = "compression rate exceeds relay link";
    return out;
  }

  const auto& poly = detail::CfPolytope::instance();
  std::array<double, detail::CfPolytope::kRows> rhs{};
  for (int i = 1; i <= 2; ++i) {
    const int j = 3 - i;
    const std::string Ui = "U" + std::to_string(i), Uj = "U" + std::to_string(j);
    const std::string Xi = detail::input(i), Yi = detail::dest(i);
    const auto base = static_cast<std::size_t>(4 * (i - 1));
    rhs[base + 0] = mi(sys, {Xi}, {"YRhat", Yi}, {Ui, Uj, "XR"});
    rhs[base + 1] = mi(sys, {Xi}, {"YRhat", Yi}, {Uj, "XR"});
    rhs[base + 2] = mi(sys, {Uj, Xi}, {"YRhat", Yi}, {Ui, "XR"});
    rhs[base + 3] = mi(sys, {Uj, Xi}, {"YRhat", Yi}, {"XR"});
  }

  auto lhs = [&](std::size_t row, const Eigen::Vector4d& x) {
    double v = 0.0;
    for (int k = 0; k < 4; ++k) v += poly.coef[row][static_cast<std::size_t>(k)] * x(k);
    return v;
  };
  double best_sum = -1.0, best_r1 = -1.0;
  Eigen::Vector4d best_x = Eigen::Vector4d::Zero();
  for (const auto& v : poly.vertices) {
    Eigen::Vector4d b;
    for (int i = 0; i < 4; ++i) b(i) = rhs[static_cast<std::size_t>(v.rows[static_cast<std::size_t>(i)])];
    const Eigen::Vector4d x = v.inverse * b;
    bool ok = true;
    for (std::size_t r = 0; r < rhs.size() && ok; ++r) ok = lhs(r, x) <= rhs[r] + 1e-10;
    if (!ok) continue;
    const double sum = x.sum();
    const double r1 = x(0) + x(1);
    if (sum > best_sum + 1e-12 || (std::abs(sum - best_sum) <= 1e-12 && r1 > best_r1 + 1e-12)) {
      best_sum = sum;
      best_r1 = r1;
      best_x = x;
    }
  }
  std::vector<std::string> active;
  for (std::size_t r = 0; r < 8; ++r) {
    if (std::abs(lhs(r, best_x) - rhs[r]) <= 1e-9) active.emplace_back(poly.name[r]);
  }
  out.r1 = std::max(0.0, best_x(0) + best_x(1));
  out.r2 = std::max(0.0, best_x(2) + best_x(3));
  out.value = out.r1 + out.r2;
  out.binding = detail::join_binding(active);
  return out;
}

/// GCF, destinations treat interference as noise (no sum constraint).
inline RateResult gcf1_rates(const Channel& ch, double sigma2) {
  const auto sys = build_system(ch, CFParams{0.0, 0.0, sigma2}, false);
  const double r0 = detail::relay_rate(sys);
  std::array<double, 2> cap{};
  std::vector<std::string> binding;
  for (int i = 1; i <= 2; ++i) {
    const std::string Xi = detail::input(i), Yi = detail::dest(i);
    const double first = mi(sys, {Xi}, {"YRhat", Yi}, {"XR"});
    const double second = mi(sys, {Xi}, {Yi}, {"XR"}) + r0 - mi(sys, {"YR"}, {"YRhat"}, {Xi, "XR", Yi});
    const auto t = detail::min_term(first, second);
    cap[static_cast<std::size_t>(i - 1)] = t.value;
    binding.push_back("R" + std::to_string(i) + (t.second ? ":relay" : ":joint"));
  }
  auto r = detail::corner(cap[0], cap[1], kInf);
  r.params = CFParams{0.0, 0.0, sigma2};
  r.binding = detail::join_binding(binding);
  return r;
}

/// GCF, destinations decode the interference.
inline RateResult gcf2_rates(const Channel& ch, double sigma2) {
  const auto sys = build_system(ch, CFParams{0.0, 0.0, sigma2}, false);
  const double r0 = detail::relay_rate(sys);
  std::array<double, 2> cap{};
  std::vector<std::string> binding;
  for (int i = 1; i <= 2; ++i) {
    const int j = 3 - i;
    const std::string Xi = detail::input(i), Xj = detail::input(j), Yi = detail::dest(i);
    const double first = mi(sys, {Xi}, {"YRhat", Yi}, {Xj, "XR"});
    const double second =
        mi(sys, {Xi}, {Yi}, {Xj, "XR"}) + r0 - mi(sys, {"YR"}, {"YRhat"}, {"X1", "X2", "XR", Yi});
    cap[static_cast<std::size_t>(i - 1)] = detail::min_term(first, second).value;
  }
  double sum_cap = kInf;
  int sum_dest = 0;
  bool sum_second = false;
  for (int i = 1; i <= 2; ++i) {
    const std::string Yi = detail::dest(i);
    const double first = mi(sys, {"X1", "X2"}, {"YRhat", Yi}, {"XR"});
    const double second =
        mi(sys, {"X1", "X2"}, {Yi}, {"XR"}) + r0 - mi(sys, {"YR"}, {"YRhat"}, {"X1", "X2", "XR", Yi});
    const auto t = detail::min_term(first, second);
    if (t.value < sum_cap) {
      sum_cap = t.value;
      sum_dest = i;
      sum_second = t.second;
    }
  }
  auto r = detail::corner(cap[0], cap[1], sum_cap);
  r.params = CFParams{0.0, 0.0, sigma2};
  if (sum_cap < std::max(0.0, cap[0]) + std::max(0.0, cap[1])) {
    binding.push_back("sum@D" + std::to_string(sum_dest) + (sum_second ? ":relay" : ":joint"));
  } else {
    binding.push_back("R1");
    binding.push_back("R2");
  }
  r.binding = detail::join_binding(binding);
  return r;
}

/// Condition under which hashing the compression index is supportable:
/// min_i I(XR;Yi) <= min_i I(YR;YRhat | XR, Yi).
inline bool ghf_feasible(const Channel& ch, double sigma2) {
  const auto sys = build_system(ch, CFParams{0.0, 0.0, sigma2}, false);
  const double r0 = detail::relay_rate(sys);
  const double desc = std::min(mi(sys, {"YR"}, {"YRhat"}, {"XR", "Y1"}),
                               mi(sys, {"YR"}, {"YRhat"}, {"XR", "Y2"}));
  return r0 <= desc + detail::kFeasTol;
}

/// Generalized hash-and-forward. Decode mode: per-user and sum constraints;
/// noise mode: per-user constraints only.
inline RateResult ghf_rates(const Channel& ch, double sigma2, Mode mode) {
  RateResult out;
  out.params = CFParams{0.0, 0.0, sigma2};
  if (!ghf_feasible(ch, sigma2)) {
    out.feasible = false;
    out.note = "relay bin rate exceeds compression description rate";
    return out;
  }
  const auto sys = build_system(ch, CFParams{0.0, 0.0, sigma2}, false);
  const double r0 = detail::relay_rate(sys);
  std::array<double, 2> cap{};
  for (int i = 1; i <= 2; ++i) {
    const int j = 3 - i;
    const std::string Xi = detail::input(i), Xj = detail::input(j), Yi = detail::dest(i);
    if (mode == Mode::Decode) {
      cap[static_cast<std::size_t>(i - 1)] =
          mi(sys, {Xi}, {Yi}, {Xj, "XR"}) + r0 - mi(sys, {"YR"}, {"YRhat"}, {"X1", "X2", "XR", Yi});
    } else {
      cap[static_cast<std::size_t>(i - 1)] =
          mi(sys, {Xi}, {Yi}, {"XR"}) + r0 - mi(sys, {"YR"}, {"YRhat"}, {Xi, "XR", Yi});
    }
  }
  double sum_cap = kInf;
  if (mode == Mode::Decode) {
    for (int i = 1; i <= 2; ++i) {
      const std::string Yi = detail::dest(i);
      sum_cap = std::min(sum_cap, mi(sys, {"X1", "X2"}, {Yi}, {"XR"}) + r0 -
                                      mi(sys, {"YR"}, {"YRhat"}, {"X1", "X2", "XR", Yi}));
    }
  }
  auto r = detail::corner(cap[0], cap[1], sum_cap);
  r.params = out.params;
  r.binding = sum_cap < std::max(0.0, cap[0]) + std::max(0.0, cap[1]) ? "sum" : "R1|R2";
  return r;
}

/// Noisy network coding: every "I(.;Yi|.,XR) + R0" term of GCF becomes
/// "I(.,XR; Yi|.)", with no binning condition. The per-user substitution is
/// the natural analogue of the published sum-rate substitution.
inline RateResult nnc_rates(const Channel& ch, double sigma2, Mode mode) {
  const auto sys = build_system(ch, CFParams{0.0, 0.0, sigma2}, false);
  std::array<double, 2> cap{};
  for (int i = 1; i <= 2; ++i) {
    const int j = 3 - i;
    const std::string Xi = detail::input(i), Xj = detail::input(j), Yi = detail::dest(i);
    if (mode == Mode::Decode) {
      const double first = mi(sys, {Xi}, {"YRhat", Yi}, {Xj, "XR"});
      const double second =
          mi(sys, {Xi, "XR"}, {Yi}, {Xj}) - mi(sys, {"YR"}, {"YRhat"}, {"X1", "X2", "XR", Yi});
      cap[static_cast<std::size_t>(i - 1)] = std::min(first, second);
    } else {
      const double first = mi(sys, {Xi}, {"YRhat", Yi}, {"XR"});
      const double second = mi(sys, {Xi, "XR"}, {Yi}) - mi(sys, {"YR"}, {"YRhat"}, {Xi, "XR", Yi});
      cap[static_cast<std::size_t>(i - 1)] = std::min(first, second);
    }
  }
  double sum_cap = kInf;
  if (mode == Mode::Decode) {
    for (int i = 1; i <= 2; ++i) {
      const std::string Yi = detail::dest(i);
      const double first = mi(sys, {"X1", "X2"}, {"YRhat", Yi}, {"XR"});
      const double second =
          mi(sys, {"X1", "X2", "XR"}, {Yi}) - mi(sys, {"YR"}, {"YRhat"}, {"X1", "X2", "XR", Yi});
      sum_cap = std::min({sum_cap, first, second});
    }
  }
  auto r = detail::corner(cap[0], cap[1], sum_cap);
  r.params = CFParams{0.0, 0.0, sigma2};
  r.binding = sum_cap < std::max(0.0, cap[0]) + std::max(0.0, cap[1]) ? "sum" : "R1|R2";
  r.note = "per-user NNC bounds use the analogous substitution";
  return r;
}

/// Symmetric rate of nested-lattice compute-and-forward: the minimum of the
/// three MAC constraints at each destination (direct link treated as noise)
/// and the modulo-sum decoding constraint at the relay. r1 = r2 = R.
inline RateResult lattice_caf_rate(const SymmetricChannel& sc) {
  sc.expand().validate();
  const double noise = 1.0 + sc.hd * sc.hd * sc.P;
  const std::array<std::pair<double, const char*>, 4> terms{{
      {half_log2(1.0 + sc.hc * sc.hc * sc.P / noise), "cross"},
      {half_log2(1.0 + sc.hR * sc.hR * sc.PR / noise), "relay"},
      {0.5 * half_log2(1.0 + (sc.hc * sc.hc * sc.P + sc.hR * sc.hR * sc.PR) / noise), "mac-sum"},
      {std::max(0.0, half_log2(0.5 + sc.hs * sc.hs * sc.P)), "compute"},
  }};
  auto it = std::min_element(terms.begin(), terms.end(),
                             [](const auto& x, const auto& y) { return x.first < y.first; });
  RateResult r;
  r.r1 = r.r2 = std::max(0.0, it->first);
  r.value = r.r1 + r.r2;
  r.binding = it->second;
  return r;
}

/// Grid settings for the optimizers.
struct OptimizerGrid {
  int split_points = 101;     // alpha, beta
  int sigma2_points = 61;     // log-spaced
  double sigma2_lo = 1e-3;
  double sigma2_hi = 1e3;
  double sigma2_floor = 1e-12;  // edge extension limits
  double sigma2_ceiling = 1e12;
  int rounds = 3;
  double shrink = 0.2;
};

/// Maximizes the CF sum rate over (alpha, beta) at the smallest feasible
/// sigma2. Ties go to the larger common share. Noise mode pins alpha = beta = 0, decode mode alpha = beta = 1.
inline RateResult optimize_cf(const Channel& ch, Mode mode, const OptimizerGrid& grid = {}) {
  ch.validate();
  const double s2 = cf_min_sigma2(ch);
  if (mode != Mode::Split) {
    const double a = mode == Mode::Decode ? 1.0 : 0.0;
    return cf_rates(ch, CFParams{a, a, s2});
  }
  SearchSpec spec;
  spec.axes = {Axis{0.0, 1.0, grid.split_points}, Axis{0.0, 1.0, grid.split_points}};
  spec.rounds = grid.rounds;
  spec.shrink = grid.shrink;
  spec.tie_tol = 1e-10;
  // searched over the private fractions so that flat directions resolve
  // toward common messages
  auto objective = [&](std::span<const double> x) {
    const auto r = cf_rates(ch, CFParams{1.0 - x[0], 1.0 - x[1], s2});
    return r.feasible ? r.value : -kInf;
  };
  const auto best = grid_maximize(objective, spec);
  if (!best.feasible) {
    RateResult r;
    r.feasible = false;
    r.note = "no feasible compression";
    return r;
  }
  return cf_rates(ch, CFParams{1.0 - best.argmax[0], 1.0 - best.argmax[1], s2});
}

/// Evaluates `scheme` at one sigma2 (CF uses alpha = beta = 0 for noise mode
/// and 1 for decode mode).
inline RateResult evaluate_scheme(const Channel& ch, Scheme scheme, Mode mode, double sigma2) {
  switch (scheme) {
    case Scheme::CF: {
      const double a = mode == Mode::Decode ? 1.0 : 0.0;
      return cf_rates(ch, CFParams{a, a, sigma2});
    }
    case Scheme::GCF: return mode == Mode::Decode ? gcf2_rates(ch, sigma2) : gcf1_rates(ch, sigma2);
    case Scheme::GHF: return ghf_rates(ch, sigma2, mode == Mode::Decode ? Mode::Decode : Mode::Noise);
    case Scheme::NNC: return nnc_rates(ch, sigma2, mode == Mode::Decode ? Mode::Decode : Mode::Noise);
    case Scheme::Lattice: break;
  }
  throw Error("evaluate_scheme: lattice has no compression parameter");
}

/// Maximizes the scheme's sum rate over sigma2 on a log grid with refinement.
/// When the maximizer sits on an edge of the window, the window is moved three
/// decades outward (down to sigma2_floor / up to sigma2_ceiling) and searched
/// again; ties go to the smaller sigma2.
inline RateResult optimize_scheme(const Channel& ch, Scheme scheme, Mode mode, const OptimizerGrid& grid = {}) {
  ch.validate();
  if (scheme == Scheme::CF) return optimize_cf(ch, mode, grid);
  if (scheme == Scheme::Lattice) {
    if (!(ch.h11 == ch.h22 && ch.h12 == ch.h21 && ch.h1R == ch.h2R && ch.hR1 == ch.hR2 && ch.P1 == ch.P2)) {
      throw Error("lattice compute-and-forward needs a symmetric channel");
    }
    return lattice_caf_rate(SymmetricChannel{ch.h11, ch.h12, ch.h1R, ch.hR1, ch.P1, ch.PR});
  }
  auto objective = [&](std::span<const double> x) {
    const auto r = evaluate_scheme(ch, scheme, mode, x[0]);
    return r.feasible ? r.value : -kInf;
  };
  auto run = [&](double lo, double hi) {
    SearchSpec spec;
    spec.axes = {Axis{lo, hi, grid.sigma2_points, AxisScale::Log}};
    spec.rounds = grid.rounds;
    spec.shrink = grid.shrink;
    return grid_maximize(objective, spec);
  };
  double lo = grid.sigma2_lo, hi = grid.sigma2_hi;
  auto best = run(lo, hi);
  if (!best.feasible) {
    // e.g. hashing needs a finer description than the default window allows
    lo = grid.sigma2_floor;
    best = run(lo, hi);
  }
  // edge extension
  for (int guard = 0; guard < 8 && best.feasible; ++guard) {
    const double x = best.argmax[0];
    SearchResult next;
    if (x <= lo * (1.0 + 1e-9) && lo > grid.sigma2_floor) {
      hi = lo * 10.0;
      lo = std::max(grid.sigma2_floor, lo * 1e-3);
    } else if (x >= hi * (1.0 - 1e-9) && hi < grid.sigma2_ceiling) {
      lo = hi / 10.0;
      hi = std::min(grid.sigma2_ceiling, hi * 1e3);
    } else {
      break;
    }
    next = run(lo, hi);
    if (next.feasible && next.value > best.value) {
      best = next;
    } else {
      break;
    }
  }
  if (!best.feasible) {
    RateResult r;
    r.feasible = false;
    r.note = "no feasible compression noise";
    return r;
  }
  return evaluate_scheme(ch, scheme, mode, best.argmax[0]);
}

}  // namespace gifrc

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

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gifrc/common.hpp"
#include "gifrc/param_search.hpp"

namespace gifrc {

/// One Gaussian interference relay channel instance. Gains are linear
/// amplitudes; powers are linear and normalized to unit receiver noise.
///
///   Y1 = h11 X1 + h21 X2 + hR1 XR + Z1
///   Y2 = h12 X1 + h22 X2 + hR2 XR + Z2
///   YR = h1R X1 + h2R X2 + ZR
struct Channel {
  double h11 = 1.0;
  double h21 = 0.0;
  double h12 = 0.0;
  double h22 = 1.0;
  double h1R = 0.0;
  double h2R = 0.0;
  double hR1 = 0.0;
  double hR2 = 0.0;
  double P1 = 0.0;
  double P2 = 0.0;
  double PR = 0.0;

  // Zero gains are accepted: several limiting cases (decoupled users, a relay
  // that hears nothing) are evaluated exactly at zero.
  void validate() const {
    const std::array<double, 8> gains{h11, h21, h12, h22, h1R, h2R, hR1, hR2};
    for (double g : gains) {
      if (!std::isfinite(g) || g < 0.0) throw Error("channel gains must be finite and non-negative");
    }
    for (double p : {P1, P2, PR}) {
      if (!std::isfinite(p) || p < 0.0) throw Error("channel powers must be finite and non-negative");
    }
  }

  /// Relabels user 1 <-> user 2.
  [[nodiscard]] Channel swapped() const {
    return Channel{h22, h12, h21, h11, h2R, h1R, hR2, hR1, P2, P1, PR};
  }

  bool operator==(const Channel&) const = default;
};

/// h11 = h22 = hd, h12 = h21 = hc, h1R = h2R = hs, hR1 = hR2 = hR, P1 = P2 = P.
struct SymmetricChannel {
  double hd = 1.0;
  double hc = 0.0;
  double hs = 0.0;
  double hR = 0.0;
  double P = 0.0;
  double PR = 0.0;

  [[nodiscard]] Channel expand() const { return Channel{hd, hc, hc, hd, hs, hs, hR, hR, P, P, PR}; }
};

struct ChannelGains {
  double h11 = 1.0, h21 = 0.0, h12 = 0.0, h22 = 1.0;
  double h1R = 0.0, h2R = 0.0, hR1 = 0.0, hR2 = 0.0;
};

/// Builds a channel from powers in dB. Gains are linear amplitudes unless
/// gains_in_db is set, in which case each is a power gain in dB (h = 10^(dB/20)).
inline Channel from_db(const ChannelGains& g, double P1_db, double P2_db, double PR_db,
                       bool gains_in_db = false) {
  for (double v : {P1_db, P2_db, PR_db, g.h11, g.h21, g.h12, g.h22, g.h1R, g.h2R, g.hR1, g.hR2}) {
    if (!std::isfinite(v)) throw Error("from_db: non-finite input");
  }
  auto gain = [&](double x) { return gains_in_db ? std::pow(10.0, x / 20.0) : x; };
  return Channel{gain(g.h11), gain(g.h21), gain(g.h12), gain(g.h22), gain(g.h1R), gain(g.h2R),
                 gain(g.hR1), gain(g.hR2), db_to_linear(P1_db), db_to_linear(P2_db),
                 db_to_linear(PR_db)};
}

/// Strong interference: h12 >= h11 and h21 >= h22 (boundary included).
inline bool classify_strong(const Channel& ch) { return ch.h12 >= ch.h11 && ch.h21 >= ch.h22; }

/// Equivalent channel with unit direct gains, obtained by absorbing h_ii into
/// the input (X_i' = h_ii X_i, P_i' = h_ii^2 P_i). Receiver noises stay unit.
inline Channel normalize_direct_gains(const Channel& ch) {
  if (!(ch.h11 > 0.0 && ch.h22 > 0.0)) throw Error("direct gains must be positive to normalize");
  Channel n = ch;
  n.h11 = 1.0;
  n.h22 = 1.0;
  n.h12 = ch.h12 / ch.h11;
  n.h1R = ch.h1R / ch.h11;
  n.P1 = ch.h11 * ch.h11 * ch.P1;
  n.h21 = ch.h21 / ch.h22;
  n.h2R = ch.h2R / ch.h22;
  n.P2 = ch.h22 * ch.h22 * ch.P2;
  return n;
}

/// Correlations (rho1..rho4) of the smart-genie signals with the receiver noises.
struct GenieCorrelations {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double rho3 = 0.0;
  double rho4 = 0.0;
};

/// rho <= kRhoMax wherever 1/(1 - rho^2) appears.
inline constexpr double kRhoMax = 0.999;

struct GenieSlack {
  double first = 0.0;   // LHS - RHS of the user-1 condition
  double second = 0.0;  // LHS - RHS of the user-2 condition
  [[nodiscard]] double min() const { return std::min(first, second); }
};

/// Slack of the two weak-interference genie conditions on a channel whose
/// direct gains are already 1.
inline GenieSlack genie_slack(const Channel& n, const GenieCorrelations& r) {
  auto sq = [](double x) { return x * x; };
  const double first = sq(r.rho1) / sq(1.0 + sq(n.h21) * n.P2) +
                       sq(n.h1R) * sq(r.rho3) / sq(1.0 + sq(n.h2R) * n.P2) -
                       sq(n.h12) / (1.0 - sq(r.rho2)) - sq(n.h1R) / (1.0 - sq(r.rho4));
  const double second = sq(r.rho2) / sq(1.0 + sq(n.h12) * n.P1) +
                        sq(n.h2R) * sq(r.rho4) / sq(1.0 + sq(n.h1R) * n.P1) -
                        sq(n.h21) / (1.0 - sq(r.rho1)) - sq(n.h2R) / (1.0 - sq(r.rho3));
  return {first, second};
}

/// Closed-form symmetric threshold on hs^2 as published:
/// (1 - 2 hc (1 + hc^2 P)) / (1 + hc^2 P), or nullopt when the numerator is <= 0.
inline std::optional<double> symmetric_weak_threshold(double hc, double P) {
  if (!(hc >= 0.0) || !(P >= 0.0)) throw Error("symmetric_weak_threshold: invalid arguments");
  const double a = 1.0 + hc * hc * P;
  const double num = 1.0 - 2.0 * hc * a;
  if (num <= 0.0) return std::nullopt;
  return num / a;
}

/// Largest hs^2 for which the symmetric-restricted genie condition holds
/// (rho1 = rho2, rho3 = rho4), from maximizing its left side exactly:
/// the maximizers are rho^2 = 1 - hc (1 + hc^2 P) and rho_R = 0, giving
/// (1 - 2 hc a) / a^2 with a = 1 + hc^2 P.
inline std::optional<double> symmetric_weak_threshold_exact(double hc, double P) {
  if (!(hc >= 0.0) || !(P >= 0.0)) throw Error("symmetric_weak_threshold_exact: invalid arguments");
  const double a = 1.0 + hc * hc * P;
  const double num = 1.0 - 2.0 * hc * a;
  if (num <= 0.0) return std::nullopt;
  return num / (a * a);
}

enum class RegimeTag { StrongInterference, WeakPotentFeasible, Unclassified };

inline std::string_view to_string(RegimeTag t) {
  switch (t) {
    case RegimeTag::StrongInterference: return "strong";
    case RegimeTag::WeakPotentFeasible: return "weak-potent";
    case RegimeTag::Unclassified: return "unclassified";
  }
  return "unclassified";
}

struct Regime {
  RegimeTag tag = RegimeTag::Unclassified;
  std::optional<GenieCorrelations> witness{};
  bool symmetric_fast_path = false;
};

namespace detail {

inline bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// sqrt(1 - h (1 + h^2 P)) when it lies inside the guarded rho range.
inline std::optional<double> genie_rho_candidate(double h, double P) {
  const double r2 = 1.0 - h * (1.0 + h * h * P);
  if (r2 < 0.0) return std::nullopt;
  const double r = std::sqrt(r2);
  return r <= kRhoMax ? std::optional<double>(r) : std::nullopt;
}

}  // namespace detail

/// Searches (rho1..rho4) in [0, 0.999]^4 for a point satisfying both genie
/// conditions. Symmetric channels first try the exact symmetric maximizer.
inline Regime weak_feasibility_search(const Channel& ch, int grid_n = 64) {
  ch.validate();
  if (grid_n < 2) throw Error("weak_feasibility_search: grid_n must be at least 2");
  const Channel n = normalize_direct_gains(ch);

  const bool symmetric = detail::nearly_equal(n.h12, n.h21) && detail::nearly_equal(n.h1R, n.h2R) &&
                         detail::nearly_equal(n.P1, n.P2);
  if (symmetric) {
    if (auto t = symmetric_weak_threshold_exact(n.h12, n.P1); t && n.h1R * n.h1R <= *t) {
      const double rho = std::min(kRhoMax, std::sqrt(std::max(0.0, 1.0 - n.h12 * (1.0 + n.h12 * n.h12 * n.P1))));
      const GenieCorrelations w{rho, rho, 0.0, 0.0};
      if (genie_slack(n, w).min() >= 0.0) return Regime{RegimeTag::WeakPotentFeasible, w, true};
    }
  }

  SearchSpec spec;
  for (int d = 0; d < 4; ++d) spec.axes.push_back(Axis{0.0, kRhoMax, grid_n});
  for (auto c : {detail::genie_rho_candidate(n.h21, n.P2), detail::genie_rho_candidate(n.h12, n.P1)}) {
    if (c) {
      spec.axes[0].extra.push_back(*c);
      spec.axes[1].extra.push_back(*c);
    }
  }
  auto slack = [&](std::span<const double> x) {
    return genie_slack(n, GenieCorrelations{x[0], x[1], x[2], x[3]}).min();
  };
  if (auto w = feasibility_scan(slack, spec)) {
    const auto& p = w->point;
    return Regime{RegimeTag::WeakPotentFeasible, GenieCorrelations{p[0], p[1], p[2], p[3]}, false};
  }
  return Regime{};
}

/// Strong if classify_strong holds, otherwise the weak genie search result.
inline Regime classify(const Channel& ch, int grid_n = 64) {
  ch.validate();
  if (classify_strong(ch)) return Regime{RegimeTag::StrongInterference};
  return weak_feasibility_search(ch, grid_n);
}

}  // namespace gifrc

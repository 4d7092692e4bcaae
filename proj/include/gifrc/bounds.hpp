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

// Sum-capacity upper bounds: the potent-relay bounds (relay output observed
// noiselessly at both destinations) for weak and strong interference, and the
// cut-set bound maximized over relay/source correlations.

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "gifrc/channel.hpp"
#include "gifrc/common.hpp"
#include "gifrc/gaussian_info.hpp"
#include "gifrc/param_search.hpp"
#include "gifrc/schemes.hpp"

namespace gifrc {

/// Gaussian inputs on the in-band reception / out-of-band noiseless relay
/// model: destinations see Y1, Y2 without the relay term, plus YR exactly.
inline GaussianSystem potent_system(const Channel& ch) {
  ch.validate();
  GaussianSystem sys;
  sys.add_source("X1", ch.P1);
  sys.add_source("X2", ch.P2);
  sys.add_source("Z1", 1.0);
  sys.add_source("Z2", 1.0);
  sys.add_source("ZR", 1.0);
  sys.add_observable("X1", {{"X1", 1.0}});
  sys.add_observable("X2", {{"X2", 1.0}});
  sys.add_observable("Y1", {{"X1", ch.h11}, {"X2", ch.h21}, {"Z1", 1.0}});
  sys.add_observable("Y2", {{"X1", ch.h12}, {"X2", ch.h22}, {"Z2", 1.0}});
  sys.add_observable("YR", {{"X1", ch.h1R}, {"X2", ch.h2R}, {"ZR", 1.0}});
  return sys;
}

struct PotentWeakBound {
  double value = 0.0;        // I(X1; Y1,YR) + I(X2; Y2,YR) from the engine
  double closed_form = 0.0;  // hand-expanded expression on the unit-direct-gain channel
  Regime regime{};           // genie-condition search; value is the sum capacity only if feasible
  Channel normalized{};
};

/// Closed form of I(X1;Y1,YR) + I(X2;Y2,YR) for unit direct gains. The
/// cross term of the second user is (h12 h2R - h1R)^2.
inline double potent_weak_closed_form(const Channel& ch) {
  const Channel n = normalize_direct_gains(ch);
  auto sq = [](double x) { return x * x; };
  const double first = (sq(n.h21 * n.h1R - n.h2R) * n.P1 * n.P2 + n.P1 + sq(n.h1R) * n.P1) /
                       ((sq(n.h21) + sq(n.h2R)) * n.P2 + 1.0);
  const double second = (sq(n.h12 * n.h2R - n.h1R) * n.P1 * n.P2 + sq(n.h2R) * n.P2 + n.P2) /
                        ((sq(n.h1R) + sq(n.h12)) * n.P1 + 1.0);
  return half_log2(1.0 + first) + half_log2(1.0 + second);
}

inline PotentWeakBound potent_weak_sum(const Channel& ch, int grid_n = 64) {
  ch.validate();
  const auto sys = potent_system(ch);
  PotentWeakBound out;
  out.value = mi(sys, {"X1"}, {"Y1", "YR"}) + mi(sys, {"X2"}, {"Y2", "YR"});
  out.normalized = normalize_direct_gains(ch);
  out.closed_form = potent_weak_closed_form(ch);
  out.regime = weak_feasibility_search(ch, grid_n);
  return out;
}

/// Same value without the genie search.
inline double potent_weak_value(const Channel& ch) {
  const auto sys = potent_system(ch);
  return mi(sys, {"X1"}, {"Y1", "YR"}) + mi(sys, {"X2"}, {"Y2", "YR"});
}

struct PotentStrongRegion {
  double r1_max = 0.0;
  double r2_max = 0.0;
  double r_sum = 0.0;
  bool capacity = false;  // strong-interference condition verified
  // Engine evaluations of the same three bounds.
  double engine_r1 = 0.0;
  double engine_r2 = 0.0;
  double engine_sum = 0.0;

  [[nodiscard]] double sum_capacity() const { return std::min(r1_max + r2_max, r_sum); }
};

inline PotentStrongRegion potent_strong_region(const Channel& ch) {
  ch.validate();
  auto sq = [](double x) { return x * x; };
  PotentStrongRegion out;
  out.r1_max = half_log2(1.0 + sq(ch.h11) * ch.P1 + sq(ch.h1R) * ch.P1);
  out.r2_max = half_log2(1.0 + sq(ch.h22) * ch.P2 + sq(ch.h2R) * ch.P2);
  const double at1 = sq(ch.h21 * ch.h1R - ch.h11 * ch.h2R) * ch.P1 * ch.P2 +
                     (sq(ch.h1R) + sq(ch.h11)) * ch.P1 + (sq(ch.h2R) + sq(ch.h21)) * ch.P2;
  const double at2 = sq(ch.h12 * ch.h2R - ch.h1R * ch.h22) * ch.P1 * ch.P2 +
                     (sq(ch.h1R) + sq(ch.h12)) * ch.P1 + (sq(ch.h2R) + sq(ch.h22)) * ch.P2;
  out.r_sum = half_log2(1.0 + std::min(at1, at2));
  out.capacity = classify_strong(ch);

  const auto sys = potent_system(ch);
  out.engine_r1 = mi(sys, {"X1"}, {"Y1", "YR"}, {"X2"});
  out.engine_r2 = mi(sys, {"X2"}, {"Y2", "YR"}, {"X1"});
  out.engine_sum = std::min(mi(sys, {"X1", "X2"}, {"Y1", "YR"}), mi(sys, {"X1", "X2"}, {"Y2", "YR"}));
  return out;
}

/// Correlation of XR with X1 and X2; rhoR1^2 + rhoR2^2 <= 1.
struct CutsetParams {
  double rhoR1 = 0.0;
  double rhoR2 = 0.0;

  void validate() const {
    if (!(rhoR1 >= 0.0 && rhoR1 <= 1.0 && rhoR2 >= 0.0 && rhoR2 <= 1.0)) {
      throw Error("cut-set correlations must lie in [0,1]");
    }
    if (rhoR1 * rhoR1 + rhoR2 * rhoR2 > 1.0 + 1e-12) throw Error("cut-set correlations exceed the unit disc");
  }
};

struct CutsetRegion {
  double r1 = 0.0;
  double r2 = 0.0;
  double r_sum = 0.0;
  double sum_broadcast = 0.0;  // I(X1X2; Y1Y2YR | XR)
  double sum_mac = 0.0;        // I(X1X2XR; Y1Y2)
};

inline RelayCorrelation relay_correlation(const Channel& ch, const CutsetParams& cp) {
  RelayCorrelation rc;
  if (ch.P1 > 0.0) rc.c1 = cp.rhoR1 * std::sqrt(ch.PR / ch.P1);
  if (ch.P2 > 0.0) rc.c2 = cp.rhoR2 * std::sqrt(ch.PR / ch.P2);
  return rc;
}

inline CutsetRegion cutset_region(const Channel& ch, const CutsetParams& cp) {
  ch.validate();
  cp.validate();
  const auto sys = build_system(ch, CFParams{0.0, 0.0, 1.0}, false, relay_correlation(ch, cp));
  CutsetRegion out;
  out.r1 = std::min(mi(sys, {"X1", "XR"}, {"Y1"}, {"X2"}), mi(sys, {"X1"}, {"Y1", "YR"}, {"X2", "XR"}));
  out.r2 = std::min(mi(sys, {"X2", "XR"}, {"Y2"}, {"X1"}), mi(sys, {"X2"}, {"Y2", "YR"}, {"X1", "XR"}));
  out.sum_broadcast = mi(sys, {"X1", "X2"}, {"Y1", "Y2", "YR"}, {"XR"});
  out.sum_mac = mi(sys, {"X1", "X2", "XR"}, {"Y1", "Y2"});
  out.r_sum = std::min(out.sum_broadcast, out.sum_mac);
  return out;
}

struct CutsetMax {
  double value = 0.0;
  CutsetParams params{};
};

/// Maximizes the cut-set sum bound (minimum of its two terms) over the
/// quarter disc of relay correlations.
inline CutsetMax cutset_sum_max(const Channel& ch, int grid_n = 65, int rounds = 3, double shrink = 0.2) {
  ch.validate();
  SearchSpec spec;
  spec.axes = {Axis{0.0, 1.0, grid_n}, Axis{0.0, 1.0, grid_n}};
  spec.rounds = rounds;
  spec.shrink = shrink;
  auto objective = [&](std::span<const double> x) {
    if (x[0] * x[0] + x[1] * x[1] > 1.0) return -kInf;
    const auto sys =
        build_system(ch, CFParams{0.0, 0.0, 1.0}, false, relay_correlation(ch, CutsetParams{x[0], x[1]}));
    const double broadcast = mi(sys, {"X1", "X2"}, {"Y1", "Y2", "YR"}, {"XR"});
    const double mac = mi(sys, {"X1", "X2", "XR"}, {"Y1", "Y2"});
    return std::min(broadcast, mac);
  };
  const auto best = grid_maximize(objective, spec);
  return CutsetMax{best.value, CutsetParams{best.argmax[0], best.argmax[1]}};
}

struct DofEstimate {
  double k = 1.0;
  double slope = 0.0;
  std::vector<double> p_grid{};  // linear source powers used
  std::vector<double> rates{};   // sum rates at p_grid
};

using SumRateFn = std::function<double(const Channel&)>;

/// Default DoF rate: the GCF sum rate with interference decoding, optimized over sigma2.
inline double optimized_gcf2_sum(const Channel& ch) {
  return optimize_scheme(ch, Scheme::GCF, Mode::Decode).value;
}

/// High-SNR slope of the sum rate against (1/2) log2 P with P1 = P2 = P and
/// PR = P^k, from two powers 10 dB apart ending at p_db_hi. Users with zero
/// power in the template stay silent.
inline DofEstimate dof_estimate(const Channel& tmpl, double k, double p_db_hi,
                                const SumRateFn& rate = optimized_gcf2_sum) {
  tmpl.validate();
  if (!(p_db_hi >= 40.0)) throw Error("dof_estimate needs p_db_hi >= 40 dB");
  if (!(k > 0.0)) throw Error("dof_estimate needs a positive relay exponent");
  DofEstimate out;
  out.k = k;
  for (double db : {p_db_hi - 10.0, p_db_hi}) {
    const double p = db_to_linear(db);
    Channel ch = tmpl;
    ch.P1 = tmpl.P1 > 0.0 ? p : 0.0;
    ch.P2 = tmpl.P2 > 0.0 ? p : 0.0;
    ch.PR = std::pow(p, k);
    out.p_grid.push_back(p);
    out.rates.push_back(rate(ch));
  }
  const double dx = half_log2(out.p_grid[1]) - half_log2(out.p_grid[0]);
  out.slope = std::max(0.0, (out.rates[1] - out.rates[0]) / dx);
  return out;
}

}  // namespace gifrc

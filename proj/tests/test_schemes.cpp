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
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gifrc/schemes.hpp"
#include "support.hpp"

using namespace gifrc;

namespace {

double var_of(const GaussianSystem& s, const std::string& name) {
  const std::array<std::string, 1> n{name};
  return covariance(s, n)(0, 0);
}

Channel decoupled(double p, double hs, double hR, double pr) {
  return SymmetricChannel{1.0, 0.0, hs, hR, p, pr}.expand();
}

}  // namespace

TEST(BuildSystem, PowerSplit) {
  const Channel c = SymmetricChannel{1.0, 0.5, 0.5, 1.0, 2.0, 3.0}.expand();
  const auto priv = build_system(c, CFParams{0.0, 0.0, 1.0}, true);
  EXPECT_EQ(var_of(priv, "U1"), 0.0);
  EXPECT_EQ(var_of(priv, "U2"), 0.0);
  const auto common = build_system(c, CFParams{1.0, 0.3, 1.0}, true);
  EXPECT_DOUBLE_EQ(var_of(common, "X1") - var_of(common, "U1"), 0.0);
  EXPECT_NEAR(var_of(common, "U2"), 0.6, 1e-12);
}

TEST(BuildSystem, CompressedObservationVariance) {
  const Channel c{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  const auto s = build_system(c, CFParams{0.0, 0.0, 1.0}, false);
  EXPECT_DOUBLE_EQ(var_of(s, "YRhat"), 4.0);
  const auto d = build_system(c, CFParams{0.0, 0.0, kInf}, false);
  EXPECT_EQ(var_of(d, "YRhat"), 0.0);
}

TEST(BuildSystem, Errors) {
  const Channel c{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  EXPECT_THROW(build_system(c, CFParams{1.5, 0.0, 1.0}, true), Error);
  EXPECT_THROW(build_system(c, CFParams{0.0, 0.0, 0.0}, true), Error);
  EXPECT_THROW(build_system(c, CFParams{0.0, 0.0, 1.0}, false, RelayCorrelation{2.0, 0.0}), Error);
}

TEST(CfFeasible, Limits) {
  const Channel c = gifrc::testing::weak_figure_channel(10.0);
  EXPECT_TRUE(cf_feasible(c, CFParams{0.0, 0.0, kInf}));
  Channel mute = c;
  mute.hR1 = mute.hR2 = 0.0;
  EXPECT_FALSE(cf_feasible(mute, CFParams{0.0, 0.0, 1.0}));
  EXPECT_TRUE(std::isinf(cf_min_sigma2(mute)));
}

TEST(CfFeasible, MinimumNoiseIsTheBoundary) {
  const Channel c = gifrc::testing::weak_figure_channel(10.0);
  const double s2 = cf_min_sigma2(c);
  EXPECT_TRUE(cf_feasible(c, CFParams{0.3, 0.7, s2}));
  EXPECT_FALSE(cf_feasible(c, CFParams{0.3, 0.7, s2 * 0.99}));
}

TEST(CfRates, DecoupledUselessRelay) {
  const Channel c = decoupled(10.0, 0.0, 1.0, 1.0);
  const auto r = cf_rates(c, CFParams{0.0, 0.0, kInf});
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.r1, half_log2(11.0), 1e-12);
  EXPECT_NEAR(r.r2, half_log2(11.0), 1e-12);
}

TEST(CfRates, InfeasibleCompression) {
  const Channel c = gifrc::testing::weak_figure_channel(10.0);
  const auto r = cf_rates(c, CFParams{0.0, 0.0, 1e-6});
  EXPECT_FALSE(r.feasible);
}

TEST(CfRates, PureCommonIsCompoundMac) {
  const Channel c = gifrc::testing::strong_symmetric(5.0, 10.0);
  const double s2 = cf_min_sigma2(c);
  const auto r = cf_rates(c, CFParams{1.0, 1.0, s2});
  const auto sys = build_system(c, CFParams{1.0, 1.0, s2}, true);
  double sum = kInf, r1 = kInf, r2 = kInf;
  for (const char* y : {"Y1", "Y2"}) {
    sum = std::min(sum, mi(sys, {"X1", "X2"}, {"YRhat", y}, {"XR"}));
  }
  r1 = std::min(mi(sys, {"X1"}, {"YRhat", "Y1"}, {"X2", "XR"}), mi(sys, {"X1"}, {"YRhat", "Y2"}, {"X2", "XR"}));
  r2 = std::min(mi(sys, {"X2"}, {"YRhat", "Y2"}, {"X1", "XR"}), mi(sys, {"X2"}, {"YRhat", "Y1"}, {"X1", "XR"}));
  EXPECT_NEAR(r.value, std::min(sum, r1 + r2), 1e-9);
  EXPECT_LE(r.r1, r1 + 1e-9);
  EXPECT_LE(r.r2, r2 + 1e-9);
}

TEST(GcfRates, UselessRelayLimit) {
  const Channel c = SymmetricChannel{1.0, 0.4, 0.0, 1.0, 4.0, 2.0}.expand();
  const auto r = gcf1_rates(c, kInf);
  EXPECT_NEAR(r.r1, half_log2(1.0 + 4.0 / (1.0 + 0.16 * 4.0)), 1e-12);
}

TEST(GcfRates, MutedRelayLinks) {
  Channel c = gifrc::testing::weak_figure_channel(10.0);
  c.hR1 = c.hR2 = 0.0;
  for (double s2 : {0.01, 1.0, 100.0}) {
    const auto r = gcf1_rates(c, s2);
    const auto sys = build_system(c, CFParams{0.0, 0.0, s2}, false);
    const double second = mi(sys, {"X1"}, {"Y1"}, {"XR"}) - mi(sys, {"YR"}, {"YRhat"}, {"X1", "XR", "Y1"});
    EXPECT_NEAR(r.r1, std::max(0.0, std::min(mi(sys, {"X1"}, {"YRhat", "Y1"}, {"XR"}), second)), 1e-12);
    EXPECT_GE(r.r1, 0.0);
  }
}

TEST(Schemes, ZeroPowerGivesZero) {
  Channel c = gifrc::testing::strong_symmetric(0.0, 10.0);
  c.P1 = c.P2 = 0.0;
  for (double s2 : {0.1, 10.0}) {
    EXPECT_NEAR(gcf1_rates(c, s2).value, 0.0, 1e-12);
    EXPECT_NEAR(gcf2_rates(c, s2).value, 0.0, 1e-12);
    EXPECT_NEAR(nnc_rates(c, s2, Mode::Decode).value, 0.0, 1e-12);
    const auto g = ghf_rates(c, s2, Mode::Decode);
    EXPECT_NEAR(g.feasible ? g.value : 0.0, 0.0, 1e-12);
  }
}

TEST(Schemes, CrossGainSaturation) {
  // noiseless cross links: the sum constraint stops binding and the optimized
  // sum approaches the interference-free per-user terms from above
  const double P = 3.0;
  const double limit = 2.0 * half_log2(1.0 + P);
  double prev_gap = kInf;
  for (double hc : {4.0, 16.0, 64.0, 256.0, 1e3, 1e4}) {
    const Channel c = SymmetricChannel{1.0, hc, 1.0, 1.0, P, 10.0}.expand();
    const auto r = optimize_scheme(c, Scheme::GCF, Mode::Decode);
    EXPECT_EQ(r.binding, "R1|R2") << hc;
    const double gap = r.value - limit;
    EXPECT_GE(gap, -1e-9);
    EXPECT_LE(gap, prev_gap + 1e-12);
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, 1e-5);
}

TEST(Ghf, FeasibilityAndUselessObservation) {
  const Channel c = SymmetricChannel{1.0, 2.0, 0.0, 1.0, 3.0, 1.0}.expand();
  int compared = 0;
  for (double s2 : {0.01, 0.1, 1.0, 10.0}) {
    const auto g = ghf_rates(c, s2, Mode::Decode);
    if (!g.feasible) continue;
    EXPECT_NEAR(g.value, gcf2_rates(c, s2).value, 1e-9);
    ++compared;
  }
  EXPECT_GT(compared, 0);
  EXPECT_FALSE(ghf_rates(gifrc::testing::weak_figure_channel(1e3), 1e3, Mode::Decode).feasible);
}

TEST(Ghf, BelowGcfWhenHashingConditionHoldsPerUser) {
  // with R0 <= I(YR; YRhat | Xj, XR, Yi) for both users, each GHF term equals
  // the R0 branch of the matching GCF term
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 40; ++t) {
    const Channel c = gifrc::testing::random_channel(rng);
    const double s2 = gifrc::testing::random_sigma2(rng);
    const auto sys = build_system(c, CFParams{0.0, 0.0, s2}, false);
    const double r0 = std::min(mi(sys, {"XR"}, {"Y1"}), mi(sys, {"XR"}, {"Y2"}));
    if (r0 > mi(sys, {"YR"}, {"YRhat"}, {"X2", "XR", "Y1"}) || r0 > mi(sys, {"YR"}, {"YRhat"}, {"X1", "XR", "Y2"})) continue;
    const auto g = ghf_rates(c, s2, Mode::Decode);
    if (!g.feasible) continue;
    EXPECT_LE(g.value, gcf2_rates(c, s2).value + 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(Nnc, TermsDominateGcf) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const Channel c = gifrc::testing::random_channel(rng);
    const double s2 = gifrc::testing::random_sigma2(rng);
    EXPECT_GE(nnc_rates(c, s2, Mode::Noise).value, gcf1_rates(c, s2).value - 1e-9);
    EXPECT_GE(nnc_rates(c, s2, Mode::Decode).value, gcf2_rates(c, s2).value - 1e-9);
  }
}

TEST(Ordering, GcfContainsCf) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 100; ++t) {
    const Channel c = gifrc::testing::random_channel(rng);
    const double s2 = gifrc::testing::random_sigma2(rng);
    const auto noise = cf_rates(c, CFParams{0.0, 0.0, s2});
    const auto decode = cf_rates(c, CFParams{1.0, 1.0, s2});
    if (noise.feasible) {
      EXPECT_GE(gcf1_rates(c, s2).value, noise.value - 1e-9);
    }
    if (decode.feasible) {
      EXPECT_GE(gcf2_rates(c, s2).value, decode.value - 1e-9);
    }
  }
}

TEST(Rates, NonNegativeAndFinite) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 100; ++t) {
    const Channel c = gifrc::testing::random_channel(rng);
    const double s2 = gifrc::testing::random_sigma2(rng);
    for (const auto& r : {gcf1_rates(c, s2), gcf2_rates(c, s2), nnc_rates(c, s2, Mode::Noise),
                          nnc_rates(c, s2, Mode::Decode), ghf_rates(c, s2, Mode::Noise),
                          cf_rates(c, CFParams{0.5, 0.5, s2})}) {
      if (!r.feasible) continue;
      EXPECT_TRUE(std::isfinite(r.value));
      EXPECT_GE(r.r1, 0.0);
      EXPECT_GE(r.r2, 0.0);
      EXPECT_NEAR(r.value, r.r1 + r.r2, 1e-12);
    }
  }
}

TEST(Lattice, Examples) {
  EXPECT_NEAR(lattice_caf_rate(SymmetricChannel{0.0, 1.0, 1.0, 1.0, 1.0, 1.0}).r1, 0.5 * std::log2(1.5), 1e-12);
  EXPECT_NEAR(lattice_caf_rate(SymmetricChannel{0.0, 1.0, 1.0, 1.0, 1.0, 1.0}).r1, 0.29248, 1e-5);
  EXPECT_EQ(lattice_caf_rate(SymmetricChannel{0.7, 1.0, std::sqrt(0.5), 1.0, 1.0, 4.0}).r1, 0.0);
  EXPECT_EQ(lattice_caf_rate(SymmetricChannel{1.0, 1.0, 1.0, 1.0, 0.0, 4.0}).value, 0.0);
  EXPECT_EQ(lattice_caf_rate(SymmetricChannel{0.0, 1.0, 1.0, 1.0, 1.0, 1.0}).binding, "compute");
}

TEST(Optimize, SplitThresholdBehavior) {
  OptimizerGrid coarse;
  coarse.split_points = 21;
  for (double hc : {0.01, 0.05}) {
    const Channel c = SymmetricChannel{1.0, hc, 1.0, 1.0, db_to_linear(1.0), db_to_linear(1.0)}.expand();
    EXPECT_EQ(optimize_cf(c, Mode::Split, coarse).params->alpha, 0.0) << hc;
  }
  for (double hc : {1.0, 2.0}) {
    const Channel c = SymmetricChannel{1.0, hc, 1.0, 1.0, db_to_linear(1.0), db_to_linear(1.0)}.expand();
    EXPECT_EQ(optimize_cf(c, Mode::Split, coarse).params->alpha, 1.0) << hc;
  }
}

TEST(Optimize, InterferenceFreeSplitIsTwoCfRates) {
  const Channel c = decoupled(db_to_linear(1.0), 1.0, 1.0, db_to_linear(10.0));
  OptimizerGrid coarse;
  coarse.split_points = 11;
  const auto split = optimize_cf(c, Mode::Split, coarse);
  EXPECT_EQ(split.params->alpha, 0.0);
  const auto single = optimize_cf(SymmetricChannel{1.0, 0.0, 1.0, 1.0, db_to_linear(1.0), db_to_linear(10.0)}.expand(),
                                  Mode::Noise);
  EXPECT_NEAR(split.value, single.value, 1e-12);
  EXPECT_NEAR(split.r1, split.r2, 1e-9);
}

TEST(Optimize, DecoupledGcfMatchesRelayChannelCf) {
  // single relay channel: CF with the smallest feasible compression noise
  const double P = 3.0, hs = 0.8, hR = 1.2, PR = 5.0;
  Channel c = decoupled(P, hs, hR, PR);
  c.h2R = 0.0;
  c.P2 = 0.0;
  const double s2 = (1.0 + P + hs * hs * P) / (hR * hR * PR);
  const double cf = half_log2(1.0 + P + hs * hs * P / (1.0 + s2));
  const auto r = optimize_scheme(c, Scheme::GCF, Mode::Noise);
  EXPECT_NEAR(r.r1, cf, 1e-4);
  EXPECT_LE(r.r1, cf + 1e-9);
}

TEST(Optimize, NondecreasingInRelayPower) {
  const Channel base = gifrc::testing::weak_figure_channel(1.0);
  double prev1 = -1.0, prev2 = -1.0;
  for (double db = -10.0; db <= 30.0; db += 5.0) {
    Channel c = base;
    c.PR = db_to_linear(db);
    const double v1 = optimize_scheme(c, Scheme::GCF, Mode::Noise).value;
    const double v2 = optimize_scheme(c, Scheme::NNC, Mode::Decode).value;
    EXPECT_GE(v1, prev1 - 1e-9);
    EXPECT_GE(v2, prev2 - 1e-9);
    prev1 = v1;
    prev2 = v2;
  }
}

TEST(Optimize, NondecreasingInOwnPowerWithoutInterference) {
  double prev = -1.0;
  for (double db = -5.0; db <= 25.0; db += 5.0) {
    Channel c = decoupled(db_to_linear(db), 0.7, 1.0, 10.0);
    c.P2 = 1.0;
    const double v = optimize_scheme(c, Scheme::GCF, Mode::Noise).value;
    EXPECT_GE(v, prev - 1e-9);
    prev = v;
  }
}

TEST(Optimize, LatticeNeedsSymmetry) {
  Channel c = gifrc::testing::strong_symmetric(1.0, 1.0);
  EXPECT_NO_THROW(optimize_scheme(c, Scheme::Lattice, Mode::Noise));
  c.h12 = 3.0;
  EXPECT_THROW(optimize_scheme(c, Scheme::Lattice, Mode::Noise), Error);
  EXPECT_THROW(evaluate_scheme(c, Scheme::Lattice, Mode::Noise, 1.0), Error);
}

TEST(Optimize, GhfSearchReachesBelowDefaultWindow) {
  const Channel c = gifrc::testing::weak_figure_channel(db_to_linear(10.0));
  const auto r = optimize_scheme(c, Scheme::GHF, Mode::Decode);
  ASSERT_TRUE(r.feasible);
  EXPECT_GT(r.value, 0.0);
}

TEST(Optimize, Deterministic) {
  const Channel c = gifrc::testing::strong_symmetric(5.0, 10.0);
  const auto a = optimize_scheme(c, Scheme::GCF, Mode::Decode);
  const auto b = optimize_scheme(c, Scheme::GCF, Mode::Decode);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.params->sigma2, b.params->sigma2);
}

TEST(Names, ToString) {
  EXPECT_EQ(to_string(Scheme::NNC), "nnc");
  EXPECT_EQ(to_string(Mode::Split), "split");
}

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

#include "gifrc/channel.hpp"
#include "support.hpp"

using namespace gifrc;

TEST(FromDb, PowerConversion) {
  const Channel c = from_db(ChannelGains{}, 0.0, 10.0, 1.0);
  EXPECT_DOUBLE_EQ(c.P1, 1.0);
  EXPECT_DOUBLE_EQ(c.P2, 10.0);
  EXPECT_NEAR(c.PR, 1.258925, 1e-6);
}

TEST(FromDb, GainsInDb) {
  ChannelGains g;
  g.h12 = 20.0;
  const Channel c = from_db(g, 0.0, 0.0, 0.0, true);
  EXPECT_NEAR(c.h12, 10.0, 1e-12);
  EXPECT_THROW(from_db(g, std::nan(""), 0.0, 0.0), Error);
}

TEST(Channel, ValidateRejectsBadValues) {
  Channel c;
  c.h12 = -0.1;
  EXPECT_THROW(c.validate(), Error);
  c.h12 = 0.0;
  c.PR = std::numeric_limits<double>::infinity();
  EXPECT_THROW(c.validate(), Error);
  c.PR = 0.0;
  EXPECT_NO_THROW(c.validate());
}

TEST(ClassifyStrong, Examples) {
  EXPECT_TRUE(classify_strong(SymmetricChannel{1.0, 2.0, 1.0, 1.0, 1.0, 1.0}.expand()));
  EXPECT_FALSE(classify_strong(SymmetricChannel{1.0, std::sqrt(0.1), 1.0, 1.0, 1.0, 1.0}.expand()));
  Channel c;
  c.h12 = c.h11;
  c.h21 = c.h22;
  EXPECT_TRUE(classify_strong(c));
}

TEST(ClassifyStrong, SwapInvariant) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 500; ++t) {
    const Channel c = gifrc::testing::random_channel(rng);
    EXPECT_EQ(classify_strong(c), classify_strong(c.swapped()));
    EXPECT_EQ(c.swapped().swapped(), c);
  }
}

TEST(Normalize, PreservesReceivedSignals) {
  Channel c{2.0, 0.3, 0.4, 0.5, 0.6, 0.7, 1.0, 1.0, 3.0, 5.0, 1.0};
  const Channel n = normalize_direct_gains(c);
  EXPECT_EQ(n.h11, 1.0);
  EXPECT_EQ(n.h22, 1.0);
  // received power of each input at each receiver is unchanged
  EXPECT_NEAR(n.h12 * n.h12 * n.P1, c.h12 * c.h12 * c.P1, 1e-12);
  EXPECT_NEAR(n.h1R * n.h1R * n.P1, c.h1R * c.h1R * c.P1, 1e-12);
  EXPECT_NEAR(n.h21 * n.h21 * n.P2, c.h21 * c.h21 * c.P2, 1e-12);
  EXPECT_NEAR(n.h2R * n.h2R * n.P2, c.h2R * c.h2R * c.P2, 1e-12);
  c.h11 = 0.0;
  EXPECT_THROW(normalize_direct_gains(c), Error);
}

TEST(SymmetricThreshold, Examples) {
  EXPECT_NEAR(*symmetric_weak_threshold(0.1, 1.0), 0.79010, 1e-5);
  EXPECT_NEAR(*symmetric_weak_threshold(1e-9, 1.0), 1.0, 1e-6);
  EXPECT_FALSE(symmetric_weak_threshold(0.5, 1.2589));
  EXPECT_THROW(symmetric_weak_threshold(-0.1, 1.0), Error);
}

TEST(SymmetricThreshold, ExactVersion) {
  EXPECT_NEAR(*symmetric_weak_threshold_exact(0.1, 1.0), 0.798 / (1.01 * 1.01), 1e-12);
  EXPECT_FALSE(symmetric_weak_threshold_exact(0.5, 1.2589));
}

TEST(SymmetricThreshold, StrictlyDecreasing) {
  for (auto fn : {symmetric_weak_threshold, symmetric_weak_threshold_exact}) {
    double prev = 2.0;
    for (double hc = 0.0; hc < 0.5; hc += 0.01) {
      auto t = fn(hc, 1.0);
      if (!t) break;
      EXPECT_LT(*t, prev);
      prev = *t;
    }
    prev = 2.0;
    for (double p = 0.0; p < 30.0; p += 0.5) {
      auto t = fn(0.2, p);
      if (!t) break;
      EXPECT_LT(*t, prev);
      prev = *t;
    }
  }
}

TEST(GenieSlack, MaximizerIsFeasibleAtThreshold) {
  const double hc = 0.1, P = 1.0;
  const double t = *symmetric_weak_threshold_exact(hc, P);
  const double rho = std::sqrt(1.0 - hc * (1.0 + hc * hc * P));
  const Channel at = SymmetricChannel{1.0, hc, std::sqrt(t), 1.0, P, 1.0}.expand();
  EXPECT_NEAR(genie_slack(at, GenieCorrelations{rho, rho, 0.0, 0.0}).min(), 0.0, 1e-12);
  const Channel over = SymmetricChannel{1.0, hc, std::sqrt(t * 1.01), 1.0, P, 1.0}.expand();
  EXPECT_LT(genie_slack(over, GenieCorrelations{rho, rho, 0.0, 0.0}).min(), 0.0);
}

TEST(WeakSearch, Examples) {
  const auto decoupled = weak_feasibility_search(SymmetricChannel{1.0, 0.0, 1e-3, 1.0, 1.0, 1.0}.expand());
  EXPECT_EQ(decoupled.tag, RegimeTag::WeakPotentFeasible);

  const auto half = weak_feasibility_search(SymmetricChannel{1.0, 0.1, std::sqrt(0.5), 1.0, 1.0, 1.0}.expand());
  EXPECT_EQ(half.tag, RegimeTag::WeakPotentFeasible);
  ASSERT_TRUE(half.witness);
  EXPECT_NEAR(half.witness->rho3, 0.0, 1e-12);
  EXPECT_NEAR(half.witness->rho4, 0.0, 1e-12);

  const auto fifth = classify(SymmetricChannel{1.0, 0.1, std::sqrt(0.2), 1.0, 1.0, 1.0}.expand());
  EXPECT_EQ(fifth.tag, RegimeTag::WeakPotentFeasible);

  const auto big = classify(SymmetricChannel{1.0, 0.5, 0.1, 1.0, 1.2589, 1.0}.expand());
  EXPECT_EQ(big.tag, RegimeTag::Unclassified);
}

TEST(WeakSearch, WitnessSatisfiesConditions) {
  const Channel c{1.3, 0.1, 0.15, 0.9, 0.2, 0.3, 1.0, 1.0, 2.0, 1.5, 1.0};
  const auto r = weak_feasibility_search(c);
  ASSERT_EQ(r.tag, RegimeTag::WeakPotentFeasible);
  EXPECT_FALSE(r.symmetric_fast_path);
  EXPECT_GE(genie_slack(normalize_direct_gains(c), *r.witness).min(), 0.0);
}

TEST(WeakSearch, ConsistentWithSymmetricThreshold) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> hc_d(0.0, 0.45), p_d(0.1, 10.0), frac(0.0, 1.0);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const double hc = hc_d(rng), P = p_d(rng);
    const auto thr = symmetric_weak_threshold_exact(hc, P);
    if (!thr) continue;
    const double hs = std::sqrt(frac(rng) * *thr);
    const auto r = weak_feasibility_search(SymmetricChannel{1.0, hc, hs, 1.0, P, 1.0}.expand());
    EXPECT_EQ(r.tag, RegimeTag::WeakPotentFeasible) << "hc=" << hc << " P=" << P << " hs=" << hs;
    if (r.symmetric_fast_path) {
      EXPECT_LE(hs * hs, 1.0);
    }
    if (checked % 10 == 0) {
      // slightly asymmetric copy goes through the grid scan
      Channel c = SymmetricChannel{1.0, hc, hs, 1.0, P, 1.0}.expand();
      c.h2R *= 1.0 - 1e-6;
      const auto g = weak_feasibility_search(c);
      EXPECT_EQ(g.tag, RegimeTag::WeakPotentFeasible) << "grid path hc=" << hc << " P=" << P << " hs=" << hs;
      EXPECT_FALSE(g.symmetric_fast_path);
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(WeakSearch, PublishedThresholdCanOverstateFeasibility) {
  // hs^2 between the exact and the published thresholds
  const double hc = 0.1, P = 1.0;
  const double hs2 = 0.5 * (*symmetric_weak_threshold_exact(hc, P) + *symmetric_weak_threshold(hc, P));
  const auto r = weak_feasibility_search(SymmetricChannel{1.0, hc, std::sqrt(hs2), 1.0, P, 1.0}.expand(), 32);
  EXPECT_EQ(r.tag, RegimeTag::Unclassified);
}

TEST(Classify, Examples) {
  const Channel fig5 = SymmetricChannel{1.0, 2.0, 2.0, 1.0, db_to_linear(1.0), 1.0}.expand();
  EXPECT_EQ(classify(fig5).tag, RegimeTag::StrongInterference);
  const Channel near = SymmetricChannel{1.0, 0.99, 3.0, 1.0, 1.0, 1.0}.expand();
  EXPECT_EQ(classify(near, 16).tag, RegimeTag::Unclassified);
  EXPECT_EQ(to_string(RegimeTag::WeakPotentFeasible), "weak-potent");
}

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

// Shared random generators for the property tests and the acceptance suite.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gifrc/gifrc.hpp"

namespace gifrc::testing {

/// Gains U(0.05, 2.5), powers U(-5, 20) dB.
inline Channel random_channel(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> gain(0.05, 2.5), pdb(-5.0, 20.0);
  Channel c;
  c.h11 = gain(rng);
  c.h21 = gain(rng);
  c.h12 = gain(rng);
  c.h22 = gain(rng);
  c.h1R = gain(rng);
  c.h2R = gain(rng);
  c.hR1 = gain(rng);
  c.hR2 = gain(rng);
  c.P1 = db_to_linear(pdb(rng));
  c.P2 = db_to_linear(pdb(rng));
  c.PR = db_to_linear(pdb(rng));
  return c;
}

/// Log-uniform on [1e-3, 1e3].
inline double random_sigma2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> e(-3.0, 3.0);
  return std::pow(10.0, e(rng));
}

/// Cross gains at least the direct gains.
inline Channel random_strong_channel(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> direct(0.2, 1.5), ratio(1.0, 3.0), gain(0.05, 2.5), pdb(-5.0, 20.0),
      prdb(-5.0, 30.0);
  Channel c;
  c.h11 = direct(rng);
  c.h22 = direct(rng);
  c.h12 = c.h11 * ratio(rng);
  c.h21 = c.h22 * ratio(rng);
  c.h1R = gain(rng);
  c.h2R = gain(rng);
  c.hR1 = gain(rng);
  c.hR2 = gain(rng);
  c.P1 = db_to_linear(pdb(rng));
  c.P2 = db_to_linear(pdb(rng));
  c.PR = db_to_linear(prdb(rng));
  return c;
}

/// Weak cross and source-relay gains; draws until the genie search succeeds.
inline Channel random_weak_feasible_channel(std::mt19937_64& rng, int grid_n = 64) {
  std::uniform_real_distribution<double> direct(0.5, 2.0), cross(0.0, 0.3), relay_in(0.0, 0.8), gain(0.05, 2.5),
      pdb(-5.0, 20.0), prdb(-5.0, 30.0);
  while (true) {
    Channel c;
    c.h11 = direct(rng);
    c.h22 = direct(rng);
    c.h12 = c.h11 * cross(rng);
    c.h21 = c.h22 * cross(rng);
    c.h1R = c.h11 * relay_in(rng);
    c.h2R = c.h22 * relay_in(rng);
    c.hR1 = gain(rng);
    c.hR2 = gain(rng);
    c.P1 = db_to_linear(pdb(rng));
    c.P2 = db_to_linear(pdb(rng));
    c.PR = db_to_linear(prdb(rng));
    if (classify(c, grid_n).tag == RegimeTag::WeakPotentFeasible) return c;
  }
}

/// A random Gaussian system with `sources` independent sources and observables
/// named O0.. built from N(0,1) coefficients.
struct RandomSystem {
  GaussianSystem sys;
  std::vector<std::string> names;
};

inline RandomSystem random_system(std::mt19937_64& rng, int sources, int observables) {
  std::uniform_real_distribution<double> var(0.2, 3.0);
  std::normal_distribution<double> coef(0.0, 1.0);
  RandomSystem r;
  for (int k = 0; k < sources; ++k) r.sys.add_source("S" + std::to_string(k), var(rng));
  for (int i = 0; i < observables; ++i) {
    std::vector<double> c(static_cast<std::size_t>(sources));
    for (auto& x : c) x = coef(rng);
    r.names.push_back("O" + std::to_string(i));
    r.sys.add_observable_coeffs(r.names.back(), c);
  }
  return r;
}

/// Symmetric in-band relay channel used by the strong-interference figures.
inline Channel strong_symmetric(double p_db, double pr_db) {
  return SymmetricChannel{1.0, 2.0, 2.0, 1.0, db_to_linear(p_db), db_to_linear(pr_db)}.expand();
}

/// Weak-interference figure channel.
inline Channel weak_figure_channel(double pr) {
  return SymmetricChannel{1.0, std::sqrt(0.1), std::sqrt(0.8), 1.0, db_to_linear(1.0), pr}.expand();
}

}  // namespace gifrc::testing

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

// Deterministic derivative-free maximization on small boxes (at most a few
// axes). An exhaustive grid pass is followed by local refinement rounds: round r
// re-grids a window of half-width shrink^(r-1) * (first-pass spacing) around
// the incumbent with 2/shrink + 1 points per axis, so each round shrinks both
// the window and the spacing by `shrink`.
//
// Ties in the first pass go to the lexicographically smallest grid index; in
// refinement the incumbent is only replaced by a strictly better point, which
// makes the value non-decreasing across rounds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gifrc/common.hpp"

namespace gifrc {

enum class AxisScale { Linear, Log };

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  int count = 2;
  AxisScale scale = AxisScale::Linear;
  std::vector<double> extra{};  // additional points merged into the first-pass grid
};

struct SearchSpec {
  std::vector<Axis> axes;
  int rounds = 3;
  double shrink = 0.2;
  double tie_tol = 0.0;  // a point replaces the incumbent only if better by more than this
};

struct SearchResult {
  std::vector<double> argmax;
  double value = -kInf;
  bool feasible = false;
  std::size_t evaluations = 0;
};

namespace detail {

inline double to_search(const Axis& a, double x) {
  return a.scale == AxisScale::Log ? std::log10(x) : x;
}
inline double from_search(const Axis& a, double t) {
  return a.scale == AxisScale::Log ? std::pow(10.0, t) : t;
}

inline void validate(const SearchSpec& spec) {
  if (spec.axes.empty()) throw Error("search spec needs at least one axis");
  if (!(spec.shrink > 0.0 && spec.shrink < 1.0)) throw Error("shrink factor must be in (0,1)");
  if (spec.rounds < 0) throw Error("refinement rounds must be non-negative");
  if (!(spec.tie_tol >= 0.0)) throw Error("tie tolerance must be non-negative");
  for (const auto& a : spec.axes) {
    if (a.count < 2) throw Error("grid count must be at least 2");
    if (!(a.hi >= a.lo)) throw Error("axis upper bound below lower bound");
    if (a.scale == AxisScale::Log && !(a.lo > 0.0)) throw Error("log axis needs a positive lower bound");
  }
}

inline std::vector<double> axis_points(const Axis& a) {
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(a.count) + a.extra.size());
  const double t0 = to_search(a, a.lo);
  const double t1 = to_search(a, a.hi);
  for (int i = 0; i < a.count; ++i) {
    const double t = i == a.count - 1 ? t1 : t0 + (t1 - t0) * i / (a.count - 1);
    pts.push_back(i == 0 ? a.lo : (i == a.count - 1 ? a.hi : from_search(a, t)));
  }
  for (double x : a.extra) {
    if (x >= a.lo && x <= a.hi) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Visits the Cartesian product in lexicographic order (last axis fastest).
// The visitor returns false to stop early.
template <class Visitor>
void for_each_grid_point(const std::vector<std::vector<double>>& grids, Visitor&& visit) {
  const std::size_t dims = grids.size();
  for (const auto& g : grids) {
    if (g.empty()) return;
  }
  std::vector<std::size_t> idx(dims, 0);
  std::vector<double> x(dims);
  for (std::size_t d = 0; d < dims; ++d) x[d] = grids[d][0];
  while (true) {
    if (!visit(std::span<const double>(x))) return;
    std::size_t d = dims;
    while (d > 0) {
      --d;
      if (++idx[d] < grids[d].size()) {
        x[d] = grids[d][idx[d]];
        break;
      }
      idx[d] = 0;
      x[d] = grids[d][0];
      if (d == 0) return;
    }
  }
}

inline double sanitize(double v) { return std::isnan(v) ? -kInf : v; }

template <class F>
void refine(F& f, const SearchSpec& spec, SearchResult& best) {
  const int per_axis = static_cast<int>(std::lround(2.0 / spec.shrink)) + 1;
  for (int r = 1; r <= spec.rounds; ++r) {
    std::vector<std::vector<double>> grids;
    for (std::size_t d = 0; d < spec.axes.size(); ++d) {
      const Axis& a = spec.axes[d];
      const double t0 = to_search(a, a.lo);
      const double t1 = to_search(a, a.hi);
      const double spacing = (t1 - t0) / (a.count - 1);
      const double half = spacing * std::pow(spec.shrink, r - 1);
      const double center = to_search(a, best.argmax[d]);
      const double lo = std::max(t0, center - half);
      const double hi = std::min(t1, center + half);
      std::vector<double> pts;
      if (hi > lo) {
        for (int i = 0; i < per_axis; ++i) {
          pts.push_back(from_search(a, lo + (hi - lo) * i / (per_axis - 1)));
        }
      }
      pts.push_back(best.argmax[d]);
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      grids.push_back(std::move(pts));
    }
    SearchResult round = best;
    for_each_grid_point(grids, [&](std::span<const double> x) {
      const double v = sanitize(f(x));
      ++best.evaluations;
      if (v > round.value + spec.tie_tol) {
        round.value = v;
        round.argmax.assign(x.begin(), x.end());
      }
      return true;
    });
    round.evaluations = best.evaluations;
    best = std::move(round);
  }
}

}  // namespace detail

/// Maximizes `objective(std::span<const double>) -> double` over the box in
/// `spec`. Infeasible points should return -infinity; if every point does the
/// result has feasible == false.
template <class F>
SearchResult grid_maximize(F&& objective, const SearchSpec& spec) {
  detail::validate(spec);
  std::vector<std::vector<double>> grids;
  for (const auto& a : spec.axes) grids.push_back(detail::axis_points(a));

  SearchResult best;
  detail::for_each_grid_point(grids, [&](std::span<const double> x) {
    const double v = detail::sanitize(objective(x));
    ++best.evaluations;
    if (best.argmax.empty() || v > best.value + spec.tie_tol) {
      best.value = v;
      best.argmax.assign(x.begin(), x.end());
    }
    return true;
  });
  if (best.value == -kInf) {
    best.feasible = false;
    return best;
  }
  detail::refine(objective, spec, best);
  best.feasible = true;
  return best;
}

struct Witness {
  std::vector<double> point;
  double slack = 0.0;
};

/// Finds a point with slack(x) >= 0. Returns the first such grid point in
/// lexicographic order, moved uphill in slack by the refinement rounds. If the
/// grid has none, the best grid point is refined and accepted if it becomes
/// feasible.
template <class Slack>
std::optional<Witness> feasibility_scan(Slack&& slack, const SearchSpec& spec) {
  detail::validate(spec);
  std::vector<std::vector<double>> grids;
  for (const auto& a : spec.axes) grids.push_back(detail::axis_points(a));

  SearchResult best;
  bool found = false;
  detail::for_each_grid_point(grids, [&](std::span<const double> x) {
    const double v = detail::sanitize(slack(x));
    ++best.evaluations;
    if (best.argmax.empty() || v > best.value) {
      best.value = v;
      best.argmax.assign(x.begin(), x.end());
    }
    if (v >= 0.0) {
      best.value = v;
      best.argmax.assign(x.begin(), x.end());
      found = true;
      return false;
    }
    return true;
  });
  if (best.argmax.empty()) return std::nullopt;
  detail::refine(slack, spec, best);
  if (!found && !(best.value >= 0.0)) return std::nullopt;
  return Witness{best.argmax, best.value};
}

/// Predicate form: the first grid point (lexicographic) where pred holds.
template <class Pred>
std::optional<std::vector<double>> feasibility_scan_predicate(Pred&& pred, const SearchSpec& spec) {
  auto slack = [&](std::span<const double> x) { return pred(x) ? 0.0 : -1.0; };
  auto w = feasibility_scan(slack, spec);
  if (!w) return std::nullopt;
  return w->point;
}

}  // namespace gifrc

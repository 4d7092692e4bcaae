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

// Sweep driver behind the command-line tool: flat key=value configs, one CSV
// row per (point, target), minimal SVG plots and the pre-registered figures.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gifrc/bounds.hpp"
#include "gifrc/channel.hpp"
#include "gifrc/common.hpp"
#include "gifrc/schemes.hpp"

namespace gifrc::experiment {

/// Bad flags or config contents (exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

/// Unreadable or unwritable files (exit code 3).
struct IoError : Error {
  using Error::Error;
};

inline const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names{"cf1",  "cf2",  "cf",   "gcf1", "gcf2",
                                              "ghf1", "ghf2", "nnc1", "nnc2", "lattice"};
  return names;
}

inline const std::vector<std::string>& bound_names() {
  static const std::vector<std::string> names{"cutset", "potent", "potent-weak", "potent-strong"};
  return names;
}

inline const std::vector<std::string>& sweep_variables() {
  static const std::vector<std::string> names{"PR_dB", "P_dB", "hc", "hs"};
  return names;
}

struct SweepRange {
  std::string var;
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  [[nodiscard]] std::vector<double> points() const {
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
};

struct SweepConfig {
  ChannelGains gains{};
  double p1_db = 0.0;
  double p2_db = 0.0;
  std::optional<double> pr_db{};
  std::optional<double> pr_tracks_p{};  // PR_dB = k * P1_dB
  std::optional<SweepRange> sweep{};
  std::vector<std::string> schemes{};
  std::vector<std::string> bounds{};
  std::optional<int> grid{};
  std::uint64_t seed = 0;  // every evaluation is deterministic; kept for reproducible reruns
  std::string out{};
  unsigned threads = 0;  // 0: hardware concurrency
};

namespace detail {

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x)) throw ConfigError("");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad number for '" + key + "': '" + v + "'");
  }
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace detail

/// Parses `var=start:stop:step`.
inline SweepRange parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("sweep must look like var=start:stop:step");
  SweepRange r;
  r.var = detail::trim(text.substr(0, eq));
  std::vector<std::string> parts;
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(detail::trim(item));
  if (parts.size() != 3) throw ConfigError("sweep must look like var=start:stop:step");
  r.start = detail::parse_number("sweep start", parts[0]);
  r.stop = detail::parse_number("sweep stop", parts[1]);
  r.step = detail::parse_number("sweep step", parts[2]);
  return r;
}

/// Applies one key=value setting. Unknown keys are errors.
inline void apply_setting(SweepConfig& cfg, const std::string& key_in, const std::string& value_in) {
  const std::string key = detail::trim(key_in);
  const std::string v = detail::trim(value_in);
  auto num = [&] { return detail::parse_number(key, v); };
  ChannelGains& g = cfg.gains;
  if (key == "h11") g.h11 = num();
  else if (key == "h21") g.h21 = num();
  else if (key == "h12") g.h12 = num();
  else if (key == "h22") g.h22 = num();
  else if (key == "h1R") g.h1R = num();
  else if (key == "h2R") g.h2R = num();
  else if (key == "hR1") g.hR1 = num();
  else if (key == "hR2") g.hR2 = num();
  else if (key == "hd") g.h11 = g.h22 = num();
  else if (key == "hc") g.h12 = g.h21 = num();
  else if (key == "hs") g.h1R = g.h2R = num();
  else if (key == "hR") g.hR1 = g.hR2 = num();
  else if (key == "P_dB") cfg.p1_db = cfg.p2_db = num();
  else if (key == "P1_dB") cfg.p1_db = num();
  else if (key == "P2_dB") cfg.p2_db = num();
  else if (key == "PR_dB") cfg.pr_db = num();
  else if (key == "pr_tracks_p") cfg.pr_tracks_p = num();
  else if (key == "scheme" || key == "schemes") {
    for (const auto& s : detail::split_list(v)) {
      if (detail::contains(bound_names(), s)) cfg.bounds.push_back(s);
      else cfg.schemes.push_back(s);
    }
  } else if (key == "bounds") {
    for (const auto& s : detail::split_list(v)) cfg.bounds.push_back(s);
  } else if (key == "sweep") cfg.sweep = parse_sweep(v);
  else if (key == "grid") {
    const double x = num();
    if (x != std::floor(x)) throw ConfigError("grid must be an integer");
    cfg.grid = static_cast<int>(x);
  } else if (key == "seed") {
    const double x = num();
    if (x < 0 || x != std::floor(x)) throw ConfigError("seed must be a non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(x);
  } else if (key == "out") cfg.out = v;
  else if (key == "threads") cfg.threads = static_cast<unsigned>(std::max(0.0, num()));
  else throw ConfigError("unknown key '" + key + "'");
}

/// Flat key=value text; '#' starts a comment.
inline void parse_config_text(SweepConfig& cfg, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

inline void load_config_file(SweepConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  parse_config_text(cfg, buf.str());
}

inline void validate(const SweepConfig& cfg, bool need_sweep) {
  if (cfg.schemes.empty() && cfg.bounds.empty()) throw ConfigError("select at least one scheme or bound");
  for (const auto& s : cfg.schemes) {
    if (!detail::contains(scheme_names(), s)) throw ConfigError("unknown scheme '" + s + "'");
  }
  for (const auto& b : cfg.bounds) {
    if (!detail::contains(bound_names(), b)) throw ConfigError("unknown bound '" + b + "'");
  }
  if (!cfg.pr_db && !cfg.pr_tracks_p) throw ConfigError("relay power missing (PR_dB or pr_tracks_p)");
  if (cfg.grid && *cfg.grid < 2) throw ConfigError("grid must be at least 2");
  if (need_sweep && !cfg.sweep) throw ConfigError("sweep missing (var=start:stop:step)");
  if (cfg.sweep) {
    const auto& s = *cfg.sweep;
    if (!detail::contains(sweep_variables(), s.var)) throw ConfigError("cannot sweep '" + s.var + "'");
    if (!(s.step > 0.0)) throw ConfigError("sweep step must be positive");
    if (!(s.stop >= s.start)) throw ConfigError("sweep stop below start");
  }
  try {
    from_db(cfg.gains, cfg.p1_db, cfg.p2_db, cfg.pr_db.value_or(0.0)).validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

/// Channel at one sweep value (or the base channel when var is empty).
inline Channel channel_at(const SweepConfig& cfg, const std::string& var = {}, double value = 0.0) {
  ChannelGains g = cfg.gains;
  double p1 = cfg.p1_db, p2 = cfg.p2_db;
  std::optional<double> pr = cfg.pr_db;
  if (var == "P_dB") p1 = p2 = value;
  else if (var == "PR_dB") pr = value;
  else if (var == "hc") g.h12 = g.h21 = value;
  else if (var == "hs") g.h1R = g.h2R = value;
  if (cfg.pr_tracks_p && var != "PR_dB") pr = *cfg.pr_tracks_p * p1;
  Channel ch = from_db(g, p1, p2, pr.value_or(0.0));
  try {
    ch.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return ch;
}

struct Row {
  std::string sweep_var;
  double value = 0.0;
  std::string scheme;
  double bits = 0.0;
  bool feasible = true;
  std::optional<double> alpha, beta, sigma2, rhoR1, rhoR2;
  std::string regime;
  std::string binding;
};

struct BoundReport {
  std::vector<Row> rows;
};

inline OptimizerGrid optimizer_grid(const SweepConfig& cfg) {
  OptimizerGrid g;
  if (cfg.grid) {
    g.split_points = *cfg.grid;
    g.sigma2_points = *cfg.grid;
  }
  return g;
}

/// Evaluates every requested scheme and bound on one channel.
inline std::vector<Row> evaluate_point(const Channel& ch, const SweepConfig& cfg) {
  const int grid = cfg.grid.value_or(64);
  const Regime regime = classify(ch, grid);
  const std::string regime_name(to_string(regime.tag));
  const OptimizerGrid og = optimizer_grid(cfg);
  std::vector<Row> rows;

  auto scheme_row = [&](const std::string& name, const RateResult& r) {
    Row row;
    row.scheme = name;
    row.feasible = r.feasible;
    row.bits = r.feasible ? r.value : 0.0;
    if (r.params) {
      if (name.rfind("cf", 0) == 0) {
        row.alpha = r.params->alpha;
        row.beta = r.params->beta;
      }
      if (std::isfinite(r.params->sigma2)) row.sigma2 = r.params->sigma2;
    }
    row.regime = regime_name;
    row.binding = r.binding;
    rows.push_back(std::move(row));
  };

  for (const auto& s : cfg.schemes) {
    if (s == "cf1") scheme_row(s, optimize_cf(ch, Mode::Noise, og));
    else if (s == "cf2") scheme_row(s, optimize_cf(ch, Mode::Decode, og));
    else if (s == "cf") scheme_row(s, optimize_cf(ch, Mode::Split, og));
    else if (s == "gcf1") scheme_row(s, optimize_scheme(ch, Scheme::GCF, Mode::Noise, og));
    else if (s == "gcf2") scheme_row(s, optimize_scheme(ch, Scheme::GCF, Mode::Decode, og));
    else if (s == "ghf1") scheme_row(s, optimize_scheme(ch, Scheme::GHF, Mode::Noise, og));
    else if (s == "ghf2") scheme_row(s, optimize_scheme(ch, Scheme::GHF, Mode::Decode, og));
    else if (s == "nnc1") scheme_row(s, optimize_scheme(ch, Scheme::NNC, Mode::Noise, og));
    else if (s == "nnc2") scheme_row(s, optimize_scheme(ch, Scheme::NNC, Mode::Decode, og));
    else if (s == "lattice") {
      try {
        scheme_row(s, optimize_scheme(ch, Scheme::Lattice, Mode::Noise, og));
      } catch (const Error&) {
        RateResult r;
        r.feasible = false;
        r.binding = "asymmetric";
        scheme_row(s, r);
      }
    }
  }

  for (const auto& b : cfg.bounds) {
    Row row;
    row.scheme = b;
    row.regime = regime_name;
    if (b == "cutset") {
      const auto m = cutset_sum_max(ch, cfg.grid.value_or(65));
      const auto at = cutset_region(ch, m.params);
      row.bits = m.value;
      row.rhoR1 = m.params.rhoR1;
      row.rhoR2 = m.params.rhoR2;
      row.binding = at.sum_broadcast <= at.sum_mac ? "broadcast" : "mac";
    } else {
      const bool strong = b == "potent-strong" || (b == "potent" && regime.tag == RegimeTag::StrongInterference);
      if (strong) {
        const auto r = potent_strong_region(ch);
        row.bits = r.sum_capacity();
        row.binding = regime.tag == RegimeTag::StrongInterference ? "capacity" : "unverified";
      } else {
        row.bits = potent_weak_value(ch);
        row.binding = regime.tag == RegimeTag::WeakPotentFeasible ? "capacity" : "unverified";
      }
      if (b == "potent") row.scheme = strong ? "potent-strong" : "potent-weak";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Runs the sweep (or the single base point); points run on worker threads and
/// rows come back in sweep order.
inline BoundReport run(const SweepConfig& cfg) {
  validate(cfg, false);
  std::vector<double> values{0.0};
  std::string var;
  if (cfg.sweep) {
    var = cfg.sweep->var;
    values = cfg.sweep->points();
  }
  std::vector<Channel> channels;
  for (double v : values) channels.push_back(channel_at(cfg, var, v));

  std::vector<std::vector<Row>> per_point(values.size());
  std::vector<std::string> errors(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        per_point[i] = evaluate_point(channels[i], cfg);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  unsigned n = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, values.size()));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }

  BoundReport report;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!errors[i].empty()) throw Error("sweep point " + std::to_string(values[i]) + ": " + errors[i]);
    for (auto& r : per_point[i]) {
      r.sweep_var = var.empty() ? "none" : var;
      r.value = values[i];
      report.rows.push_back(std::move(r));
    }
  }
  return report;
}

inline constexpr const char* kCsvHeader =
    "sweep_var,value,scheme,bits,feasible,alpha,beta,sigma2,rhoR1,rhoR2,regime,binding";

inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

inline std::string to_csv(const BoundReport& report) {
  std::string out = kCsvHeader;
  out += '\n';
  auto opt = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(); };
  for (const auto& r : report.rows) {
    out += r.sweep_var + ',' + format_number(r.value) + ',' + r.scheme + ',' +
           (r.feasible ? format_number(r.bits) : std::string()) + ',' + (r.feasible ? "1" : "0") + ',' +
           opt(r.alpha) + ',' + opt(r.beta) + ',' + opt(r.sigma2) + ',' + opt(r.rhoR1) + ',' + opt(r.rhoR2) +
           ',' + r.regime + ',' + r.binding + '\n';
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << text;
  f.flush();
  if (!f) throw IoError("write failed for '" + path + "'");
}

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Groups rows by scheme, in first-appearance order. `use_alpha` plots the
/// reported alpha instead of the rate.
inline std::vector<Series> series_of(const BoundReport& report, bool use_alpha = false) {
  std::vector<Series> out;
  for (const auto& r : report.rows) {
    if (!r.feasible) continue;
    const double y = use_alpha ? r.alpha.value_or(0.0) : r.bits;
    auto it = std::find_if(out.begin(), out.end(), [&](const Series& s) { return s.label == r.scheme; });
    if (it == out.end()) {
      out.push_back({r.scheme, {}});
      it = out.end() - 1;
    }
    it->points.emplace_back(r.value, y);
  }
  return out;
}

/// Plain polyline plot.
inline std::string to_svg(const std::vector<Series>& series, const std::string& title,
                          const std::string& x_label, const std::string& y_label) {
  constexpr double W = 640, H = 420, L = 60, R = 150, T = 40, B = 50;
  double x0 = kInf, x1 = -kInf, y0 = 0.0, y1 = -kInf;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y1 = 1;
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                 "#8c564b", "#e377c2", "#7f7f7f", "#17becf", "#bcbd22"};
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
  s += "<text x=\"" + format_number(W / 2) + "\" y=\"20\" text-anchor=\"middle\">" + title + "</text>\n";
  s += "<rect x=\"" + format_number(L) + "\" y=\"" + format_number(T) + "\" width=\"" + format_number(W - L - R) +
       "\" height=\"" + format_number(H - T - B) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"" + format_number(L) + "\" y=\"" + format_number(H - B + 15) + "\">" + format_number(x0) + "</text>\n";
  s += "<text x=\"" + format_number(W - R) + "\" y=\"" + format_number(H - B + 15) + "\" text-anchor=\"end\">" +
       format_number(x1) + "</text>\n";
  s += "<text x=\"" + format_number(L - 5) + "\" y=\"" + format_number(H - B) + "\" text-anchor=\"end\">" +
       format_number(y0) + "</text>\n";
  s += "<text x=\"" + format_number(L - 5) + "\" y=\"" + format_number(T + 10) + "\" text-anchor=\"end\">" +
       format_number(y1) + "</text>\n";
  s += "<text x=\"" + format_number((L + W - R) / 2) + "\" y=\"" + format_number(H - 15) +
       "\" text-anchor=\"middle\">" + x_label + "</text>\n";
  s += "<text x=\"15\" y=\"" + format_number((T + H - B) / 2) + "\" transform=\"rotate(-90 15 " +
       format_number((T + H - B) / 2) + ")\" text-anchor=\"middle\">" + y_label + "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* c = colors[i % 10];
    s += "<polyline fill=\"none\" stroke=\"" + std::string(c) + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < series[i].points.size(); ++k) {
      if (k) s += ' ';
      s += format_number(px(series[i].points[k].first)) + ',' + format_number(py(series[i].points[k].second));
    }
    s += "\"/>\n";
    const double ly = T + 15 + 18 * static_cast<double>(i);
    s += "<line x1=\"" + format_number(W - R + 10) + "\" y1=\"" + format_number(ly) + "\" x2=\"" +
         format_number(W - R + 30) + "\" y2=\"" + format_number(ly) + "\" stroke=\"" + c + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + format_number(W - R + 35) + "\" y=\"" + format_number(ly + 4) + "\">" + series[i].label +
         "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

/// Sweep with CSV written to cfg.out (or returned only when out is empty).
inline std::string cmd_sweep(const SweepConfig& cfg) {
  validate(cfg, true);
  const std::string csv = to_csv(run(cfg));
  if (!cfg.out.empty()) write_file(cfg.out, csv);
  return csv;
}

inline std::string cmd_eval(const SweepConfig& cfg) {
  SweepConfig single = cfg;
  single.sweep.reset();
  validate(single, false);
  return to_csv(run(single));
}

struct FigureSpec {
  int id = 0;
  std::string title;
  std::string x_label;
  std::string y_label;
  bool plot_alpha = false;
  std::vector<std::pair<std::string, SweepConfig>> parts;  // label suffix, config
};

inline const std::vector<int>& figure_ids() {
  static const std::vector<int> ids{2, 4, 5, 6, 7, 8, 9};
  return ids;
}

/// Pre-registered sweeps. Figures 6 to 9 use reconstructed channel parameters.
inline FigureSpec figure_spec(int id) {
  FigureSpec f;
  f.id = id;
  f.y_label = "sum rate (bits/use)";
  auto base = [](double hd, double hc, double hs, double hR) {
    SweepConfig c;
    c.gains = ChannelGains{hd, hc, hc, hd, hs, hs, hR, hR};
    c.p1_db = c.p2_db = 1.0;
    return c;
  };
  const double fig4_hc = std::sqrt(0.1), fig4_hs = std::sqrt(0.8);
  switch (id) {
    case 2: {
      f.title = "optimal common share vs cross gain, P = 1 dB";
      f.x_label = "hc";
      f.y_label = "alpha";
      f.plot_alpha = true;
      for (double pr : {1.0, 10.0, 20.0}) {
        SweepConfig c = base(1.0, 0.0, 1.0, 1.0);
        c.pr_db = pr;
        c.sweep = SweepRange{"hc", 0.0, 2.0, 0.1};
        c.schemes = {"cf"};
        f.parts.emplace_back("[PR_dB=" + format_number(pr) + "]", c);
      }
      break;
    }
    case 4: {
      f.title = "weak interference bounds, P = 1 dB";
      f.x_label = "PR (dB)";
      SweepConfig c = base(1.0, fig4_hc, fig4_hs, 1.0);
      c.pr_db = 0.0;
      c.sweep = SweepRange{"PR_dB", -10.0, 30.0, 2.0};
      c.bounds = {"cutset", "potent-weak"};
      f.parts.emplace_back("", c);
      break;
    }
    case 5: {
      f.title = "strong interference bounds, P = 1 dB";
      f.x_label = "PR (dB)";
      SweepConfig c = base(1.0, 2.0, 2.0, 1.0);
      c.pr_db = 0.0;
      c.sweep = SweepRange{"PR_dB", -10.0, 30.0, 2.0};
      c.bounds = {"cutset", "potent-strong"};
      f.parts.emplace_back("", c);
      break;
    }
    case 6: {
      f.title = "weak interference schemes, P = 1 dB (reconstruction)";
      f.x_label = "PR (dB)";
      SweepConfig c = base(1.0, fig4_hc, fig4_hs, 1.0);
      c.pr_db = 0.0;
      c.sweep = SweepRange{"PR_dB", -10.0, 30.0, 2.0};
      c.schemes = {"cf", "gcf1", "gcf2", "nnc1", "nnc2"};
      c.bounds = {"potent-weak"};
      f.parts.emplace_back("", c);
      break;
    }
    case 7: {
      f.title = "strong interference, PR = 2P in dB (reconstruction)";
      f.x_label = "P (dB)";
      SweepConfig c = base(1.0, 2.0, 2.0, 1.0);
      c.pr_tracks_p = 2.0;
      c.sweep = SweepRange{"P_dB", 0.0, 20.0, 1.0};
      c.schemes = {"gcf2"};
      c.bounds = {"potent-strong", "cutset"};
      f.parts.emplace_back("", c);
      break;
    }
    case 8: {
      f.title = "asymmetric relay links (reconstruction)";
      f.x_label = "PR (dB)";
      SweepConfig c = base(1.0, 2.0, 2.0, 1.0);
      c.gains.hR2 = 0.5;
      c.pr_db = 0.0;
      c.sweep = SweepRange{"PR_dB", -10.0, 30.0, 2.0};
      c.schemes = {"gcf2", "nnc2"};
      c.bounds = {"potent-strong", "cutset"};
      f.parts.emplace_back("", c);
      break;
    }
    case 9: {
      f.title = "compute-and-forward vs NNC, PR = P (reconstruction)";
      f.x_label = "P (dB)";
      SweepConfig c = base(0.3, 2.0, 1.0, 1.0);
      c.pr_tracks_p = 1.0;
      c.sweep = SweepRange{"P_dB", 0.0, 20.0, 1.0};
      c.schemes = {"lattice", "nnc1", "nnc2", "gcf2"};
      f.parts.emplace_back("", c);
      break;
    }
    default:
      throw ConfigError("unknown figure " + std::to_string(id) + " (expected 2, 4, 5, 6, 7, 8 or 9)");
  }
  return f;
}

struct FigureOutput {
  std::string csv;
  std::string svg;
};

inline FigureOutput run_figure(int id, unsigned threads = 0) {
  FigureSpec f = figure_spec(id);
  BoundReport all;
  for (auto& [suffix, cfg] : f.parts) {
    cfg.threads = threads;
    auto r = run(cfg);
    for (auto& row : r.rows) {
      row.scheme += suffix;
      all.rows.push_back(std::move(row));
    }
  }
  return {to_csv(all), to_svg(series_of(all, f.plot_alpha), f.title, f.x_label, f.y_label)};
}

/// Writes figN.csv and figN.svg into out_dir.
inline FigureOutput cmd_figure(int id, const std::string& out_dir, unsigned threads = 0) {
  figure_spec(id);  // rejects unknown ids before any work
  const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "'");
  auto out = run_figure(id, threads);
  const std::string stem = (dir / ("fig" + std::to_string(id))).string();
  write_file(stem + ".csv", out.csv);
  write_file(stem + ".svg", out.svg);
  return out;
}

/// Regime text with witness correlations.
inline std::string cmd_classify(const Channel& ch, int grid_n = 64) {
  const Regime r = classify(ch, grid_n);
  std::string out;
  switch (r.tag) {
    case RegimeTag::StrongInterference: out = "Strong"; break;
    case RegimeTag::WeakPotentFeasible: {
      const auto& w = *r.witness;
      out = "WeakPotentFeasible rho1=" + format_number(w.rho1) + " rho2=" + format_number(w.rho2) +
            " rho3=" + format_number(w.rho3) + " rho4=" + format_number(w.rho4);
      break;
    }
    case RegimeTag::Unclassified: out = "Unclassified"; break;
  }
  return out;
}

}  // namespace gifrc::experiment

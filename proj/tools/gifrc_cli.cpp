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
// Command-line front end: eval, sweep, figure, classify, dof.

#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "gifrc/gifrc.hpp"

namespace {

namespace ex = gifrc::experiment;

constexpr int kUsageError = 2;
constexpr int kIoError = 3;

// Inline settings in command-line order, applied after any --channel file.
struct Settings {
  std::string channel_file;
  std::vector<std::pair<std::string, std::string>> items;
};

void add_channel_options(CLI::App* app, Settings& s) {
  app->add_option("--channel", s.channel_file, "key=value config file");
  const std::vector<std::pair<std::string, std::string>> flags{
      {"--h11", "h11"}, {"--h21", "h21"}, {"--h12", "h12"}, {"--h22", "h22"},
      {"--h1R", "h1R"}, {"--h2R", "h2R"}, {"--hR1", "hR1"}, {"--hR2", "hR2"},
      {"--hd", "hd"},   {"--hc", "hc"},   {"--hs", "hs"},   {"--hR", "hR"},
      {"--P-db", "P_dB"}, {"--P1-db", "P1_dB"}, {"--P2-db", "P2_dB"}, {"--PR-db", "PR_dB"},
  };
  for (const auto& [flag, key] : flags) {
    app->add_option_function<std::string>(
        flag, [&s, key = key](const std::string& v) { s.items.emplace_back(key, v); }, "channel setting " + key);
  }
}

void add_run_options(CLI::App* app, Settings& s, bool sweep) {
  auto keyed = [&](const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [&s, key](const std::string& v) { s.items.emplace_back(key, v); }, help);
  };
  keyed("--schemes", "schemes", "comma list: cf1,cf2,cf,gcf1,gcf2,ghf1,ghf2,nnc1,nnc2,lattice");
  keyed("--bounds", "bounds", "comma list: cutset,potent,potent-weak,potent-strong");
  keyed("--grid", "grid", "grid points per axis for the optimizers");
  keyed("--seed", "seed", "seed recorded with the run");
  keyed("--out", "out", "output CSV path (stdout if omitted)");
  keyed("--threads", "threads", "worker threads (0: all cores)");
  keyed("--pr-tracks-p", "pr_tracks_p", "set PR_dB = k * P_dB");
  if (sweep) keyed("--sweep", "sweep", "var=start:stop:step with var in PR_dB, P_dB, hc, hs");
}

ex::SweepConfig build_config(const Settings& s) {
  ex::SweepConfig cfg;
  if (!s.channel_file.empty()) ex::load_config_file(cfg, s.channel_file);
  for (const auto& [k, v] : s.items) ex::apply_setting(cfg, k, v);
  return cfg;
}

void emit(const ex::SweepConfig& cfg, const std::string& csv, bool file_written) {
  if (!cfg.out.empty() && !file_written) ex::write_file(cfg.out, csv);
  if (cfg.out.empty()) std::cout << csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian interference relay channel rates and bounds"};
  app.require_subcommand(1);

  Settings eval_s, sweep_s, classify_s, dof_s;
  auto* eval = app.add_subcommand("eval", "evaluate schemes and bounds at one channel");
  add_channel_options(eval, eval_s);
  add_run_options(eval, eval_s, false);

  auto* sweep = app.add_subcommand("sweep", "sweep one variable and write CSV");
  add_channel_options(sweep, sweep_s);
  add_run_options(sweep, sweep_s, true);

  int figure_id = 0;
  std::string figure_dir = ".";
  unsigned figure_threads = 0;
  auto* figure = app.add_subcommand("figure", "reproduce a figure (CSV + SVG)");
  figure->add_option("id", figure_id, "2, 4, 5, 6, 7, 8 or 9")->required();
  figure->add_option("--out", figure_dir, "output directory");
  figure->add_option("--threads", figure_threads, "worker threads (0: all cores)");

  int classify_grid = 64;
  auto* cls = app.add_subcommand("classify", "interference regime with witness");
  add_channel_options(cls, classify_s);
  cls->add_option("--grid", classify_grid, "correlation grid points per axis")->check(CLI::Range(2, 1000));

  double dof_k = 1.0, dof_hi = 60.0;
  auto* dof = app.add_subcommand("dof", "high-SNR slope of the optimized GCF sum rate");
  add_channel_options(dof, dof_s);
  dof->add_option("--k", dof_k, "relay power exponent, PR = P^k");
  dof->add_option("--p-db-hi", dof_hi, "upper source power in dB (>= 40)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (eval->parsed()) {
      const auto cfg = build_config(eval_s);
      emit(cfg, ex::cmd_eval(cfg), false);
    } else if (sweep->parsed()) {
      const auto cfg = build_config(sweep_s);
      const auto csv = ex::cmd_sweep(cfg);
      emit(cfg, csv, true);
    } else if (figure->parsed()) {
      ex::cmd_figure(figure_id, figure_dir, figure_threads);
      std::cout << figure_dir << "/fig" << figure_id << ".csv\n" << figure_dir << "/fig" << figure_id << ".svg\n";
    } else if (cls->parsed()) {
      auto cfg = build_config(classify_s);
      if (!cfg.pr_db) cfg.pr_db = 0.0;
      std::cout << ex::cmd_classify(ex::channel_at(cfg), classify_grid) << '\n';
    } else if (dof->parsed()) {
      auto cfg = build_config(dof_s);
      if (!cfg.pr_db) cfg.pr_db = 0.0;
      const auto est = gifrc::dof_estimate(ex::channel_at(cfg), dof_k, dof_hi);
      std::printf("k=%g slope=%.4f\n", est.k, est.slope);
    }
  } catch (const ex::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return 0;
}

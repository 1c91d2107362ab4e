// Copyright 2026 The qkmeans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qkmeans command line: dataset generation, clustering, sweeps, comparison
// tables and QPU time estimates.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <type_traits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkmeans/bench.hpp"
#include "qkmeans/config.hpp"
#include "qkmeans/error.hpp"
#include "qkmeans/report.hpp"
#include "qkmeans/signal.hpp"

namespace {

using namespace qkmeans;

/// Writes to the named file, or stdout for "" and "-".
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  write(out);
}

KeyValueConfig load_or_empty(const std::string& path) {
  return path.empty() ? KeyValueConfig{} : KeyValueConfig::load(path);
}

/// Command-line values win over the config file.
template <typename T>
void override(KeyValueConfig& cfg, const std::string& key, const std::optional<T>& value) {
  if (!value) return;
  std::ostringstream s;
  s << std::setprecision(17) << *value;
  cfg.set(key, s.str());
}

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config, "key = value configuration file");
  cmd->add_option("--seed", opts.seed, "master RNG seed");
  cmd->add_option("-o,--out", opts.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid quantum-classical k-means on noisy M-QAM signals"};
  app.require_subcommand(1);

  // generate
  CommonOptions gen_opts;
  std::optional<int> gen_order, gen_per_symbol;
  std::optional<double> gen_sigma_phi, gen_sigma_n, gen_phi_b, gen_spacing;
  auto* gen = app.add_subcommand("generate", "write a synthetic labelled dataset as CSV");
  add_common(gen, gen_opts);
  gen->add_option("--order", gen_order, "constellation order M (default 16)");
  gen->add_option("--per-symbol", gen_per_symbol, "noisy copies per symbol (default 80)");
  gen->add_option("--sigma-phi", gen_sigma_phi, "phase-noise standard deviation (rad)");
  gen->add_option("--sigma-n", gen_sigma_n, "AWGN standard deviation per component");
  gen->add_option("--phi-b", gen_phi_b, "fixed rotation (rad)");
  gen->add_option("--spacing", gen_spacing, "grid step (default: corner radius 1)");

  // cluster
  CommonOptions cl_opts;
  std::string cl_data;
  std::optional<int> cl_order, cl_shots, cl_max_iter, cl_workers;
  std::optional<std::string> cl_metric, cl_init, cl_embedding;
  auto* cl = app.add_subcommand("cluster", "cluster a CSV dataset and print the outcome as JSON");
  add_common(cl, cl_opts);
  cl->add_option("--data", cl_data, "dataset CSV (i,q,label)")->required();
  cl->add_option("--order", cl_order, "constellation order M (default 16)");
  cl->add_option("--metric", cl_metric, "euclidean | quantum_analytic | quantum_sampled");
  cl->add_option("--embedding", cl_embedding, "rescaled | standard");
  cl->add_option("--shots", cl_shots, "swap-test shots per distance");
  cl->add_option("--max-iterations", cl_max_iter, "Lloyd iteration cap");
  cl->add_option("--init", cl_init, "constellation | kmeanspp");
  cl->add_option("--workers", cl_workers, "assignment threads");

  // sweep
  CommonOptions sw_opts;
  std::string sw_summary;
  std::optional<int> sw_workers;
  std::optional<std::uint64_t> sw_replay_seed;
  std::string sw_replay_value;
  auto* sw = app.add_subcommand("sweep", "run an accuracy sweep and write per-run CSV rows");
  add_common(sw, sw_opts);
  sw->get_option("--config")->required();
  sw->add_option("--summary", sw_summary, "also write mean/std per cell to this CSV");
  sw->add_option("--workers", sw_workers, "worker threads");
  sw->add_option("--replay-seed", sw_replay_seed, "re-run the single cell with this recorded seed");
  sw->add_option("--replay-axis-value", sw_replay_value, "axis_value of the cell to re-run");

  // compare
  CommonOptions cmp_opts;
  std::vector<int> cmp_sizes;
  std::optional<int> cmp_order, cmp_shots, cmp_max_iter, cmp_reps, cmp_workers;
  std::vector<std::string> cmp_presets;
  auto* cmp = app.add_subcommand("compare", "classical vs hybrid accuracy table per launch power");
  add_common(cmp, cmp_opts);
  cmp->add_option("--sizes", cmp_sizes, "total points per row (default 320 640 1280)");
  cmp->add_option("--order", cmp_order, "constellation order (default 64)");
  cmp->add_option("--shots", cmp_shots, "swap-test shots (default 50)");
  cmp->add_option("--max-iterations", cmp_max_iter, "iteration cap (default 5)");
  cmp->add_option("--repetitions", cmp_reps, "datasets averaged per row (default 5)");
  cmp->add_option("--workers", cmp_workers, "worker threads");
  cmp->add_option("--preset", cmp_presets, "dbm:sigma_phi:sigma_n, repeatable; replaces defaults");

  // estimate-qpu
  CommonOptions q_opts;
  long long q_centroids = 16, q_points = 5000, q_shots = 50;
  GateTimeModel model;
  bool q_json = false;
  auto* q = app.add_subcommand("estimate-qpu", "QPU wall time for one assignment pass");
  add_common(q, q_opts);
  q->add_option("--centroids", q_centroids, "number of centroids")->capture_default_str();
  q->add_option("--points", q_points, "number of data points")->capture_default_str();
  q->add_option("--shots", q_shots, "shots per distance estimate")->capture_default_str();
  q->add_option("--depth", model.circuit_depth, "transpiled circuit depth")->capture_default_str();
  q->add_option("--min-gate-ns", model.min_gate_ns, "fastest gate (ns)")->capture_default_str();
  q->add_option("--avg-gate-ns", model.avg_gate_ns, "average gate (ns)")->capture_default_str();
  q->add_option("--max-gate-ns", model.max_gate_ns, "slowest gate (ns)")->capture_default_str();
  q->add_flag("--json", q_json, "print JSON instead of text");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      KeyValueConfig cfg = load_or_empty(gen_opts.config);
      override(cfg, "order", gen_order);
      override(cfg, "per_symbol", gen_per_symbol);
      override(cfg, "sigma_phi", gen_sigma_phi);
      override(cfg, "sigma_n", gen_sigma_n);
      override(cfg, "phi_b", gen_phi_b);
      override(cfg, "spacing", gen_spacing);
      override(cfg, "seed", gen_opts.seed);
      DatasetRecipe r;
      r.order = static_cast<int>(cfg.get_int("order", 16));
      r.per_symbol = static_cast<int>(cfg.get_int("per_symbol", 80));
      r.spacing = cfg.get_double("spacing", 0.0);
      r.sigma_phi = cfg.get_double("sigma_phi", 0.1);
      r.sigma_n = cfg.get_double("sigma_n", 0.1);
      r.phi_b = cfg.get_double("phi_b", 0.0);
      const ChannelParams ch{r.sigma_phi, r.sigma_n, r.phi_b, cfg.get_u64("seed", 1)};
      cfg.reject_unused();
      const auto data = generate_dataset(recipe_constellation(r), r.per_symbol, ch);
      emit(gen_opts.out, [&](std::ostream& os) { write_dataset(os, data); });
    } else if (cl->parsed()) {
      KeyValueConfig cfg = load_or_empty(cl_opts.config);
      override(cfg, "order", cl_order);
      override(cfg, "metric", cl_metric);
      override(cfg, "embedding", cl_embedding);
      override(cfg, "shots", cl_shots);
      override(cfg, "max_iterations", cl_max_iter);
      override(cfg, "init", cl_init);
      override(cfg, "workers", cl_workers);
      override(cfg, "seed", cl_opts.seed);
      const int order = static_cast<int>(cfg.get_int("order", 16));
      const double spacing = cfg.get_double("spacing", 0.0);
      const std::uint64_t seed = cfg.get_u64("seed", 1);
      KMeansConfig kc = kmeans_config_from_config(cfg, order);
      cfg.reject_unused();
      if (auto* s = std::get_if<QuantumSampled<double>>(&kc.metric)) {
        s->policy.seed = derive_seed(seed, {2});
      }
      if (auto* pp = std::get_if<KMeansPlusPlusInit>(&kc.init)) pp->seed = derive_seed(seed, {3});
      const auto constellation =
          spacing > 0.0 ? ideal_constellation(order, spacing) : ideal_constellation(order);
      const auto data = ingest_dataset(cl_data, constellation);
      const auto outcome = run_kmeans(data, kc);
      emit(cl_opts.out, [&](std::ostream& os) {
        os << outcome_to_json(outcome, data, kc, seed).dump(2) << '\n';
      });
    } else if (sw->parsed()) {
      KeyValueConfig cfg = KeyValueConfig::load(sw_opts.config);
      override(cfg, "seed", sw_opts.seed);
      override(cfg, "workers", sw_workers);
      SweepSpec spec = sweep_spec_from_config(cfg);
      cfg.reject_unused();
      std::vector<SweepRow> rows;
      if (sw_replay_seed) {
        bool found = false;
        for (std::size_t a = 0; a < spec.axis_size() && !found; ++a) {
          for (int rep = 0; rep < spec.repetitions && !found; ++rep) {
            if (cell_seed(spec.seed, a, rep) != *sw_replay_seed) continue;
            rows = run_sweep_cell(spec, a, rep, *sw_replay_seed);
            found = sw_replay_value.empty() || rows.front().axis_value == sw_replay_value;
          }
        }
        if (!found) throw Error(ErrorCode::kInvalidArgument, "no sweep cell has the replay seed");
      } else {
        rows = run_sweep(spec);
      }
      emit(sw_opts.out, [&](std::ostream& os) { write_sweep_csv(os, rows); });
      if (!sw_summary.empty()) {
        emit(sw_summary, [&](std::ostream& os) { write_summary_csv(os, summarize(rows)); });
      }
    } else if (cmp->parsed()) {
      KeyValueConfig cfg = load_or_empty(cmp_opts.config);
      override(cfg, "order", cmp_order);
      override(cfg, "shots", cmp_shots);
      override(cfg, "max_iterations", cmp_max_iter);
      override(cfg, "repetitions", cmp_reps);
      override(cfg, "workers", cmp_workers);
      override(cfg, "seed", cmp_opts.seed);
      CompareOptions opt;
      opt.order = static_cast<int>(cfg.get_int("order", 64));
      opt.spacing = cfg.get_double("spacing", 0.0);
      opt.repetitions = static_cast<int>(cfg.get_int("repetitions", 5));
      opt.seed = cfg.get_u64("seed", 1);
      opt.workers = static_cast<int>(cfg.get_int("workers", 1));
      const int shots = static_cast<int>(cfg.get_int("shots", 50));
      const int max_iter = static_cast<int>(cfg.get_int("max_iterations", 5));
      std::vector<int> sizes = cmp_sizes;
      if (sizes.empty()) {
        for (double s : cfg.get_doubles("sizes")) sizes.push_back(static_cast<int>(s));
      }
      if (sizes.empty()) sizes = {320, 640, 1280};
      std::vector<std::string> preset_text = cmp_presets;
      if (preset_text.empty()) preset_text = cfg.get_strings("presets");
      cfg.reject_unused();
      std::vector<LaunchPreset> presets;
      for (const auto& p : preset_text) {
        LaunchPreset lp;
        char c1 = 0, c2 = 0;
        std::istringstream is(p);
        if (!(is >> lp.launch_dbm >> c1 >> lp.sigma_phi >> c2 >> lp.sigma_n) || c1 != ':' ||
            c2 != ':') {
          throw Error(ErrorCode::kParse, "preset must look like dbm:sigma_phi:sigma_n, got " + p);
        }
        presets.push_back(lp);
      }
      if (presets.empty()) presets = default_launch_presets();
      const auto rows = compare_presets(presets, sizes, shots, max_iter, opt);
      emit(cmp_opts.out, [&](std::ostream& os) {
        os << "# synthetic surrogate: sigma presets are tuning knobs, not measured values\n";
        write_compare_csv(os, rows);
      });
    } else if (q->parsed()) {
      if (!q_opts.config.empty()) {
        // Flags given on the command line win over file values.
        const KeyValueConfig cfg = KeyValueConfig::load(q_opts.config);
        auto pick = [&](const char* flag, const char* key, auto& target) {
          if (q->count(flag) == 0 && cfg.has(key)) {
            target = static_cast<std::decay_t<decltype(target)>>(cfg.get_double(key, 0.0));
          }
        };
        pick("--centroids", "centroids", q_centroids);
        pick("--points", "points", q_points);
        pick("--shots", "shots", q_shots);
        pick("--depth", "circuit_depth", model.circuit_depth);
        pick("--min-gate-ns", "min_gate_ns", model.min_gate_ns);
        pick("--avg-gate-ns", "avg_gate_ns", model.avg_gate_ns);
        pick("--max-gate-ns", "max_gate_ns", model.max_gate_ns);
        cfg.get_u64("seed", 0);
        cfg.reject_unused();
      }
      const auto e = estimate_qpu_time(q_centroids, q_points, q_shots, model);
      emit(q_opts.out, [&](std::ostream& os) {
        if (q_json) {
          os << qpu_estimate_to_json(e, model).dump(2) << '\n';
          return;
        }
        os << "total shots: " << std::setprecision(12) << e.total_shots << '\n'
           << "per shot (ns): " << e.per_shot_min_ns << " / " << e.per_shot_avg_ns << " / "
           << e.per_shot_max_ns << '\n'
           << std::fixed << std::setprecision(3) << "min_s " << e.min_s << '\n'
           << "avg_s " << e.avg_s << '\n'
           << "max_s " << e.max_s << '\n';
      });
    }
  } catch (const Error& e) {
    std::cerr << "qkmeans: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qkmeans: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

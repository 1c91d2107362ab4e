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

#include "qkmeans/bench.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <ostream>

#include "pool.hpp"
#include "qkmeans/error.hpp"
#include "qkmeans/random.hpp"
#include "text.hpp"

namespace qkmeans {

namespace {

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

DistanceMetricd metric_by_name(const std::string& name, const EmbeddingKind<double>& kind,
                               int shots) {
  if (name == "euclidean") return Euclidean{};
  if (name == "quantum_analytic") return QuantumAnalytic<double>{kind};
  if (name == "quantum_sampled") return QuantumSampled<double>{kind, ShotPolicy::sampled(shots, 0)};
  throw Error(ErrorCode::kParse, "unknown metric '" + name +
                                     "' (expected euclidean, quantum_analytic or quantum_sampled)");
}

/// Gives sampled metrics the cell's shot stream and, optionally, a shot count.
DistanceMetricd bind_metric(const DistanceMetricd& metric, std::uint64_t shot_seed,
                            int shots_override) {
  if (const auto* s = std::get_if<QuantumSampled<double>>(&metric)) {
    QuantumSampled<double> bound = *s;
    bound.policy = ShotPolicy::sampled(shots_override > 0 ? shots_override : s->policy.shots,
                                       shot_seed);
    return bound;
  }
  return metric;
}

KMeansConfig bind_config(KMeansConfig cfg, const DistanceMetricd& metric,
                         std::uint64_t cell, int shots_override) {
  cfg.metric = bind_metric(metric, derive_seed(cell, {2}), shots_override);
  if (auto* pp = std::get_if<KMeansPlusPlusInit>(&cfg.init)) pp->seed = derive_seed(cell, {3});
  cfg.workers = 1;
  return cfg;
}

}  // namespace

Constellation recipe_constellation(const DatasetRecipe& recipe) {
  return recipe.spacing > 0.0 ? ideal_constellation(recipe.order, recipe.spacing)
                              : ideal_constellation(recipe.order);
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kShots: return "shots";
    case SweepAxis::kPhaseOffset: return "phase_offset";
    case SweepAxis::kNoiseGrid: return "noise_grid";
  }
  return "unknown";
}

std::size_t SweepSpec::axis_size() const {
  return axis == SweepAxis::kNoiseGrid ? sigma_phi_values.size() * sigma_n_values.size()
                                       : values.size();
}

std::vector<DistanceMetricd> metrics_from_config(const KeyValueConfig& cfg, const std::string& key,
                                                 const std::string& fallback) {
  const std::string embedding = cfg.get_string("embedding", "rescaled");
  EmbeddingKind<double> kind;
  if (embedding == "standard") {
    kind = EmbeddingKind<double>::standard_angle();
  } else if (embedding == "rescaled") {
    kind = EmbeddingKind<double>::rescaled_angle(1.0);
  } else {
    throw Error(ErrorCode::kParse, "embedding must be 'rescaled' or 'standard'");
  }
  const auto shots = cfg.get_int("shots", 50);
  if (shots < 1) throw Error(ErrorCode::kInvalidCount, "shots must be >= 1");
  auto names = cfg.get_strings(key);
  if (names.empty()) names.push_back(fallback);
  std::vector<DistanceMetricd> out;
  for (const auto& n : names) out.push_back(metric_by_name(n, kind, static_cast<int>(shots)));
  return out;
}

KMeansConfig kmeans_config_from_config(const KeyValueConfig& cfg, int order) {
  KMeansConfig out;
  out.k = static_cast<int>(cfg.get_int("k", order));
  out.max_iterations = static_cast<int>(cfg.get_int("max_iterations", 5));
  out.convergence_epsilon = cfg.get_double("convergence_epsilon", 0.0);
  out.workers = static_cast<int>(cfg.get_int("workers", 1));
  const std::string init = cfg.get_string("init", "constellation");
  if (init == "constellation") {
    out.init = ConstellationInit{};
  } else if (init == "kmeanspp") {
    out.init = KMeansPlusPlusInit{cfg.get_u64("seed", 1)};
  } else {
    throw Error(ErrorCode::kParse, "init must be 'constellation' or 'kmeanspp'");
  }
  out.metric = metrics_from_config(cfg, "metric", "quantum_sampled").front();
  return out;
}

SweepSpec sweep_spec_from_config(const KeyValueConfig& cfg) {
  SweepSpec spec;
  const std::string axis = cfg.get_string("axis", "shots");
  if (axis == "shots") {
    spec.axis = SweepAxis::kShots;
    spec.values = cfg.get_doubles("values");
    for (double v : spec.values) {
      if (v < 1 || v != std::floor(v)) {
        throw Error(ErrorCode::kInvalidCount, "shot counts must be positive integers");
      }
    }
  } else if (axis == "phase_offset") {
    spec.axis = SweepAxis::kPhaseOffset;
    spec.values = cfg.get_doubles("values");
  } else if (axis == "noise_grid") {
    spec.axis = SweepAxis::kNoiseGrid;
    spec.sigma_phi_values = cfg.get_doubles("sigma_phi_values");
    spec.sigma_n_values = cfg.get_doubles("sigma_n_values");
  } else {
    throw Error(ErrorCode::kParse, "axis must be shots, phase_offset or noise_grid");
  }
  if (spec.axis_size() == 0) throw Error(ErrorCode::kInvalidArgument, "sweep axis is empty");

  spec.base.order = static_cast<int>(cfg.get_int("order", 16));
  spec.base.per_symbol = static_cast<int>(cfg.get_int("per_symbol", 80));
  spec.base.spacing = cfg.get_double("spacing", 0.0);
  spec.base.sigma_phi = cfg.get_double("sigma_phi", 0.1);
  spec.base.sigma_n = cfg.get_double("sigma_n", 0.1);
  spec.base.phi_b = cfg.get_double("phi_b", 0.0);
  spec.repetitions = static_cast<int>(cfg.get_int("repetitions", 5));
  if (spec.repetitions < 1) throw Error(ErrorCode::kInvalidCount, "repetitions must be >= 1");
  spec.seed = cfg.get_u64("seed", 1);
  spec.workers = static_cast<int>(cfg.get_int("workers", 1));
  spec.fixed_config = kmeans_config_from_config(cfg, spec.base.order);
  spec.metrics = metrics_from_config(cfg, "metrics", "quantum_sampled");
  return spec;
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t axis_index, int repetition) {
  return derive_seed(master, {static_cast<std::uint64_t>(axis_index),
                              static_cast<std::uint64_t>(repetition)});
}

std::vector<SweepRow> run_sweep_cell(const SweepSpec& spec, std::size_t axis_index,
                                     int repetition, std::uint64_t seed) {
  if (axis_index >= spec.axis_size()) {
    throw Error(ErrorCode::kInvalidArgument, "axis index out of range");
  }
  DatasetRecipe recipe = spec.base;
  int shots_override = 0;
  std::string axis_value;
  switch (spec.axis) {
    case SweepAxis::kShots:
      shots_override = static_cast<int>(spec.values[axis_index]);
      axis_value = std::to_string(shots_override);
      break;
    case SweepAxis::kPhaseOffset:
      recipe.phi_b = spec.values[axis_index];
      axis_value = detail::format_double(recipe.phi_b);
      break;
    case SweepAxis::kNoiseGrid: {
      const std::size_t cols = spec.sigma_n_values.size();
      recipe.sigma_phi = spec.sigma_phi_values[axis_index / cols];
      recipe.sigma_n = spec.sigma_n_values[axis_index % cols];
      axis_value = detail::format_double(recipe.sigma_phi) + "/" +
                   detail::format_double(recipe.sigma_n);
      break;
    }
  }

  const ChannelParams channel{recipe.sigma_phi, recipe.sigma_n, recipe.phi_b,
                              derive_seed(seed, {1})};
  const LabeledDataset data =
      generate_dataset(recipe_constellation(recipe), recipe.per_symbol, channel);

  std::vector<SweepRow> rows;
  for (const auto& metric : spec.metrics) {
    const KMeansConfig cfg = bind_config(spec.fixed_config, metric, seed, shots_override);
    const auto start = std::chrono::steady_clock::now();
    const ClusteringOutcome outcome = run_kmeans(data, cfg);
    const auto stop = std::chrono::steady_clock::now();
    SweepRow row;
    row.axis_index = axis_index;
    row.axis_value = axis_value;
    row.repetition = repetition;
    row.seed = seed;
    row.metric_variant = std::string(metric_name(metric));
    row.accuracy = outcome.accuracy;
    row.iterations = outcome.iterations_run;
    row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.axis_size() == 0) throw Error(ErrorCode::kInvalidArgument, "sweep axis is empty");
  if (spec.repetitions < 1) throw Error(ErrorCode::kInvalidCount, "repetitions must be >= 1");
  if (spec.metrics.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep needs a metric");
  const std::size_t reps = static_cast<std::size_t>(spec.repetitions);
  const std::size_t jobs = spec.axis_size() * reps;
  std::vector<std::vector<SweepRow>> slots(jobs);
  detail::run_jobs(jobs, spec.workers, [&](std::size_t job) {
    const std::size_t axis_index = job / reps;
    const int rep = static_cast<int>(job % reps);
    slots[job] = run_sweep_cell(spec, axis_index, rep, cell_seed(spec.seed, axis_index, rep));
  });
  std::vector<SweepRow> rows;
  for (auto& s : slots) {
    for (auto& r : s) rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SweepCellSummary> summarize(const std::vector<SweepRow>& rows) {
  // Keyed and sorted so the result does not depend on row order.
  using Key = std::pair<std::size_t, std::string>;
  std::map<Key, std::vector<std::pair<int, double>>> groups;
  std::map<Key, std::string> labels;
  for (const auto& r : rows) {
    const Key key{r.axis_index, r.metric_variant};
    groups[key].emplace_back(r.repetition, r.accuracy);
    labels[key] = r.axis_value;
  }
  std::vector<SweepCellSummary> out;
  for (auto& [key, reps] : groups) {
    std::sort(reps.begin(), reps.end());
    std::vector<double> acc;
    for (const auto& [rep, a] : reps) acc.push_back(a);
    out.push_back({labels[key], key.second, static_cast<int>(acc.size()), mean_of(acc),
                   sample_std(acc)});
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "axis_value,repetition,seed,metric_variant,accuracy,iterations,wall_ms\n";
  for (const auto& r : rows) {
    out << r.axis_value << ',' << r.repetition << ',' << r.seed << ',' << r.metric_variant << ','
        << detail::format_double(r.accuracy) << ',' << r.iterations << ','
        << detail::format_double(std::round(r.wall_ms * 1000.0) / 1000.0) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SweepCellSummary>& cells) {
  out << "axis_value,metric_variant,repetitions,mean_accuracy,std_accuracy\n";
  for (const auto& c : cells) {
    out << c.axis_value << ',' << c.metric_variant << ',' << c.repetitions << ','
        << detail::format_double(c.mean_accuracy) << ',' << detail::format_double(c.std_accuracy)
        << '\n';
  }
}

std::vector<LaunchPreset> default_launch_presets() {
  return {{2.7, 0.05, 0.04}, {6.6, 0.08, 0.06}, {8.6, 0.10, 0.08}, {10.7, 0.14, 0.11}};
}

std::vector<CompareRow> compare_table(const std::vector<int>& sizes, const ChannelParams& channel,
                                      int shots, int max_iterations,
                                      const CompareOptions& options) {
  if (sizes.empty()) throw Error(ErrorCode::kInvalidArgument, "compare needs at least one size");
  if (shots < 1) throw Error(ErrorCode::kInvalidCount, "shots must be >= 1");
  if (max_iterations < 1) throw Error(ErrorCode::kInvalidCount, "max_iterations must be >= 1");
  if (options.repetitions < 1) throw Error(ErrorCode::kInvalidCount, "repetitions must be >= 1");
  const Constellation constellation = options.spacing > 0.0
                                          ? ideal_constellation(options.order, options.spacing)
                                          : ideal_constellation(options.order);
  for (int size : sizes) {
    if (size < 1 || size % options.order != 0) {
      throw Error(ErrorCode::kInvalidCount,
                  "dataset size " + std::to_string(size) + " must be a positive multiple of " +
                      std::to_string(options.order));
    }
  }

  const std::size_t reps = static_cast<std::size_t>(options.repetitions);
  std::vector<double> quantum(sizes.size() * reps);
  std::vector<double> classical(sizes.size() * reps);
  detail::run_jobs(sizes.size() * reps, options.workers, [&](std::size_t job) {
    const std::size_t s = job / reps;
    const std::uint64_t rep_seed =
        derive_seed(derive_seed(options.seed, {static_cast<std::uint64_t>(s)}), {job % reps});
    ChannelParams ch = channel;
    ch.seed = derive_seed(rep_seed, {1});
    const LabeledDataset data = generate_dataset(constellation, sizes[s] / options.order, ch);

    KMeansConfig cfg;
    cfg.k = options.order;
    cfg.max_iterations = max_iterations;
    cfg.init = ConstellationInit{};
    cfg.metric = Euclidean{};
    classical[job] = run_kmeans(data, cfg).accuracy;
    cfg.metric = QuantumSampled<double>{EmbeddingKind<double>::rescaled_angle(1.0),
                                        ShotPolicy::sampled(shots, derive_seed(rep_seed, {2}))};
    quantum[job] = run_kmeans(data, cfg).accuracy;
  });

  std::vector<CompareRow> rows;
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    const std::vector<double> q(quantum.begin() + s * reps, quantum.begin() + (s + 1) * reps);
    const std::vector<double> c(classical.begin() + s * reps, classical.begin() + (s + 1) * reps);
    CompareRow row;
    row.sigma_phi = channel.sigma_phi;
    row.sigma_n = channel.sigma_n;
    row.points = sizes[s];
    row.quantum_accuracy = mean_of(q);
    row.classical_accuracy = mean_of(c);
    row.quantum_std = sample_std(q);
    row.classical_std = sample_std(c);
    row.quantum_max_iterations = max_iterations;
    row.classical_max_iterations = max_iterations;
    row.shots = shots;
    row.repetitions = options.repetitions;
    row.seed = derive_seed(options.seed, {static_cast<std::uint64_t>(s)});
    rows.push_back(row);
  }
  return rows;
}

std::vector<CompareRow> compare_presets(const std::vector<LaunchPreset>& presets,
                                        const std::vector<int>& sizes, int shots,
                                        int max_iterations, const CompareOptions& options) {
  std::vector<CompareRow> rows;
  for (std::size_t p = 0; p < presets.size(); ++p) {
    CompareOptions opt = options;
    opt.seed = derive_seed(options.seed, {0x70726573ULL, static_cast<std::uint64_t>(p)});
    const ChannelParams channel{presets[p].sigma_phi, presets[p].sigma_n, 0.0, 0};
    for (auto row : compare_table(sizes, channel, shots, max_iterations, opt)) {
      row.launch_dbm = presets[p].launch_dbm;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
  out << "launch_dbm,launch_w,sigma_phi,sigma_n,points,quantum_accuracy,classical_accuracy,"
         "quantum_std,classical_std,quantum_max_iterations,classical_max_iterations,shots,"
         "repetitions,seed\n";
  for (const auto& r : rows) {
    out << detail::format_double(r.launch_dbm) << ','
        << detail::format_double(dbm_to_watts(r.launch_dbm)) << ','
        << detail::format_double(r.sigma_phi) << ',' << detail::format_double(r.sigma_n) << ','
        << r.points << ',' << detail::format_double(r.quantum_accuracy) << ','
        << detail::format_double(r.classical_accuracy) << ','
        << detail::format_double(r.quantum_std) << ',' << detail::format_double(r.classical_std)
        << ',' << r.quantum_max_iterations << ',' << r.classical_max_iterations << ',' << r.shots
        << ',' << r.repetitions << ',' << r.seed << '\n';
  }
}

QpuTimeEstimate estimate_qpu_time(long long n_centroids, long long n_points, long long shots,
                                  const GateTimeModel& model) {
  if (n_centroids < 1 || n_points < 1 || shots < 1) {
    throw Error(ErrorCode::kInvalidArgument, "centroids, points and shots must be positive");
  }
  if (model.circuit_depth < 1 || !(model.min_gate_ns > 0.0) ||
      !(model.min_gate_ns <= model.avg_gate_ns) || !(model.avg_gate_ns <= model.max_gate_ns)) {
    throw Error(ErrorCode::kInvalidArgument,
                "gate model needs depth >= 1 and 0 < min <= avg <= max gate time");
  }
  QpuTimeEstimate e;
  e.total_shots = static_cast<double>(n_centroids) * static_cast<double>(n_points) *
                  static_cast<double>(shots);
  e.per_shot_min_ns = model.circuit_depth * model.min_gate_ns;
  e.per_shot_avg_ns = model.circuit_depth * model.avg_gate_ns;
  e.per_shot_max_ns = model.circuit_depth * model.max_gate_ns;
  e.min_s = e.total_shots * e.per_shot_min_ns / 1e9;
  e.avg_s = e.total_shots * e.per_shot_avg_ns / 1e9;
  e.max_s = e.total_shots * e.per_shot_max_ns / 1e9;
  return e;
}

}  // namespace qkmeans

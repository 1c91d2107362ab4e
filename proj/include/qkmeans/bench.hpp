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

// Experiment harness: accuracy sweeps, classical-vs-hybrid comparison tables
// and the QPU wall-time estimate.
//
// Every sweep cell (axis index a, repetition r) owns the seed
// derive_seed(master, {a, r}). The dataset, the shot streams and k-means++
// seeding are derived from that cell seed alone, so a cell can be re-run in
// isolation and the worker count never changes a result.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qkmeans/config.hpp"
#include "qkmeans/kmeans.hpp"
#include "qkmeans/signal.hpp"

namespace qkmeans {

/// Synthetic dataset recipe. spacing <= 0 selects the unit-corner-radius grid.
struct DatasetRecipe {
  int order = 16;
  int per_symbol = 80;
  double spacing = 0.0;
  double sigma_phi = 0.1;
  double sigma_n = 0.1;
  double phi_b = 0.0;
};

Constellation recipe_constellation(const DatasetRecipe& recipe);

enum class SweepAxis { kShots, kPhaseOffset, kNoiseGrid };

std::string_view to_string(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::kShots;
  /// Shot counts (kShots) or phi_b offsets in radians (kPhaseOffset).
  std::vector<double> values;
  /// kNoiseGrid cells are the product sigma_phi_values x sigma_n_values.
  std::vector<double> sigma_phi_values;
  std::vector<double> sigma_n_values;
  DatasetRecipe base;
  int repetitions = 5;
  /// k, max_iterations, init and epsilon apply to every metric below; the
  /// metric field itself is ignored.
  KMeansConfig fixed_config;
  std::vector<DistanceMetricd> metrics;
  std::uint64_t seed = 1;
  int workers = 1;

  std::size_t axis_size() const;
};

/// Reads a sweep spec from the key-value format (see README).
SweepSpec sweep_spec_from_config(const KeyValueConfig& cfg);

/// Shared k-means keys: metric(s), embedding, shots, max_iterations, init,
/// convergence_epsilon.
std::vector<DistanceMetricd> metrics_from_config(const KeyValueConfig& cfg, const std::string& key,
                                                 const std::string& fallback);
KMeansConfig kmeans_config_from_config(const KeyValueConfig& cfg, int order);

struct SweepRow {
  std::size_t axis_index = 0;
  std::string axis_value;
  int repetition = 0;
  std::uint64_t seed = 0;
  std::string metric_variant;
  double accuracy = 0.0;
  int iterations = 0;
  double wall_ms = 0.0;
};

struct SweepCellSummary {
  std::string axis_value;
  std::string metric_variant;
  int repetitions = 0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
};

std::uint64_t cell_seed(std::uint64_t master, std::size_t axis_index, int repetition);

/// Runs every metric on one cell. Depends only on (spec, axis_index, seed).
std::vector<SweepRow> run_sweep_cell(const SweepSpec& spec, std::size_t axis_index,
                                     int repetition, std::uint64_t seed);

/// All cells, executed by spec.workers threads; rows come back in
/// (axis, repetition, metric) order regardless of scheduling.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Mean and sample standard deviation per (axis value, metric).
std::vector<SweepCellSummary> summarize(const std::vector<SweepRow>& rows);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SweepCellSummary>& cells);

/// Synthetic stand-in noise level for a fibre launch power. These are tuning
/// knobs for the surrogate data, not measured channel parameters.
struct LaunchPreset {
  double launch_dbm = 0.0;
  double sigma_phi = 0.0;
  double sigma_n = 0.0;
};

std::vector<LaunchPreset> default_launch_presets();

struct CompareOptions {
  int order = 64;
  double spacing = 0.0;
  int repetitions = 5;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct CompareRow {
  double launch_dbm = 0.0;
  double sigma_phi = 0.0;
  double sigma_n = 0.0;
  int points = 0;
  double quantum_accuracy = 0.0;
  double classical_accuracy = 0.0;
  double quantum_std = 0.0;
  double classical_std = 0.0;
  int quantum_max_iterations = 0;
  int classical_max_iterations = 0;
  int shots = 0;
  int repetitions = 0;
  std::uint64_t seed = 0;
};

/// Classical (Euclidean) versus hybrid (sampled swap test, rescaled
/// embedding) on the same datasets, averaged over options.repetitions.
std::vector<CompareRow> compare_table(const std::vector<int>& sizes, const ChannelParams& channel,
                                      int shots, int max_iterations,
                                      const CompareOptions& options = {});

/// compare_table for every preset; rows carry the preset's launch power.
std::vector<CompareRow> compare_presets(const std::vector<LaunchPreset>& presets,
                                        const std::vector<int>& sizes, int shots,
                                        int max_iterations, const CompareOptions& options = {});

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);

struct GateTimeModel {
  double min_gate_ns = 305.0;
  double avg_gate_ns = 443.0;
  double max_gate_ns = 760.0;
  int circuit_depth = 22;
};

struct QpuTimeEstimate {
  double total_shots = 0.0;
  double per_shot_min_ns = 0.0;
  double per_shot_avg_ns = 0.0;
  double per_shot_max_ns = 0.0;
  double min_s = 0.0;
  double avg_s = 0.0;
  double max_s = 0.0;
};

/// total_shots = centroids * points * shots; each shot costs depth gate
/// times.
QpuTimeEstimate estimate_qpu_time(long long n_centroids, long long n_points, long long shots,
                                  const GateTimeModel& model);

}  // namespace qkmeans

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

#include "qkmeans/report.hpp"

namespace qkmeans {

namespace {

using nlohmann::json;

json points_json(const PointSetd& pts) {
  json out = json::array();
  for (Eigen::Index j = 0; j < pts.cols(); ++j) out.push_back({pts(0, j), pts(1, j)});
  return out;
}

json embedding_json(const EmbeddingKind<double>& kind) {
  // r_max is recomputed per iteration during clustering, so only the variant
  // is part of the configuration.
  return kind.is_standard() ? "standard" : "rescaled";
}

}  // namespace

json config_to_json(const KMeansConfig& config) {
  json j;
  j["k"] = config.k;
  j["max_iterations"] = config.max_iterations;
  j["convergence_epsilon"] = config.convergence_epsilon;
  j["workers"] = config.workers;
  j["metric"] = std::string(metric_name(config.metric));
  if (const auto* a = std::get_if<QuantumAnalytic<double>>(&config.metric)) {
    j["embedding"] = embedding_json(a->kind);
  } else if (const auto* s = std::get_if<QuantumSampled<double>>(&config.metric)) {
    j["embedding"] = embedding_json(s->kind);
    j["shots"] = s->policy.shots;
    j["shot_seed"] = s->policy.seed;
  }
  std::visit(
      [&](const auto& init) {
        using I = std::decay_t<decltype(init)>;
        if constexpr (std::is_same_v<I, ConstellationInit>) {
          j["init"] = "constellation";
        } else if constexpr (std::is_same_v<I, KMeansPlusPlusInit>) {
          j["init"] = "kmeanspp";
          j["init_seed"] = init.seed;
        } else {
          j["init"] = "explicit";
        }
      },
      config.init);
  return j;
}

json outcome_to_json(const ClusteringOutcome& outcome, const LabeledDataset& data,
                     const KMeansConfig& config, std::uint64_t master_seed) {
  json j;
  j["assignments"] = outcome.assignments;
  j["centroids"] = points_json(outcome.centroids);
  j["initial_centroids"] = points_json(outcome.initial_centroids);
  j["accuracy"] = outcome.accuracy;
  j["scoring"] = std::string(to_string(outcome.scoring));
  j["cluster_to_label"] = outcome.cluster_to_label;
  json confusion = json::array();
  for (Eigen::Index r = 0; r < outcome.confusion.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < outcome.confusion.cols(); ++c) row.push_back(outcome.confusion(r, c));
    confusion.push_back(row);
  }
  j["confusion"] = confusion;
  j["iterations"] = outcome.iterations_run;
  json history = json::array();
  for (const auto& h : outcome.history) history.push_back(points_json(h));
  j["history"] = history;
  j["config"] = config_to_json(config);

  json seeds;
  seeds["master"] = master_seed;
  if (const auto* s = std::get_if<QuantumSampled<double>>(&config.metric)) {
    seeds["shots"] = s->policy.seed;
  }
  if (const auto* pp = std::get_if<KMeansPlusPlusInit>(&config.init)) seeds["init"] = pp->seed;
  json dataset;
  dataset["points"] = data.size();
  dataset["order"] = data.constellation.order;
  std::visit(
      [&](const auto& src) {
        using P = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<P, SyntheticSource>) {
          dataset["source"] = "synthetic";
          dataset["sigma_phi"] = src.channel.sigma_phi;
          dataset["sigma_n"] = src.channel.sigma_n;
          dataset["phi_b"] = src.channel.phi_b;
          seeds["channel"] = src.channel.seed;
        } else {
          dataset["source"] = "ingested";
          dataset["path"] = src.path;
          dataset["normalized"] = src.normalized;
        }
      },
      data.provenance);
  j["dataset"] = dataset;
  j["seeds"] = seeds;
  return j;
}

json qpu_estimate_to_json(const QpuTimeEstimate& e, const GateTimeModel& model) {
  return {{"total_shots", e.total_shots},
          {"circuit_depth", model.circuit_depth},
          {"gate_ns", {{"min", model.min_gate_ns}, {"avg", model.avg_gate_ns}, {"max", model.max_gate_ns}}},
          {"per_shot_ns", {{"min", e.per_shot_min_ns}, {"avg", e.per_shot_avg_ns}, {"max", e.per_shot_max_ns}}},
          {"seconds", {{"min", e.min_s}, {"avg", e.avg_s}, {"max", e.max_s}}}};
}

}  // namespace qkmeans

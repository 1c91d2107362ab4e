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

#pragma once

#include <cstdint>

#include <nlohmann/json.hpp>

#include "qkmeans/bench.hpp"
#include "qkmeans/kmeans.hpp"

namespace qkmeans {

nlohmann::json config_to_json(const KMeansConfig& config);

/// Outcome document written by `qkmeans cluster`: assignments, centroids,
/// accuracy, confusion matrix, iteration count, history, a config echo and
/// every seed that influenced the run.
nlohmann::json outcome_to_json(const ClusteringOutcome& outcome, const LabeledDataset& data,
                               const KMeansConfig& config, std::uint64_t master_seed);

nlohmann::json qpu_estimate_to_json(const QpuTimeEstimate& estimate, const GateTimeModel& model);

}  // namespace qkmeans

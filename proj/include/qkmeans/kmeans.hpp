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

// Lloyd iteration over a pluggable dissimilarity.
//
// Each iteration assigns every point to the centroid with the smallest
// dissimilarity (lowest index on ties) and then moves every centroid to the
// arithmetic mean of its members in the IQ plane. A centroid with no members
// stays where it is. For the quantum metrics the rescaled embedding radius is
// recomputed each iteration over the data and the current centroids, and
// every (iteration, point, centroid) shot stream is seeded independently, so
// the result does not depend on the worker count.

#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "qkmeans/distance.hpp"
#include "qkmeans/signal.hpp"

namespace qkmeans {

/// Centroids start at the ideal alphabet; cluster j means symbol j.
struct ConstellationInit {};

/// D^2-weighted seeding; clusters are matched to symbols after the run.
struct KMeansPlusPlusInit {
  std::uint64_t seed = 0;
};

/// Caller-supplied centroids; cluster j means symbol j.
struct ExplicitInit {
  PointSetd centroids;
};

using KMeansInit = std::variant<ConstellationInit, KMeansPlusPlusInit, ExplicitInit>;

struct KMeansConfig {
  int k = 16;
  int max_iterations = 5;
  DistanceMetricd metric = Euclidean{};
  KMeansInit init = ConstellationInit{};
  /// Stop once no centroid moves (Euclidean) by more than this.
  double convergence_epsilon = 0.0;
  int workers = 1;
};

enum class ScoringMode { kLabelSemantic, kHungarian };

std::string_view to_string(ScoringMode mode);

struct Score {
  double accuracy = 0.0;
  /// Rows are true labels, columns are the labels the clusters were mapped to.
  Eigen::MatrixXi confusion;
  std::vector<int> cluster_to_label;
  ScoringMode mode = ScoringMode::kLabelSemantic;
};

/// Accuracy and confusion matrix of a cluster assignment. The matrix is
/// max(k, label_count) square; under kHungarian clusters are first matched
/// to labels by maximum-weight assignment.
Score score(std::span<const int> assignments, std::span<const int> truth, int k,
            int label_count, ScoringMode mode);

struct ClusteringOutcome {
  std::vector<int> assignments;
  PointSetd centroids;
  PointSetd initial_centroids;
  int iterations_run = 0;
  double accuracy = 0.0;
  Eigen::MatrixXi confusion;
  std::vector<int> cluster_to_label;
  ScoringMode scoring = ScoringMode::kLabelSemantic;
  /// Centroids after each completed iteration.
  std::vector<PointSetd> history;
};

PointSetd initial_centroids(const LabeledDataset& data, const KMeansConfig& config);

/// One assignment pass. iteration only feeds the shot-stream seeds.
std::vector<int> assign_points(const PointSetd& points, const PointSetd& centroids,
                               const DistanceMetricd& metric, int iteration, int workers = 1);

ClusteringOutcome run_kmeans(const LabeledDataset& data, const KMeansConfig& config);

/// Sum of squared Euclidean distances from each point to its centroid.
double within_cluster_sse(const PointSetd& points, const PointSetd& centroids,
                          std::span<const int> assignments);

}  // namespace qkmeans

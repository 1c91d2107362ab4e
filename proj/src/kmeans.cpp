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

#include "qkmeans/kmeans.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "qkmeans/error.hpp"
#include "qkmeans/matching.hpp"
#include "qkmeans/random.hpp"

namespace qkmeans {

std::string_view to_string(ScoringMode mode) {
  return mode == ScoringMode::kHungarian ? "hungarian" : "label_semantic";
}

Score score(std::span<const int> assignments, std::span<const int> truth, int k,
            int label_count, ScoringMode mode) {
  if (assignments.size() != truth.size()) {
    throw Error(ErrorCode::kInvalidArgument, "assignments and labels differ in length");
  }
  if (k < 1 || label_count < 1) {
    throw Error(ErrorCode::kInvalidCount, "k and label_count must be >= 1");
  }
  const int n = std::max(k, label_count);
  Eigen::MatrixXi raw = Eigen::MatrixXi::Zero(n, n);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = truth[i];
    const int a = assignments[i];
    if (t < 0 || t >= label_count || a < 0 || a >= k) {
      throw Error(ErrorCode::kValidation, "label or cluster index out of range");
    }
    ++raw(t, a);
  }

  Score s;
  s.mode = mode;
  s.cluster_to_label.resize(n);
  if (mode == ScoringMode::kHungarian) {
    s.cluster_to_label = max_weight_matching(raw.transpose().cast<double>());
  } else {
    for (int j = 0; j < n; ++j) s.cluster_to_label[j] = j;
  }
  s.confusion = Eigen::MatrixXi::Zero(n, n);
  for (int j = 0; j < n; ++j) s.confusion.col(s.cluster_to_label[j]) = raw.col(j);
  s.cluster_to_label.resize(k);
  s.accuracy = truth.empty() ? 0.0
                             : static_cast<double>(s.confusion.trace()) /
                                   static_cast<double>(truth.size());
  return s;
}

namespace {

PointSetd kmeanspp(const PointSetd& points, int k, std::uint64_t seed) {
  const Eigen::Index n = points.cols();
  if (k > n) throw Error(ErrorCode::kInvalidCount, "k-means++ needs at least k points");
  StreamRng rng(derive_seed(seed, {0x6b6d2b2bULL}));
  PointSetd centroids(2, k);
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  centroids.col(0) = points.col(first(rng));
  Eigen::VectorXd d2 = (points.colwise() - centroids.col(0)).colwise().squaredNorm().transpose();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int j = 1; j < k; ++j) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double target = unit(rng) * total;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        target -= d2(i);
        if (target < 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = first(rng);
    }
    centroids.col(j) = points.col(pick);
    d2 = d2.cwiseMin((points.colwise() - centroids.col(j)).colwise().squaredNorm().transpose());
  }
  return centroids;
}

/// Quantum metric with its rescaled radius pinned to the current data extent.
DistanceMetricd pin_radius(const DistanceMetricd& metric, double r_max) {
  return std::visit(
      [&](auto m) -> DistanceMetricd {
        using M = decltype(m);
        if constexpr (!std::is_same_v<M, Euclidean>) {
          if (!m.kind.is_standard()) m.kind.r_max = r_max;
        }
        return m;
      },
      metric);
}

template <typename Fn>
void parallel_for(Eigen::Index n, int workers, Fn&& body) {
  workers = std::clamp<int>(workers, 1, static_cast<int>(std::max<Eigen::Index>(n, 1)));
  if (workers == 1) {
    body(Eigen::Index{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const Eigen::Index chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const Eigen::Index begin = w * chunk;
    const Eigen::Index end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

}  // namespace

PointSetd initial_centroids(const LabeledDataset& data, const KMeansConfig& config) {
  return std::visit(
      [&](const auto& init) -> PointSetd {
        using I = std::decay_t<decltype(init)>;
        if constexpr (std::is_same_v<I, ConstellationInit>) {
          if (config.k != data.constellation.order) {
            throw Error(ErrorCode::kInvalidArgument,
                        "constellation init needs k equal to the constellation order");
          }
          return data.constellation.points;
        } else if constexpr (std::is_same_v<I, KMeansPlusPlusInit>) {
          return kmeanspp(data.points, config.k, init.seed);
        } else {
          if (init.centroids.cols() != config.k) {
            throw Error(ErrorCode::kInvalidArgument, "explicit init must supply k centroids");
          }
          return init.centroids;
        }
      },
      config.init);
}

std::vector<int> assign_points(const PointSetd& points, const PointSetd& centroids,
                               const DistanceMetricd& metric, int iteration, int workers) {
  const Eigen::Index n = points.cols();
  const Eigen::Index k = centroids.cols();
  std::vector<int> assignment(n, 0);

  if (std::holds_alternative<Euclidean>(metric)) {
    parallel_for(n, workers, [&](Eigen::Index begin, Eigen::Index end) {
      for (Eigen::Index i = begin; i < end; ++i) {
        double best = 0.0;
        for (Eigen::Index j = 0; j < k; ++j) {
          const double d = dissimilarity<double>(points.col(i), centroids.col(j), metric);
          if (j == 0 || d < best) {
            best = d;
            assignment[i] = static_cast<int>(j);
          }
        }
      }
    });
    return assignment;
  }

  // Quantum metrics: embed every point and centroid once, then run one swap
  // test per pair. Equivalent to calling dissimilarity() pair by pair.
  const DistanceMetricd pinned =
      pin_radius(metric, std::max(dataset_rmax(points), dataset_rmax(centroids)));
  const auto* sampled = std::get_if<QuantumSampled<double>>(&pinned);
  const EmbeddingKind<double> kind =
      sampled ? sampled->kind : std::get<QuantumAnalytic<double>>(pinned).kind;
  std::vector<Unitary2<double>> centroid_prep(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto e = embed<double>(centroids.col(j), kind);
    centroid_prep[j] = preparation_unitary(e.theta, e.gamma);
  }

  parallel_for(n, workers, [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index i = begin; i < end; ++i) {
      const auto e = embed<double>(points.col(i), kind);
      const Unitary2<double> point_prep = preparation_unitary(e.theta, e.gamma);
      double best = 0.0;
      for (Eigen::Index j = 0; j < k; ++j) {
        double d = run_swap_test_circuit(point_prep, centroid_prep[j]).probability_one(0);
        if (sampled) {
          ShotPolicy pair = sampled->policy;
          pair.seed = derive_seed(sampled->policy.seed,
                                  {static_cast<std::uint64_t>(iteration),
                                   static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)});
          d = sample_ancilla(d, pair).p1_estimate;
        }
        if (j == 0 || d < best) {
          best = d;
          assignment[i] = static_cast<int>(j);
        }
      }
    }
  });
  return assignment;
}

double within_cluster_sse(const PointSetd& points, const PointSetd& centroids,
                          std::span<const int> assignments) {
  double sse = 0.0;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    sse += (points.col(i) - centroids.col(assignments[i])).squaredNorm();
  }
  return sse;
}

ClusteringOutcome run_kmeans(const LabeledDataset& data, const KMeansConfig& config) {
  if (data.size() == 0) throw Error(ErrorCode::kEmptyDataset, "cannot cluster an empty dataset");
  if (config.k < 1) throw Error(ErrorCode::kInvalidCount, "k must be >= 1");
  if (config.max_iterations < 1) {
    throw Error(ErrorCode::kInvalidCount, "max_iterations must be >= 1");
  }
  if (!(config.convergence_epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "convergence_epsilon must be >= 0");
  }
  if (static_cast<Eigen::Index>(data.labels.size()) != data.size()) {
    throw Error(ErrorCode::kValidation, "dataset labels and points differ in length");
  }

  ClusteringOutcome out;
  out.initial_centroids = initial_centroids(data, config);
  PointSetd centroids = out.initial_centroids;
  const int k = config.k;

  for (int it = 0; it < config.max_iterations; ++it) {
    out.assignments = assign_points(data.points, centroids, config.metric, it, config.workers);

    PointSetd sums = PointSetd::Zero(2, k);
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(k);
    for (Eigen::Index i = 0; i < data.size(); ++i) {
      sums.col(out.assignments[i]) += data.points.col(i);
      ++counts(out.assignments[i]);
    }
    PointSetd next = centroids;
    for (int j = 0; j < k; ++j) {
      if (counts(j) > 0) next.col(j) = sums.col(j) / static_cast<double>(counts(j));
    }
    const double movement = (next - centroids).colwise().norm().maxCoeff();
    centroids = std::move(next);
    out.history.push_back(centroids);
    out.iterations_run = it + 1;
    if (movement <= config.convergence_epsilon) break;
  }

  out.centroids = centroids;
  out.scoring = std::holds_alternative<KMeansPlusPlusInit>(config.init)
                    ? ScoringMode::kHungarian
                    : ScoringMode::kLabelSemantic;
  Score s = score(out.assignments, data.labels, k, data.constellation.order, out.scoring);
  out.accuracy = s.accuracy;
  out.confusion = std::move(s.confusion);
  out.cluster_to_label = std::move(s.cluster_to_label);
  return out;
}

}  // namespace qkmeans

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
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "qkmeans/error.hpp"
#include "qkmeans/matching.hpp"
#include "qkmeans/random.hpp"

namespace qkmeans {
namespace {

using Kind = EmbeddingKind<double>;

LabeledDataset dataset_from(const PointSetd& points, std::vector<int> labels, int order) {
  LabeledDataset d;
  d.points = points;
  d.labels = std::move(labels);
  d.constellation = ideal_constellation(order);
  return d;
}

// Textbook Lloyd iteration on plain vectors.
struct Reference {
  std::vector<std::vector<int>> assignments;
  std::vector<std::vector<std::array<double, 2>>> centroids;
};

Reference reference_lloyd(const std::vector<std::array<double, 2>>& pts,
                          std::vector<std::array<double, 2>> c, int max_iter) {
  Reference ref;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<int> a(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double best = 0;
      for (std::size_t j = 0; j < c.size(); ++j) {
        const double dx = pts[i][0] - c[j][0], dy = pts[i][1] - c[j][1];
        const double d = dx * dx + dy * dy;
        if (j == 0 || d < best) {
          best = d;
          a[i] = static_cast<int>(j);
        }
      }
    }
    std::vector<std::array<double, 2>> sum(c.size(), {0.0, 0.0});
    std::vector<int> count(c.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      sum[a[i]][0] += pts[i][0];
      sum[a[i]][1] += pts[i][1];
      ++count[a[i]];
    }
    bool moved = false;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (count[j] == 0) continue;
      const std::array<double, 2> next{sum[j][0] / count[j], sum[j][1] / count[j]};
      moved |= next != c[j];
      c[j] = next;
    }
    ref.assignments.push_back(a);
    ref.centroids.push_back(c);
    if (!moved) break;
  }
  return ref;
}

TEST(Score, PerfectAssignment) {
  const std::vector<int> truth{0, 1, 2, 3, 0, 1, 2, 3};
  const Score s = score(truth, truth, 4, 4, ScoringMode::kLabelSemantic);
  EXPECT_EQ(s.accuracy, 1.0);
  EXPECT_TRUE(s.confusion.isApprox(Eigen::MatrixXi(Eigen::MatrixXi::Identity(4, 4) * 2)));
}

TEST(Score, SwappedBlocksUnderLabelSemantics) {
  std::vector<int> truth, assigned;
  for (int label = 0; label < 16; ++label) {
    for (int c = 0; c < 10; ++c) {
      truth.push_back(label);
      assigned.push_back(label == 3 ? 5 : label == 5 ? 3 : label);
    }
  }
  const Score s = score(assigned, truth, 16, 16, ScoringMode::kLabelSemantic);
  EXPECT_DOUBLE_EQ(s.accuracy, 140.0 / 160.0);
  EXPECT_EQ(s.confusion(3, 5), 10);
  EXPECT_EQ(s.confusion(5, 3), 10);
  EXPECT_EQ(s.confusion(3, 3), 0);
  const Score h = score(assigned, truth, 16, 16, ScoringMode::kHungarian);
  EXPECT_EQ(h.accuracy, 1.0);
  EXPECT_EQ(h.cluster_to_label[5], 3);
  EXPECT_EQ(h.cluster_to_label[3], 5);
}

TEST(Score, RowSumsAreLabelCounts) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> u(0, 15);
  std::vector<int> truth(1600), assigned(1600);
  for (int i = 0; i < 1600; ++i) {
    truth[i] = i % 16;
    assigned[i] = u(rng);
  }
  for (auto mode : {ScoringMode::kLabelSemantic, ScoringMode::kHungarian}) {
    const Score s = score(assigned, truth, 16, 16, mode);
    for (int r = 0; r < 16; ++r) EXPECT_EQ(s.confusion.row(r).sum(), 100);
    EXPECT_DOUBLE_EQ(s.accuracy, s.confusion.trace() / 1600.0);
  }
  const Score chance = score(assigned, truth, 16, 16, ScoringMode::kLabelSemantic);
  EXPECT_NEAR(chance.accuracy, 1.0 / 16, 0.02);
}

TEST(Score, Errors) {
  const std::vector<int> a{0, 1}, b{0};
  EXPECT_THROW(score(a, b, 2, 2, ScoringMode::kLabelSemantic), Error);
  const std::vector<int> out_of_range{0, 7};
  EXPECT_THROW(score(out_of_range, a, 2, 2, ScoringMode::kLabelSemantic), Error);
}

TEST(Matching, AgreesWithBruteForce) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> u(0, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    Eigen::MatrixXd w(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) w(r, c) = u(rng);
    const auto match = max_weight_matching(w);
    std::vector<int> seen(match);
    std::sort(seen.begin(), seen.end());
    for (int i = 0; i < n; ++i) ASSERT_EQ(seen[i], i);
    double got = 0;
    for (int r = 0; r < n; ++r) got += w(r, match[r]);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1;
    do {
      double v = 0;
      for (int r = 0; r < n; ++r) v += w(r, perm[r]);
      best = std::max(best, v);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(got, best) << "trial " << trial;
  }
}

TEST(RunKMeans, TwoBlobs) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 0.05);
  PointSetd pts(2, 100);
  std::vector<int> labels(100);
  for (int i = 0; i < 100; ++i) {
    labels[i] = i < 50 ? 0 : 1;
    pts.col(i) << (labels[i] ? 0.5 : -0.5) + n(rng), n(rng);
  }
  PointSetd init(2, 2);
  init << -0.3, 0.3, 0.1, -0.1;
  KMeansConfig cfg;
  cfg.k = 2;
  cfg.max_iterations = 10;
  cfg.init = ExplicitInit{init};
  const auto out = run_kmeans(dataset_from(pts, labels, 4), cfg);
  EXPECT_EQ(out.accuracy, 1.0);
  EXPECT_LE(out.iterations_run, 3);
}

TEST(RunKMeans, NoiselessFixedPoint) {
  const auto c = ideal_constellation(16);
  const auto data = generate_dataset(c, 3, {0.0, 0.0, 0.0, 0});
  // Sampled estimates are excluded: neighbours can also estimate zero.
  const std::vector<DistanceMetricd> metrics{Euclidean{},
                                             QuantumAnalytic<double>{Kind::rescaled_angle(1.0)}};
  for (const auto& m : metrics) {
    KMeansConfig cfg;
    cfg.metric = m;
    const auto out = run_kmeans(data, cfg);
    EXPECT_EQ(out.accuracy, 1.0) << metric_name(m);
    EXPECT_EQ(out.iterations_run, 1) << metric_name(m);
  }
}

TEST(RunKMeans, MatchesReferenceLloyd) {
  std::mt19937_64 rng(99);
  for (int instance = 0; instance < 20; ++instance) {
    const int n = 10 + instance * 4;
    const int k = 1 + instance % 4;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PointSetd pts(2, n);
    std::vector<std::array<double, 2>> plain(n);
    for (int i = 0; i < n; ++i) {
      plain[i] = {u(rng), u(rng)};
      pts.col(i) << plain[i][0], plain[i][1];
    }
    PointSetd init(2, k);
    std::vector<std::array<double, 2>> plain_init(k);
    for (int j = 0; j < k; ++j) {
      plain_init[j] = {u(rng), u(rng)};
      init.col(j) << plain_init[j][0], plain_init[j][1];
    }
    KMeansConfig cfg;
    cfg.k = k;
    cfg.max_iterations = 8;
    cfg.init = ExplicitInit{init};
    const auto out = run_kmeans(dataset_from(pts, std::vector<int>(n, 0), 4), cfg);
    const auto ref = reference_lloyd(plain, plain_init, cfg.max_iterations);
    ASSERT_EQ(out.iterations_run, static_cast<int>(ref.assignments.size())) << instance;
    EXPECT_EQ(out.assignments, ref.assignments.back()) << instance;
    for (std::size_t it = 0; it < out.history.size(); ++it) {
      for (int j = 0; j < k; ++j) {
        EXPECT_EQ(out.history[it](0, j), ref.centroids[it][j][0]);
        EXPECT_EQ(out.history[it](1, j), ref.centroids[it][j][1]);
      }
    }
  }
}

TEST(RunKMeans, EuclideanSseNonIncreasing) {
  const auto data = generate_dataset(ideal_constellation(16), 40, {0.2, 0.2, 0.0, 12});
  KMeansConfig cfg;
  cfg.max_iterations = 1;
  PointSetd c = ideal_constellation(16).points;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 10; ++it) {
    cfg.init = ExplicitInit{c};
    const auto out = run_kmeans(data, cfg);
    // SSE of (assignment, centroids after update).
    const double sse = within_cluster_sse(data.points, out.centroids, out.assignments);
    EXPECT_LE(sse, prev + 1e-12);
    prev = sse;
    c = out.centroids;
  }
}

TEST(RunKMeans, WorkerCountDoesNotChangeResults) {
  const auto data = generate_dataset(ideal_constellation(16), 20, {0.1, 0.1, 0.0, 2});
  KMeansConfig cfg;
  cfg.metric = QuantumSampled<double>{Kind::rescaled_angle(1.0), ShotPolicy::sampled(32, 5)};
  const auto one = run_kmeans(data, cfg);
  for (int w : {2, 3, 8}) {
    cfg.workers = w;
    const auto many = run_kmeans(data, cfg);
    EXPECT_EQ(many.assignments, one.assignments);
    EXPECT_TRUE((many.centroids.array() == one.centroids.array()).all());
  }
}

TEST(RunKMeans, PermutingDataPermutesAssignments) {
  const auto data = generate_dataset(ideal_constellation(16), 10, {0.1, 0.1, 0.0, 7});
  KMeansConfig cfg;
  cfg.metric = QuantumAnalytic<double>{Kind::rescaled_angle(1.0)};
  cfg.max_iterations = 1;
  const auto base = run_kmeans(data, cfg);
  std::vector<int> perm(data.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(1));
  LabeledDataset shuffled = data;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    shuffled.points.col(i) = data.points.col(perm[i]);
    shuffled.labels[i] = data.labels[perm[i]];
  }
  const auto out = run_kmeans(shuffled, cfg);
  for (std::size_t i = 0; i < perm.size(); ++i) EXPECT_EQ(out.assignments[i], base.assignments[perm[i]]);
}

TEST(RunKMeans, IterationsBoundedAndHistoryRecorded) {
  const auto data = generate_dataset(ideal_constellation(16), 10, {0.3, 0.3, 0.0, 3});
  for (int cap : {1, 2, 5}) {
    KMeansConfig cfg;
    cfg.max_iterations = cap;
    const auto out = run_kmeans(data, cfg);
    EXPECT_LE(out.iterations_run, cap);
    EXPECT_EQ(out.history.size(), static_cast<std::size_t>(out.iterations_run));
    EXPECT_EQ(out.assignments.size(), static_cast<std::size_t>(data.size()));
  }
}

TEST(RunKMeans, EmptyClusterKeepsCentroid) {
  PointSetd pts(2, 4);
  pts << -1, -1.1, 1, 1.1, 0, 0, 0, 0;
  PointSetd init(2, 3);
  init << -1, 1, 50, 0, 0, 50;
  KMeansConfig cfg;
  cfg.k = 3;
  cfg.init = ExplicitInit{init};
  const auto out = run_kmeans(dataset_from(pts, {0, 0, 1, 1}, 4), cfg);
  EXPECT_EQ(out.centroids(0, 2), 50.0);
  EXPECT_EQ(out.centroids(1, 2), 50.0);
}

TEST(RunKMeans, KMeansPlusPlusUsesHungarianScoring) {
  const auto data = generate_dataset(ideal_constellation(4), 50, {0.02, 0.02, 0.0, 9});
  KMeansConfig cfg;
  cfg.k = 4;
  cfg.max_iterations = 10;
  cfg.init = KMeansPlusPlusInit{21};
  const auto out = run_kmeans(data, cfg);
  EXPECT_EQ(out.scoring, ScoringMode::kHungarian);
  EXPECT_EQ(out.accuracy, 1.0);
  const auto again = run_kmeans(data, cfg);
  EXPECT_EQ(again.assignments, out.assignments);
}

TEST(RunKMeans, Errors) {
  const auto data = generate_dataset(ideal_constellation(16), 2, {});
  KMeansConfig cfg;
  cfg.k = 0;
  EXPECT_THROW(run_kmeans(data, cfg), Error);
  cfg.k = 4;
  EXPECT_THROW(run_kmeans(data, cfg), Error);  // constellation init needs k == 16
  cfg.k = 16;
  cfg.max_iterations = 0;
  EXPECT_THROW(run_kmeans(data, cfg), Error);
  LabeledDataset empty = data;
  empty.points.resize(2, 0);
  empty.labels.clear();
  try {
    run_kmeans(empty, KMeansConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyDataset);
  }
}

TEST(RunKMeans, AnalyticAtLeastEightShotSampled) {
  double analytic = 0, sampled = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto data = generate_dataset(ideal_constellation(16), 80, {0.2, 0.2, 0.0, derive_seed(seed, {1})});
    KMeansConfig cfg;
    cfg.metric = QuantumAnalytic<double>{Kind::rescaled_angle(1.0)};
    analytic += run_kmeans(data, cfg).accuracy;
    cfg.metric = QuantumSampled<double>{Kind::rescaled_angle(1.0), ShotPolicy::sampled(8, derive_seed(seed, {2}))};
    sampled += run_kmeans(data, cfg).accuracy;
  }
  EXPECT_GE(analytic, sampled);
}

}  // namespace
}  // namespace qkmeans

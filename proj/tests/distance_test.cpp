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

#include "qkmeans/distance.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qkmeans/error.hpp"
#include "qkmeans/random.hpp"

namespace qkmeans {
namespace {

using Kind = EmbeddingKind<double>;
constexpr double kPi = std::numbers::pi;

const DistanceMetricd kAnalytic = QuantumAnalytic<double>{Kind::rescaled_angle(1.0)};
const DistanceMetricd kStandard = QuantumAnalytic<double>{Kind::standard_angle()};

IQPointd pt(double x, double y) { return IQPointd(x, y); }

// Origin-referenced loss evaluated by hand.
double origin_oracle(double x, double y) {
  return 0.25 * (1.0 - std::cos(kPi * x / 2) * std::cos(kPi * y / 2));
}

TEST(Dissimilarity, Euclidean) {
  EXPECT_EQ(dissimilarity(pt(0, 0), pt(3, 4), DistanceMetricd{Euclidean{}}), 5.0);
}

TEST(Dissimilarity, AnalyticIdentity) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int t = 0; t < 200; ++t) {
    const IQPointd a = pt(u(rng), u(rng));
    EXPECT_EQ(dissimilarity(a, a, kAnalytic), 0.0);
  }
}

TEST(Dissimilarity, OriginReduction) {
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const double x = -1.0 + 0.02 * i, y = -1.0 + 0.02 * j;
      const double d = dissimilarity(pt(x, y), pt(0, 0), kAnalytic);
      EXPECT_NEAR(d, origin_oracle(x, y), 1e-12);
      EXPECT_NEAR(d, dlf_origin_closed_form(x, y), 1e-12);
    }
  }
}

TEST(Dissimilarity, SymmetricAndBounded) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int t = 0; t < 1000; ++t) {
    const IQPointd a = pt(u(rng), u(rng)), b = pt(u(rng), u(rng));
    const double ab = dissimilarity(a, b, kAnalytic);
    EXPECT_NEAR(ab, dissimilarity(b, a, kAnalytic), 1e-12);
    EXPECT_GT(ab, 0.0);
    EXPECT_LE(ab, 0.5);
    const DistanceMetricd euclid = Euclidean{};
    EXPECT_EQ(dissimilarity(a, b, euclid), dissimilarity(b, a, euclid));
    const double s = dissimilarity(a, b, kStandard);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 0.5 + 1e-15);
  }
}

TEST(Dissimilarity, StandardEmbeddingIsNotInjective) {
  EXPECT_EQ(dissimilarity(pt(1, 0), pt(2, 0), kStandard), 0.0);
  EXPECT_GT(dissimilarity(pt(0.5, 0), pt(1, 0), DistanceMetricd{QuantumAnalytic<double>{Kind::rescaled_angle(2.0)}}),
            0.0);
}

TEST(Dissimilarity, ShotConvergence) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  const int shots = 100000;
  int within = 0;
  for (int t = 0; t < 1000; ++t) {
    const IQPointd a = pt(u(rng), u(rng)), b = pt(u(rng), u(rng));
    const double p = dissimilarity(a, b, kAnalytic);
    const DistanceMetricd sampled =
        QuantumSampled<double>{Kind::rescaled_angle(1.0), ShotPolicy::sampled(shots, derive_seed(5, {std::uint64_t(t)}))};
    const double est = dissimilarity(a, b, sampled);
    EXPECT_GE(est, 0.0);
    EXPECT_LE(est, 1.0);
    within += std::abs(est - p) <= 4 * std::sqrt(p * (1 - p) / shots);
  }
  EXPECT_GE(within, 990);
}

TEST(Dissimilarity, PropagatesEmbeddingErrors) {
  try {
    dissimilarity(pt(2, 0), pt(0, 0), kAnalytic);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfDisk);
  }
  try {
    dissimilarity(pt(0, 0), pt(1, 0), kStandard);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedDirection);
  }
}

TEST(DlfOriginClosedForm, Examples) {
  EXPECT_EQ(dlf_origin_closed_form(0.0, 0.0), 0.0);
  EXPECT_NEAR(dlf_origin_closed_form(1.0, 0.0), 0.25, 1e-16);
  EXPECT_NEAR(dlf_origin_closed_form(1.0, 1.0), 0.25, 1e-16);
  EXPECT_THROW(dlf_origin_closed_form(1.2, 0.0), Error);
}

TEST(Metric, Names) {
  EXPECT_EQ(metric_name(DistanceMetricd{Euclidean{}}), "euclidean");
  EXPECT_EQ(metric_name(kAnalytic), "quantum_analytic");
  EXPECT_TRUE(is_quantum(kAnalytic));
  EXPECT_FALSE(is_quantum(DistanceMetricd{Euclidean{}}));
}

}  // namespace
}  // namespace qkmeans

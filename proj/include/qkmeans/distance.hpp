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

#include <cmath>
#include <numbers>
#include <string_view>
#include <type_traits>
#include <variant>

#include "qkmeans/embedding.hpp"
#include "qkmeans/swapsim.hpp"
#include "qkmeans/types.hpp"

namespace qkmeans {

struct Euclidean {};

/// Swap-test loss P(ancilla = 1), evaluated exactly.
template <typename Scalar>
struct QuantumAnalytic {
  EmbeddingKind<Scalar> kind;
};

/// Swap-test loss estimated from policy.shots ancilla measurements.
template <typename Scalar>
struct QuantumSampled {
  EmbeddingKind<Scalar> kind;
  ShotPolicy policy;
};

template <typename Scalar>
using DistanceMetric = std::variant<Euclidean, QuantumAnalytic<Scalar>, QuantumSampled<Scalar>>;

using DistanceMetricd = DistanceMetric<double>;

template <typename Scalar>
std::string_view metric_name(const DistanceMetric<Scalar>& metric) {
  switch (metric.index()) {
    case 0: return "euclidean";
    case 1: return "quantum_analytic";
    default: return "quantum_sampled";
  }
}

template <typename Scalar>
bool is_quantum(const DistanceMetric<Scalar>& metric) {
  return !std::holds_alternative<Euclidean>(metric);
}

/// Dissimilarity between two IQ points. The quantum variants are not
/// calibrated to Euclidean distance; they lie in [0, 1/2].
template <typename Scalar>
Scalar dissimilarity(const IQPoint<Scalar>& a, const IQPoint<Scalar>& b,
                     const DistanceMetric<Scalar>& metric) {
  return std::visit(
      [&](const auto& m) -> Scalar {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Euclidean>) {
          return (a - b).norm();
        } else if constexpr (std::is_same_v<M, QuantumAnalytic<Scalar>>) {
          return swap_test_exact(embed(a, m.kind), embed(b, m.kind));
        } else {
          const Scalar p = swap_test_exact(embed(a, m.kind), embed(b, m.kind));
          return sample_ancilla(p, m.policy).p1_estimate;
        }
      },
      metric);
}

/// Loss against the origin for a point already divided by r_max:
/// (1 - cos(pi x / 2) cos(pi y / 2)) / 4.
template <typename Scalar>
Scalar dlf_origin_closed_form(Scalar x_bar, Scalar y_bar) {
  if (!(std::abs(x_bar) <= Scalar(1)) || !(std::abs(y_bar) <= Scalar(1))) {
    throw Error(ErrorCode::kOutOfDisk, "normalised coordinates must lie in [-1, 1]");
  }
  constexpr Scalar half_pi = std::numbers::pi_v<Scalar> / 2;
  return (Scalar(1) - std::cos(half_pi * x_bar) * std::cos(half_pi * y_bar)) / Scalar(4);
}

}  // namespace qkmeans

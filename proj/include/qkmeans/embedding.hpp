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

// Angle embeddings of IQ points into single-qubit states.
//
// Both embeddings map a point to a pair of angles (theta, gamma) in [0, pi]^2
// that parameterise the preparation unitary
//
//   U(theta, gamma) = [ cos(theta/2)                -sin(theta/2)              ]
//                     [ e^{i gamma} sin(theta/2)     e^{i gamma} cos(theta/2)  ]
//
// The standard embedding divides by the point's own radius, so every point
// on a ray from the origin lands on the same state. The rescaled embedding
// divides by a dataset-wide r_max instead, which keeps the map injective on
// the closed disk of that radius. The formula itself is well defined on the
// square |x|, |y| <= r_max; points beyond the square are rejected.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "qkmeans/error.hpp"
#include "qkmeans/types.hpp"

namespace qkmeans {

template <typename Scalar>
struct EmbeddingKind {
  enum class Variant { kStandardAngle, kRescaledAngle };

  Variant variant = Variant::kRescaledAngle;
  Scalar r_max = Scalar(1);

  static EmbeddingKind standard_angle() { return {Variant::kStandardAngle, Scalar(1)}; }

  static EmbeddingKind rescaled_angle(Scalar r_max) {
    if (!(r_max > Scalar(0))) {
      throw Error(ErrorCode::kInvalidArgument, "rescaled embedding needs r_max > 0");
    }
    return {Variant::kRescaledAngle, r_max};
  }

  bool is_standard() const { return variant == Variant::kStandardAngle; }
};

template <typename Scalar>
struct EmbeddedPoint {
  Scalar theta{};
  Scalar gamma{};
  EmbeddingKind<Scalar> kind;
};

template <typename Scalar>
using QubitState = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

template <typename Scalar>
using Unitary2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <typename Scalar>
EmbeddedPoint<Scalar> embed(const IQPoint<Scalar>& p, const EmbeddingKind<Scalar>& kind) {
  constexpr Scalar half_pi = std::numbers::pi_v<Scalar> / 2;
  const Scalar r = p.norm();
  Scalar scale;
  if (kind.is_standard()) {
    if (r == Scalar(0)) {
      throw Error(ErrorCode::kUndefinedDirection,
                  "standard angle embedding is undefined at the origin");
    }
    scale = r;
  } else {
    // The angle formula is defined on the closed square |x|, |y| <= r_max;
    // the map is injective on the inscribed disk. Relative slack absorbs norm
    // rounding when r_max came from the same data.
    const Scalar limit = kind.r_max * (Scalar(1) + Scalar(64) * std::numeric_limits<Scalar>::epsilon());
    if (std::abs(p.x()) > limit || std::abs(p.y()) > limit) {
      throw Error(ErrorCode::kOutOfDisk, "point (" + std::to_string(double(p.x())) + ", " +
                                             std::to_string(double(p.y())) +
                                             ") lies outside the r_max = " +
                                             std::to_string(double(kind.r_max)) + " domain");
    }
    scale = kind.r_max;
  }
  // Rounding can push x/scale a hair past +-1; the angles stay in [0, pi].
  auto angle = [&](Scalar v) {
    const Scalar u = std::clamp(v / scale, Scalar(-1), Scalar(1));
    return half_pi * (u + Scalar(1));
  };
  return {angle(p.x()), angle(p.y()), kind};
}

template <typename Scalar>
Unitary2<Scalar> preparation_unitary(Scalar theta, Scalar gamma) {
  using C = std::complex<Scalar>;
  const Scalar c = std::cos(theta / 2);
  const Scalar s = std::sin(theta / 2);
  const C phase = std::polar(Scalar(1), gamma);
  Unitary2<Scalar> u;
  u << C(c), C(-s), phase * s, phase * c;
  return u;
}

/// First column of U(theta, gamma), i.e. U|0>.
template <typename Scalar>
QubitState<Scalar> prepare_state(const EmbeddedPoint<Scalar>& e) {
  QubitState<Scalar> state;
  state << std::complex<Scalar>(std::cos(e.theta / 2)),
      std::polar(std::sin(e.theta / 2), e.gamma);
  return state;
}

template <typename Scalar>
QubitState<Scalar> prepare_state(const IQPoint<Scalar>& p, const EmbeddingKind<Scalar>& kind) {
  return prepare_state(embed(p, kind));
}

/// Largest Euclidean norm over the columns of points.
template <typename Derived>
typename Derived::Scalar dataset_rmax(const Eigen::MatrixBase<Derived>& points) {
  static_assert(Derived::RowsAtCompileTime == 2, "expects a 2 x N point set");
  if (points.cols() == 0) {
    throw Error(ErrorCode::kEmptyDataset, "r_max of an empty point set");
  }
  return points.colwise().norm().maxCoeff();
}

}  // namespace qkmeans

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

#include <Eigen/Dense>

namespace qkmeans {

/// A complex baseband sample stored as (in-phase, quadrature).
template <typename Scalar>
using IQPoint = Eigen::Matrix<Scalar, 2, 1>;

/// Column-per-point storage for a list of IQ samples.
template <typename Scalar>
using PointSet = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

using IQPointd = IQPoint<double>;
using PointSetd = PointSet<double>;

}  // namespace qkmeans

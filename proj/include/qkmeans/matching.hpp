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

#include <vector>

#include <Eigen/Dense>

namespace qkmeans {

/// Maximum-weight perfect matching on a square weight matrix (Hungarian
/// method, O(n^3)). Returns col_of_row with col_of_row[r] the column matched
/// to row r.
std::vector<int> max_weight_matching(const Eigen::MatrixXd& weights);

}  // namespace qkmeans

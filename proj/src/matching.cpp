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

#include "qkmeans/matching.hpp"

#include <limits>

#include "qkmeans/error.hpp"

namespace qkmeans {

std::vector<int> max_weight_matching(const Eigen::MatrixXd& weights) {
  if (weights.rows() != weights.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "matching needs a square weight matrix");
  }
  const int n = static_cast<int>(weights.rows());
  if (n == 0) return {};
  // Shortest augmenting path with potentials on cost = max - weight, 1-based
  // with a virtual column 0.
  const double top = weights.maxCoeff();
  auto cost = [&](int r, int c) { return top - weights(r, c); };
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(n + 1, 0.0);
  std::vector<int> row_of_col(n + 1, 0);
  std::vector<int> way(n + 1, 0);
  for (int r = 1; r <= n; ++r) {
    row_of_col[0] = r;
    int c0 = 0;
    std::vector<double> min_slack(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[c0] = 1;
      const int r0 = row_of_col[c0];
      double delta = inf;
      int c1 = 0;
      for (int c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double cur = cost(r0 - 1, c - 1) - u[r0] - v[c];
        if (cur < min_slack[c]) {
          min_slack[c] = cur;
          way[c] = c0;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          c1 = c;
        }
      }
      for (int c = 0; c <= n; ++c) {
        if (used[c]) {
          u[row_of_col[c]] += delta;
          v[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      c0 = c1;
    } while (row_of_col[c0] != 0);
    do {
      const int c1 = way[c0];
      row_of_col[c0] = row_of_col[c1];
      c0 = c1;
    } while (c0 != 0);
  }
  std::vector<int> col_of_row(n, -1);
  for (int c = 1; c <= n; ++c) col_of_row[row_of_col[c] - 1] = c - 1;
  return col_of_row;
}

}  // namespace qkmeans

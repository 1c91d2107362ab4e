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
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qkmeans/types.hpp"

namespace qkmeans {

/// Square M-QAM alphabet. Points are stored in row-major grid order: row 0 is
/// the top row (largest quadrature), columns run from smallest to largest
/// in-phase value, and labels[j] == j.
struct Constellation {
  int order = 0;
  double spacing = 0.0;
  PointSetd points;
  std::vector<int> labels;

  int side() const;
  /// Radius of the corner points, (side - 1) / sqrt(2) * spacing.
  double max_radius() const;
};

/// Grid step that puts the corner points on the unit circle.
double unit_radius_spacing(int order);

/// Builds the sqrt(M) x sqrt(M) grid centred on the origin. Throws
/// ErrorCode::kInvalidOrder unless order is a perfect square >= 4.
Constellation ideal_constellation(int order);
Constellation ideal_constellation(int order, double spacing);

/// Noisy-channel parameters. sigma_phi and sigma_n are standard deviations.
struct ChannelParams {
  double sigma_phi = 0.0;
  double sigma_n = 0.0;
  double phi_b = 0.0;
  std::uint64_t seed = 0;
};

/// Received = exp(i (phi_b + Phi)) * sent + N, with Phi ~ Normal(0, sigma_phi^2)
/// and both components of N ~ Normal(0, sigma_n^2), drawn independently per
/// point from a stream keyed on (seed, point index).
PointSetd apply_channel(const PointSetd& clean, const ChannelParams& params);

struct SyntheticSource {
  ChannelParams channel;
};

struct IngestedSource {
  std::string path;
  bool normalized = false;
};

using Provenance = std::variant<SyntheticSource, IngestedSource>;

struct LabeledDataset {
  PointSetd points;
  std::vector<int> labels;
  Constellation constellation;
  Provenance provenance;

  Eigen::Index size() const { return points.cols(); }
};

/// per_symbol noisy copies of every ideal point; point index
/// symbol * per_symbol + copy.
LabeledDataset generate_dataset(const Constellation& constellation, int per_symbol,
                                const ChannelParams& params);

/// Reads the `i,q,label` CSV format. A leading `# normalize=max_radius`
/// comment rescales the points so the largest radius matches the
/// constellation's corner radius.
LabeledDataset read_dataset(std::istream& in, const Constellation& constellation,
                            const std::string& source_name = "<stream>");
LabeledDataset ingest_dataset(const std::string& path, const Constellation& constellation);

void write_dataset(std::ostream& out, const LabeledDataset& dataset);
void export_dataset(const std::string& path, const LabeledDataset& dataset);

/// 10^((p_dbm - 30) / 10).
double dbm_to_watts(double p_dbm);

}  // namespace qkmeans

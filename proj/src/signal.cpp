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

#include "qkmeans/signal.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "qkmeans/error.hpp"
#include "qkmeans/random.hpp"
#include "text.hpp"

namespace qkmeans {

namespace {

int checked_side(int order) {
  if (order < 4) {
    throw Error(ErrorCode::kInvalidOrder,
                "constellation order must be >= 4, got " + std::to_string(order));
  }
  int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
  if (side * side != order) {
    throw Error(ErrorCode::kInvalidOrder,
                "constellation order must be a perfect square, got " + std::to_string(order));
  }
  return side;
}

}  // namespace

int Constellation::side() const {
  return static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
}

double Constellation::max_radius() const {
  return (side() - 1) * spacing / std::sqrt(2.0);
}

double unit_radius_spacing(int order) {
  const int side = checked_side(order);
  return std::sqrt(2.0) / (side - 1);
}

Constellation ideal_constellation(int order) {
  return ideal_constellation(order, unit_radius_spacing(order));
}

Constellation ideal_constellation(int order, double spacing) {
  const int side = checked_side(order);
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw Error(ErrorCode::kInvalidArgument, "constellation spacing must be positive");
  }
  Constellation c;
  c.order = order;
  c.spacing = spacing;
  c.points.resize(2, order);
  c.labels.resize(order);
  const double half = 0.5 * (side - 1);
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      const int j = row * side + col;
      c.points(0, j) = (col - half) * spacing;
      c.points(1, j) = (half - row) * spacing;
      c.labels[j] = j;
    }
  }
  return c;
}

PointSetd apply_channel(const PointSetd& clean, const ChannelParams& params) {
  if (!(params.sigma_phi >= 0.0) || !(params.sigma_n >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "channel sigmas must be non-negative");
  }
  if (!clean.allFinite() || !std::isfinite(params.phi_b)) {
    throw Error(ErrorCode::kInvalidArgument, "channel input must be finite");
  }
  PointSetd out(2, clean.cols());
  std::normal_distribution<double> standard(0.0, 1.0);
  for (Eigen::Index k = 0; k < clean.cols(); ++k) {
    StreamRng rng(derive_seed(params.seed, {static_cast<std::uint64_t>(k)}));
    // Always draw all three variates so the stream layout does not depend on
    // which sigmas are zero.
    const double phase = params.phi_b + params.sigma_phi * standard(rng);
    const double n_i = params.sigma_n * standard(rng);
    const double n_q = params.sigma_n * standard(rng);
    standard.reset();
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const double x = clean(0, k);
    const double y = clean(1, k);
    out(0, k) = (c * x - s * y) + n_i;
    out(1, k) = (s * x + c * y) + n_q;
  }
  return out;
}

LabeledDataset generate_dataset(const Constellation& constellation, int per_symbol,
                                const ChannelParams& params) {
  if (per_symbol < 1) {
    throw Error(ErrorCode::kInvalidCount,
                "per_symbol must be >= 1, got " + std::to_string(per_symbol));
  }
  const int m = constellation.order;
  PointSetd clean(2, static_cast<Eigen::Index>(m) * per_symbol);
  std::vector<int> labels(clean.cols());
  for (int symbol = 0; symbol < m; ++symbol) {
    for (int copy = 0; copy < per_symbol; ++copy) {
      const Eigen::Index k = static_cast<Eigen::Index>(symbol) * per_symbol + copy;
      clean.col(k) = constellation.points.col(symbol);
      labels[k] = constellation.labels[symbol];
    }
  }
  return LabeledDataset{apply_channel(clean, params), std::move(labels), constellation,
                        SyntheticSource{params}};
}

LabeledDataset read_dataset(std::istream& in, const Constellation& constellation,
                            const std::string& source_name) {
  bool normalize = false;
  bool seen_header = false;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  auto fail = [&](ErrorCode code, const std::string& msg) {
    throw Error(code, source_name + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      auto body = detail::trim(text.substr(1));
      if (body == "normalize=max_radius") {
        if (seen_header) fail(ErrorCode::kParse, "normalize directive must precede the header");
        normalize = true;
      }
      continue;
    }
    if (!seen_header) {
      if (text != "i,q,label") fail(ErrorCode::kParse, "expected header 'i,q,label'");
      seen_header = true;
      continue;
    }
    const auto fields = detail::split(text, ',');
    if (fields.size() != 3) fail(ErrorCode::kParse, "expected 3 fields");
    const auto x = detail::parse_number<double>(fields[0]);
    const auto y = detail::parse_number<double>(fields[1]);
    const auto label = detail::parse_number<long long>(fields[2]);
    if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y)) {
      fail(ErrorCode::kParse, "malformed coordinate");
    }
    if (!label || *label < 0) fail(ErrorCode::kParse, "label must be a non-negative integer");
    if (*label >= constellation.order) {
      fail(ErrorCode::kValidation, "label " + std::to_string(*label) + " out of range for " +
                                       std::to_string(constellation.order) + "-QAM");
    }
    xs.push_back(*x);
    ys.push_back(*y);
    labels.push_back(static_cast<int>(*label));
  }
  if (labels.empty()) {
    throw Error(ErrorCode::kEmptyDataset, source_name + ": dataset has no points");
  }
  LabeledDataset ds;
  ds.points.resize(2, static_cast<Eigen::Index>(labels.size()));
  ds.points.row(0) = Eigen::Map<const Eigen::RowVectorXd>(xs.data(), xs.size());
  ds.points.row(1) = Eigen::Map<const Eigen::RowVectorXd>(ys.data(), ys.size());
  if (normalize) {
    const double r = ds.points.colwise().norm().maxCoeff();
    if (r > 0.0) ds.points *= constellation.max_radius() / r;
  }
  ds.labels = std::move(labels);
  ds.constellation = constellation;
  ds.provenance = IngestedSource{source_name, normalize};
  return ds;
}

LabeledDataset ingest_dataset(const std::string& path, const Constellation& constellation) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open dataset file " + path);
  return read_dataset(in, constellation, path);
}

void write_dataset(std::ostream& out, const LabeledDataset& dataset) {
  out << "i,q,label\n";
  for (Eigen::Index k = 0; k < dataset.size(); ++k) {
    out << detail::format_double(dataset.points(0, k)) << ','
        << detail::format_double(dataset.points(1, k)) << ',' << dataset.labels[k] << '\n';
  }
}

void export_dataset(const std::string& path, const LabeledDataset& dataset) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write dataset file " + path);
  write_dataset(out, dataset);
}

double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

}  // namespace qkmeans

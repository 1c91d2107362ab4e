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

#include "qkmeans/error.hpp"

namespace qkmeans {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidOrder: return "invalid-order";
    case ErrorCode::kInvalidCount: return "invalid-count";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kEmptyDataset: return "empty-dataset";
    case ErrorCode::kUndefinedDirection: return "undefined-direction";
    case ErrorCode::kOutOfDisk: return "out-of-disk";
    case ErrorCode::kNormalization: return "normalization";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace qkmeans

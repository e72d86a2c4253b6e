// Copyright 2026 The ROE Certify Authors
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

#include "roe/common.hpp"

namespace roe {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kBadMagic: return "bad_magic";
    case ErrorCode::kBadVersion: return "bad_version";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kTrailingData: return "trailing_data";
    case ErrorCode::kNonFinite: return "non_finite";
    case ErrorCode::kLabelOutOfRange: return "label_out_of_range";
    case ErrorCode::kShapeMismatch: return "shape_mismatch";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

std::string CertValue::ToString() const {
  return is_infinite() ? std::string("inf") : std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, CertValue v) {
  return os << v.ToString();
}

}  // namespace roe

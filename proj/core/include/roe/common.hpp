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

#ifndef ROE_COMMON_HPP_
#define ROE_COMMON_HPP_

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace roe {

using ClassId = std::uint32_t;

enum class ErrorCode {
  kInvalidArgument,
  kBadMagic,
  kBadVersion,
  kTruncated,
  kTrailingData,
  kNonFinite,
  kLabelOutOfRange,
  kShapeMismatch,
  kInfeasible,
  kParse,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// A certificate value: a non-negative poison count, or INFINITE when the
// target outcome cannot be reached even with control of every unit.
class CertValue {
 public:
  constexpr CertValue() = default;
  constexpr explicit CertValue(std::int64_t value) : value_(value) {}

  static constexpr CertValue Infinite() {
    return CertValue(std::numeric_limits<std::int64_t>::max());
  }

  constexpr bool is_infinite() const {
    return value_ == std::numeric_limits<std::int64_t>::max();
  }
  constexpr bool is_finite() const { return !is_infinite(); }

  // Raw value; INT64_MAX when infinite.
  constexpr std::int64_t value() const { return value_; }

  // cert - 1 (the largest tolerated poison count). Stays infinite.
  constexpr CertValue Radius() const {
    return is_infinite() ? *this : CertValue(value_ - 1);
  }

  constexpr bool AtLeast(std::int64_t budget) const {
    return value_ >= budget;
  }

  constexpr auto operator<=>(const CertValue&) const = default;

  std::string ToString() const;

 private:
  std::int64_t value_ = 0;
};

inline constexpr CertValue Min(CertValue a, CertValue b) {
  return a < b ? a : b;
}
inline constexpr CertValue Max(CertValue a, CertValue b) {
  return a < b ? b : a;
}

std::ostream& operator<<(std::ostream& os, CertValue v);

}  // namespace roe

#endif  // ROE_COMMON_HPP_

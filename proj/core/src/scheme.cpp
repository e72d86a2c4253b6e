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

#include "roe/scheme.hpp"

namespace roe {

EnsembleScheme::EnsembleScheme(Scheme scheme, std::size_t k, std::size_t d,
                               SpreadMap spread)
    : scheme_(scheme), k_(k), d_(d), spread_(std::move(spread)) {
  if (k_ == 0 || d_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "scheme: k and d must be >= 1");
  }
  if (scheme_ == Scheme::kFa) {
    if (spread_.size() != k_ * d_) {
      throw Error(ErrorCode::kShapeMismatch, "scheme: spread needs k*d buckets");
    }
    certifier_ = std::make_shared<FaCertifier>(spread_);
  } else {
    certifier_ = std::make_shared<DpaCertifier>();
  }
}

EnsembleScheme EnsembleScheme::Dpa(std::size_t k) {
  return EnsembleScheme(Scheme::kDpa, k, 1, {});
}

EnsembleScheme EnsembleScheme::Fa(std::size_t k, std::size_t d,
                                  SpreadMap spread) {
  return EnsembleScheme(Scheme::kFa, k, d, std::move(spread));
}

EnsembleScheme EnsembleScheme::Fa(std::size_t k, std::size_t d,
                                  std::uint64_t seed) {
  return Fa(k, d, BuildSpreadMap(k, d, seed));
}

EnsembleScheme EnsembleScheme::DpaStar(std::size_t k, std::size_t d) {
  return EnsembleScheme(Scheme::kDpaStar, k, d, {});
}

EnsembleScheme EnsembleScheme::FromPlan(const PartitionPlan& plan) {
  switch (plan.scheme) {
    case Scheme::kDpa: return Dpa(plan.k);
    case Scheme::kFa: return Fa(plan.k, plan.d, plan.spread);
    case Scheme::kDpaStar: return DpaStar(plan.k, plan.d);
  }
  throw Error(ErrorCode::kInvalidArgument, "scheme: unknown");
}

std::size_t EnsembleScheme::container_rows() const {
  return scheme_ == Scheme::kDpa ? k_ : k_ * d_;
}

std::size_t EnsembleScheme::logical_models() const {
  return scheme_ == Scheme::kFa ? k_ * d_ : k_;
}

LogitsTensor EnsembleScheme::Logical(const LogitsTensor& rows) const {
  if (rows.num_models() != container_rows()) {
    throw Error(ErrorCode::kShapeMismatch,
                "scheme expects " + std::to_string(container_rows()) +
                    " model rows, got " + std::to_string(rows.num_models()));
  }
  if (scheme_ == Scheme::kDpaStar) return AverageSubmodelGroups(rows, d_);
  return rows;
}

AdversaryView EnsembleScheme::Adversary() const {
  if (scheme_ == Scheme::kFa) return AdversaryView::FaBuckets(spread_);
  return AdversaryView::DpaPartitions(k_);
}

std::string EnsembleScheme::MethodTag(bool roe) const {
  std::string base = scheme_ == Scheme::kFa      ? "fa"
                     : scheme_ == Scheme::kDpa   ? "dpa"
                                                 : "dpa*";
  return roe ? base + "+roe" : base;
}

}  // namespace roe

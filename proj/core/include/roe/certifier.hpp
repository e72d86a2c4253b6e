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

#ifndef ROE_CERTIFIER_HPP_
#define ROE_CERTIFIER_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "roe/common.hpp"
#include "roe/election.hpp"
#include "roe/partitioner.hpp"

namespace roe {

// N_c - N_c' + [c' > c]. Positive iff c beats c' under the index tie-break.
std::int64_t Gap(const VoteProfile& profile, ClassId c, ClassId c_prime);

// ceil(max(0, gap) / 2).
CertValue CertV1Dpa(const VoteProfile& profile, ClassId c, ClassId c_prime);

// Minimum number of (-2,-1)/(-1,-2) moves to exhaust both (clamped) gaps.
CertValue CertV2DpaFromGaps(std::int64_t gap1, std::int64_t gap2);

// dp over a (k+2)^2 table; c, c1, c2 must be pairwise distinct.
CertValue CertV2Dpa(const VoteProfile& profile, ClassId c, ClassId c1,
                    ClassId c2);

using BucketPowerVector = std::vector<std::int64_t>;

BucketPowerVector BucketPowers1v1(std::span<const ClassId> predictions,
                                  const SpreadMap& spread, ClassId c,
                                  ClassId c_prime);

BucketPowerVector BucketPowers2v1(std::span<const ClassId> predictions,
                                  const SpreadMap& spread, ClassId c,
                                  ClassId c1, ClassId c2);

// Fewest buckets whose largest powers sum to at least `gap`.
CertValue CertGreedy(std::span<const std::int64_t> powers, std::int64_t gap);

CertValue CertV1Fa(std::span<const ClassId> predictions,
                   const SpreadMap& spread, ClassId c, ClassId c_prime);

CertValue CertV2Fa(std::span<const ClassId> predictions,
                   const SpreadMap& spread, ClassId c, ClassId c1,
                   ClassId c2);

// 1v1 / 2v1 certificates for one ensemble scheme, evaluated on a vector of
// per-model predictions.
class VoteCertifier {
 public:
  virtual ~VoteCertifier() = default;

  virtual CertValue CertV1(std::span<const ClassId> predictions,
                           std::size_t num_classes, ClassId c,
                           ClassId c_prime) const = 0;
  virtual CertValue CertV2(std::span<const ClassId> predictions,
                           std::size_t num_classes, ClassId c, ClassId c1,
                           ClassId c2) const = 0;
};

class DpaCertifier final : public VoteCertifier {
 public:
  CertValue CertV1(std::span<const ClassId> predictions,
                   std::size_t num_classes, ClassId c,
                   ClassId c_prime) const override;
  CertValue CertV2(std::span<const ClassId> predictions,
                   std::size_t num_classes, ClassId c, ClassId c1,
                   ClassId c2) const override;
};

class FaCertifier final : public VoteCertifier {
 public:
  explicit FaCertifier(SpreadMap spread) : spread_(std::move(spread)) {}

  const SpreadMap& spread() const { return spread_; }

  CertValue CertV1(std::span<const ClassId> predictions,
                   std::size_t num_classes, ClassId c,
                   ClassId c_prime) const override;
  CertValue CertV2(std::span<const ClassId> predictions,
                   std::size_t num_classes, ClassId c, ClassId c1,
                   ClassId c2) const override;

 private:
  SpreadMap spread_;
};

struct CertificateReport {
  ClassId c_pred = 0;
  ClassId c_sec = 1;
  CertValue cert_r1;
  CertValue cert_r2;
  CertValue cert;              // min(cert_r1, cert_r2)
  CertValue certified_radius;  // cert - 1
  ClassId plurality_pred = 0;
  CertValue baseline_cert;     // plurality vote with the same scheme
};

// Safe iff d_sym(D, D') < cert.
CertificateReport RoeCertificate(const LogitsTensor& logits,
                                 const VoteCertifier& certifier);

CertValue PluralityCertificate(const VoteProfile& profile);
CertValue PluralityCertificate(std::span<const ClassId> predictions,
                               std::size_t num_classes,
                               const VoteCertifier& certifier);

}  // namespace roe

#endif  // ROE_CERTIFIER_HPP_

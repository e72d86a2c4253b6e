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

#include "roe/certifier.hpp"

#include <algorithm>
#include <functional>

namespace roe {

namespace {

void CheckDistinct(ClassId c, ClassId c1, ClassId c2) {
  if (c == c1 || c == c2 || c1 == c2) {
    throw Error(ErrorCode::kInvalidArgument,
                "2v1 certificate needs pairwise distinct classes");
  }
}

std::int64_t CeilHalf(std::int64_t v) { return (v + 1) / 2; }

std::int64_t CountOf(std::span<const ClassId> predictions, ClassId c) {
  return std::count(predictions.begin(), predictions.end(), c);
}

std::int64_t PredictionGap(std::span<const ClassId> predictions, ClassId c,
                           ClassId c_prime) {
  if (c == c_prime) return 0;
  return CountOf(predictions, c) - CountOf(predictions, c_prime) +
         (c_prime > c ? 1 : 0);
}

void CheckSpread(std::span<const ClassId> predictions,
                 const SpreadMap& spread) {
  for (const auto& models : spread) {
    for (std::size_t m : models) {
      if (m >= predictions.size()) {
        throw Error(ErrorCode::kShapeMismatch,
                    "spread map references a missing model");
      }
    }
  }
}

// dp[i][j] for 0 <= i, j < n.
std::vector<std::vector<std::int64_t>> BuildDpTable(std::size_t n) {
  std::vector<std::vector<std::int64_t>> dp(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::min(i, j) <= 1) {
        dp[i][j] = CeilHalf(static_cast<std::int64_t>(std::max(i, j)));
      } else {
        dp[i][j] = 1 + std::min(dp[i - 1][j - 2], dp[i - 2][j - 1]);
      }
    }
  }
  return dp;
}

}  // namespace

std::int64_t Gap(const VoteProfile& profile, ClassId c, ClassId c_prime) {
  if (c >= profile.num_classes() || c_prime >= profile.num_classes()) {
    throw Error(ErrorCode::kInvalidArgument, "class out of range");
  }
  if (c == c_prime) return 0;
  return std::int64_t{profile.counts[c]} - profile.counts[c_prime] +
         (c_prime > c ? 1 : 0);
}

CertValue CertV1Dpa(const VoteProfile& profile, ClassId c, ClassId c_prime) {
  return CertValue(CeilHalf(std::max<std::int64_t>(0, Gap(profile, c, c_prime))));
}

CertValue CertV2DpaFromGaps(std::int64_t gap1, std::int64_t gap2) {
  gap1 = std::max<std::int64_t>(0, gap1);
  gap2 = std::max<std::int64_t>(0, gap2);
  const auto dp = BuildDpTable(static_cast<std::size_t>(std::max(gap1, gap2)) + 1);
  return CertValue(dp[gap1][gap2]);
}

CertValue CertV2Dpa(const VoteProfile& profile, ClassId c, ClassId c1,
                    ClassId c2) {
  CheckDistinct(c, c1, c2);
  const std::int64_t g1 = std::max<std::int64_t>(0, Gap(profile, c, c1));
  const std::int64_t g2 = std::max<std::int64_t>(0, Gap(profile, c, c2));
  // Gaps never exceed k + 1.
  const auto dp =
      BuildDpTable(static_cast<std::size_t>(profile.num_models()) + 2);
  return CertValue(dp[g1][g2]);
}

BucketPowerVector BucketPowers1v1(std::span<const ClassId> predictions,
                                  const SpreadMap& spread, ClassId c,
                                  ClassId c_prime) {
  CheckSpread(predictions, spread);
  BucketPowerVector powers(spread.size(), 0);
  for (std::size_t b = 0; b < spread.size(); ++b) {
    for (std::size_t m : spread[b]) {
      const ClassId vote = predictions[m];
      if (vote == c) {
        powers[b] += 2;
      } else if (vote != c_prime) {
        powers[b] += 1;
      }
    }
  }
  return powers;
}

BucketPowerVector BucketPowers2v1(std::span<const ClassId> predictions,
                                  const SpreadMap& spread, ClassId c,
                                  ClassId c1, ClassId c2) {
  CheckDistinct(c, c1, c2);
  CheckSpread(predictions, spread);
  BucketPowerVector powers(spread.size(), 0);
  for (std::size_t b = 0; b < spread.size(); ++b) {
    for (std::size_t m : spread[b]) {
      const ClassId vote = predictions[m];
      if (vote == c) {
        powers[b] += 3;
      } else if (vote != c1 && vote != c2) {
        powers[b] += 1;
      }
    }
  }
  return powers;
}

CertValue CertGreedy(std::span<const std::int64_t> powers, std::int64_t gap) {
  if (gap <= 0) return CertValue(0);
  std::vector<std::int64_t> sorted(powers.begin(), powers.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::int64_t reduced = 0;
  for (std::size_t t = 0; t < sorted.size(); ++t) {
    reduced += sorted[t];
    if (reduced >= gap) return CertValue(static_cast<std::int64_t>(t + 1));
  }
  return CertValue::Infinite();
}

CertValue CertV1Fa(std::span<const ClassId> predictions,
                   const SpreadMap& spread, ClassId c, ClassId c_prime) {
  const std::int64_t gap = PredictionGap(predictions, c, c_prime);
  if (gap <= 0) return CertValue(0);
  return CertGreedy(BucketPowers1v1(predictions, spread, c, c_prime), gap);
}

CertValue CertV2Fa(std::span<const ClassId> predictions,
                   const SpreadMap& spread, ClassId c, ClassId c1,
                   ClassId c2) {
  CheckDistinct(c, c1, c2);
  // The summed constraint uses the raw gaps: when one gap is already
  // non-positive the adversary may spend it, so clamping would overstate
  // the requirement.
  const std::int64_t combined =
      PredictionGap(predictions, c, c1) + PredictionGap(predictions, c, c2);
  const CertValue joint = CertGreedy(
      BucketPowers2v1(predictions, spread, c, c1, c2), combined);
  return Max(Max(CertV1Fa(predictions, spread, c, c1),
                 CertV1Fa(predictions, spread, c, c2)),
             joint);
}

CertValue DpaCertifier::CertV1(std::span<const ClassId> predictions,
                               std::size_t num_classes, ClassId c,
                               ClassId c_prime) const {
  return CertV1Dpa(VoteProfile::FromPredictions(predictions, num_classes), c,
                   c_prime);
}

CertValue DpaCertifier::CertV2(std::span<const ClassId> predictions,
                               std::size_t num_classes, ClassId c, ClassId c1,
                               ClassId c2) const {
  return CertV2Dpa(VoteProfile::FromPredictions(predictions, num_classes), c,
                   c1, c2);
}

CertValue FaCertifier::CertV1(std::span<const ClassId> predictions,
                              std::size_t /*num_classes*/, ClassId c,
                              ClassId c_prime) const {
  return CertV1Fa(predictions, spread_, c, c_prime);
}

CertValue FaCertifier::CertV2(std::span<const ClassId> predictions,
                              std::size_t /*num_classes*/, ClassId c,
                              ClassId c1, ClassId c2) const {
  return CertV2Fa(predictions, spread_, c, c1, c2);
}

CertificateReport RoeCertificate(const LogitsTensor& logits,
                                 const VoteCertifier& certifier) {
  const RoeOutcome outcome = RoeElect(logits);
  const std::vector<ClassId> predictions = ModelPredictions(logits);
  const auto num_classes = static_cast<ClassId>(logits.num_classes());

  CertificateReport report;
  report.c_pred = outcome.c_pred;
  report.c_sec = outcome.c_sec;

  // Eliminating c_pred in round 1: two rivals must both beat it.
  report.cert_r1 = CertValue::Infinite();
  for (ClassId c1 = 0; c1 < num_classes; ++c1) {
    if (c1 == outcome.c_pred) continue;
    for (ClassId c2 = c1 + 1; c2 < num_classes; ++c2) {
      if (c2 == outcome.c_pred) continue;
      report.cert_r1 =
          Min(report.cert_r1, certifier.CertV2(predictions, num_classes,
                                               outcome.c_pred, c1, c2));
    }
  }

  // Beating c_pred in round 2: c must overtake c_sec in round 1 and win the
  // binary c_pred-vs-c election.
  report.cert_r2 = CertValue::Infinite();
  for (ClassId c = 0; c < num_classes; ++c) {
    if (c == outcome.c_pred) continue;
    const CertValue reach =
        certifier.CertV1(predictions, num_classes, outcome.c_sec, c);
    const auto binary =
        BinaryClassifierPredictions(logits, outcome.c_pred, c);
    const CertValue win =
        certifier.CertV1(binary, num_classes, outcome.c_pred, c);
    report.cert_r2 = Min(report.cert_r2, Max(reach, win));
  }

  report.cert = Min(report.cert_r1, report.cert_r2);
  report.certified_radius = report.cert.Radius();
  report.plurality_pred = TopTwo(outcome.round1).first;
  report.baseline_cert =
      PluralityCertificate(predictions, num_classes, certifier);
  return report;
}

CertValue PluralityCertificate(const VoteProfile& profile) {
  const ClassId winner = TopTwo(profile).first;
  CertValue cert = CertValue::Infinite();
  for (ClassId c = 0; c < profile.num_classes(); ++c) {
    if (c != winner) cert = Min(cert, CertV1Dpa(profile, winner, c));
  }
  return cert;
}

CertValue PluralityCertificate(std::span<const ClassId> predictions,
                               std::size_t num_classes,
                               const VoteCertifier& certifier) {
  const ClassId winner =
      TopTwo(VoteProfile::FromPredictions(predictions, num_classes)).first;
  CertValue cert = CertValue::Infinite();
  for (ClassId c = 0; c < num_classes; ++c) {
    if (c != winner) {
      cert = Min(cert, certifier.CertV1(predictions, num_classes, winner, c));
    }
  }
  return cert;
}

}  // namespace roe

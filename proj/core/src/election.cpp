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

#include "roe/election.hpp"

#include <cmath>
#include <numeric>

namespace roe {

LogitsTensor::LogitsTensor(std::size_t num_models, std::size_t num_classes,
                           std::vector<double> scores)
    : num_models_(num_models),
      num_classes_(num_classes),
      scores_(std::move(scores)) {
  if (num_models_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "logits need >= 1 model");
  }
  if (num_classes_ < 2) {
    throw Error(ErrorCode::kInvalidArgument, "logits need >= 2 classes");
  }
  if (scores_.size() != num_models_ * num_classes_) {
    throw Error(ErrorCode::kShapeMismatch, "logits size mismatch");
  }
  for (double v : scores_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "non-finite logit");
    }
  }
}

int VoteProfile::num_models() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

VoteProfile VoteProfile::FromPredictions(std::span<const ClassId> predictions,
                                         std::size_t num_classes) {
  VoteProfile profile;
  profile.counts.assign(num_classes, 0);
  for (ClassId c : predictions) {
    if (c >= num_classes) {
      throw Error(ErrorCode::kInvalidArgument, "prediction out of range");
    }
    ++profile.counts[c];
  }
  return profile;
}

bool Prefers(std::span<const double> row, ClassId a, ClassId b) {
  return row[a] > row[b] || (row[a] == row[b] && a < b);
}

ClassId ModelArgmax(std::span<const double> row) {
  ClassId best = 0;
  for (ClassId c = 1; c < row.size(); ++c) {
    if (row[c] > row[best]) best = c;
  }
  return best;
}

std::vector<ClassId> ModelPredictions(const LogitsTensor& logits) {
  std::vector<ClassId> out(logits.num_models());
  for (std::size_t i = 0; i < logits.num_models(); ++i) {
    out[i] = ModelArgmax(logits.row(i));
  }
  return out;
}

VoteProfile Round1(const LogitsTensor& logits) {
  return VoteProfile::FromPredictions(ModelPredictions(logits),
                                      logits.num_classes());
}

std::pair<ClassId, ClassId> TopTwo(const VoteProfile& profile) {
  const auto& n = profile.counts;
  ClassId c1 = 0;
  for (ClassId c = 1; c < n.size(); ++c) {
    if (n[c] > n[c1]) c1 = c;
  }
  ClassId c2 = c1 == 0 ? 1 : 0;
  for (ClassId c = 0; c < n.size(); ++c) {
    if (c != c1 && n[c] > n[c2]) c2 = c;
  }
  return {c1, c2};
}

BinaryVoteProfile Round2(const LogitsTensor& logits, ClassId c1,
                         ClassId c2) {
  if (c1 == c2) {
    throw Error(ErrorCode::kInvalidArgument, "round 2 needs distinct classes");
  }
  BinaryVoteProfile out{c1, c2, 0, 0};
  for (std::size_t i = 0; i < logits.num_models(); ++i) {
    if (Prefers(logits.row(i), c1, c2)) ++out.count_a;
  }
  out.count_b = static_cast<int>(logits.num_models()) - out.count_a;
  return out;
}

RoeOutcome RoeElect(const LogitsTensor& logits) {
  RoeOutcome out;
  out.round1 = Round1(logits);
  const auto [c1, c2] = TopTwo(out.round1);
  out.round2 = Round2(logits, c1, c2);
  const bool first_wins =
      out.round2.count_a > out.round2.count_b ||
      (out.round2.count_a == out.round2.count_b && c1 < c2);
  out.c_pred = first_wins ? c1 : c2;
  out.c_sec = first_wins ? c2 : c1;
  return out;
}

ClassId PluralityPredict(const LogitsTensor& logits) {
  return TopTwo(Round1(logits)).first;
}

std::vector<ClassId> BinaryClassifierPredictions(const LogitsTensor& logits,
                                                 ClassId c_pred, ClassId c) {
  if (c_pred == c) {
    throw Error(ErrorCode::kInvalidArgument,
                "binary classifier needs distinct classes");
  }
  std::vector<ClassId> out(logits.num_models());
  for (std::size_t i = 0; i < logits.num_models(); ++i) {
    out[i] = Prefers(logits.row(i), c, c_pred) ? c : c_pred;
  }
  return out;
}

BinaryVoteProfile BinaryClassifierVotes(const LogitsTensor& logits,
                                        ClassId c_pred, ClassId c) {
  BinaryVoteProfile out{c_pred, c, 0, 0};
  for (ClassId v : BinaryClassifierPredictions(logits, c_pred, c)) {
    ++(v == c_pred ? out.count_a : out.count_b);
  }
  return out;
}

std::vector<double> AverageSubmodelLogits(
    std::span<const std::span<const double>> stack) {
  if (stack.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one submodel");
  }
  const std::size_t width = stack.front().size();
  std::vector<double> mean(width, 0.0);
  for (const auto& row : stack) {
    if (row.size() != width) {
      throw Error(ErrorCode::kShapeMismatch, "submodel rows differ in length");
    }
    for (std::size_t c = 0; c < width; ++c) mean[c] += row[c];
  }
  for (double& v : mean) v /= static_cast<double>(stack.size());
  return mean;
}

LogitsTensor AverageSubmodelGroups(const LogitsTensor& submodels,
                                   std::size_t d) {
  if (d == 0 || submodels.num_models() % d != 0) {
    throw Error(ErrorCode::kShapeMismatch,
                "submodel count is not a multiple of d");
  }
  const std::size_t k = submodels.num_models() / d;
  std::vector<double> scores;
  scores.reserve(k * submodels.num_classes());
  std::vector<std::span<const double>> stack(d);
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t s = 0; s < d; ++s) stack[s] = submodels.row(p * d + s);
    const auto mean = AverageSubmodelLogits(stack);
    scores.insert(scores.end(), mean.begin(), mean.end());
  }
  return LogitsTensor(k, submodels.num_classes(), std::move(scores));
}

}  // namespace roe

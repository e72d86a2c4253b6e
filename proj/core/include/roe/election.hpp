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

#ifndef ROE_ELECTION_HPP_
#define ROE_ELECTION_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "roe/common.hpp"

namespace roe {

// Dense (num_models x num_classes) score matrix for one test sample.
// Entries are finite and num_classes >= 2.
class LogitsTensor {
 public:
  LogitsTensor(std::size_t num_models, std::size_t num_classes,
               std::vector<double> scores);

  std::size_t num_models() const { return num_models_; }
  std::size_t num_classes() const { return num_classes_; }

  std::span<const double> row(std::size_t model) const {
    return {scores_.data() + model * num_classes_, num_classes_};
  }
  const std::vector<double>& scores() const { return scores_; }

  friend bool operator==(const LogitsTensor&, const LogitsTensor&) = default;

 private:
  std::size_t num_models_;
  std::size_t num_classes_;
  std::vector<double> scores_;
};

struct VoteProfile {
  std::vector<int> counts;  // per class

  std::size_t num_classes() const { return counts.size(); }
  int num_models() const;

  static VoteProfile FromPredictions(std::span<const ClassId> predictions,
                                     std::size_t num_classes);

  friend bool operator==(const VoteProfile&, const VoteProfile&) = default;
};

struct BinaryVoteProfile {
  ClassId class_a = 0;
  ClassId class_b = 1;
  int count_a = 0;
  int count_b = 0;

  friend bool operator==(const BinaryVoteProfile&,
                         const BinaryVoteProfile&) = default;
};

// True when `row` ranks class a above class b: strictly higher score, or an
// exact tie with a < b.
bool Prefers(std::span<const double> row, ClassId a, ClassId b);

ClassId ModelArgmax(std::span<const double> row);

std::vector<ClassId> ModelPredictions(const LogitsTensor& logits);

VoteProfile Round1(const LogitsTensor& logits);

// (c1, c2): the plurality winner and the best of the rest, smaller index
// winning ties.
std::pair<ClassId, ClassId> TopTwo(const VoteProfile& profile);

BinaryVoteProfile Round2(const LogitsTensor& logits, ClassId c1, ClassId c2);

struct RoeOutcome {
  ClassId c_pred = 0;
  ClassId c_sec = 1;
  VoteProfile round1;
  BinaryVoteProfile round2;
};

RoeOutcome RoeElect(const LogitsTensor& logits);

inline std::pair<ClassId, ClassId> RoePredict(const LogitsTensor& logits) {
  const RoeOutcome out = RoeElect(logits);
  return {out.c_pred, out.c_sec};
}

// Plurality vote over model argmaxes.
ClassId PluralityPredict(const LogitsTensor& logits);

// Per-model outputs of the binary classifier g_i^c: c when the model ranks c
// above c_pred, else c_pred.
std::vector<ClassId> BinaryClassifierPredictions(const LogitsTensor& logits,
                                                 ClassId c_pred, ClassId c);

BinaryVoteProfile BinaryClassifierVotes(const LogitsTensor& logits,
                                        ClassId c_pred, ClassId c);

// Mean of d equal-length logits rows.
std::vector<double> AverageSubmodelLogits(
    std::span<const std::span<const double>> stack);

// Collapses groups of `d` consecutive rows into their averaged logical model.
LogitsTensor AverageSubmodelGroups(const LogitsTensor& submodels,
                                   std::size_t d);

}  // namespace roe

#endif  // ROE_ELECTION_HPP_

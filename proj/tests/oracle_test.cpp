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

#include "roe/oracle.hpp"

#include <algorithm>
#include <vector>

#include "gtest/gtest.h"
#include "roe/random.hpp"
#include "roe/verify.hpp"

namespace roe {
namespace {

LogitsTensor OneHot(const std::vector<ClassId>& preds, std::size_t classes) {
  std::vector<double> scores(preds.size() * classes, 0.0);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    scores[i * classes + preds[i]] = 1.0;
  }
  return LogitsTensor(preds.size(), classes, std::move(scores));
}

// Replays a witness: controlled models get scores that realize their
// rankings exactly.
LogitsTensor ApplyWitness(const LogitsTensor& logits, const AttackWitness& w) {
  std::vector<double> scores = logits.scores();
  const std::size_t classes = logits.num_classes();
  for (std::size_t j = 0; j < w.models.size(); ++j) {
    const auto& ranking = w.rankings[j];
    for (std::size_t pos = 0; pos < ranking.size(); ++pos) {
      scores[w.models[j] * classes + ranking[pos]] =
          static_cast<double>(classes - pos);
    }
  }
  return LogitsTensor(logits.num_models(), classes, std::move(scores));
}

// Round-1 predictions realizing gaps (g1, g2) of class 0 over classes 1, 2.
std::vector<ClassId> PredictionsForGaps(int g1, int g2) {
  const int n_c = std::max(g1, g2);
  // gap(0, ci) = n_c - n_ci + 1, so n_ci = n_c + 1 - g_i (a zero gap needs
  // n_ci = n_c + 1).
  const int n_c1 = n_c + 1 - g1;
  const int n_c2 = n_c + 1 - g2;
  std::vector<ClassId> preds;
  preds.insert(preds.end(), n_c, 0);
  preds.insert(preds.end(), n_c1, 1);
  preds.insert(preds.end(), n_c2, 2);
  return preds;
}

TEST(MinAttackBudgetTest, UnanimousBinaryDpa) {
  const auto logits = OneHot({0, 0, 0}, 2);
  const auto out = MinAttackBudget(logits, AdversaryView::DpaPartitions(3), 3);
  ASSERT_TRUE(out.changed);
  EXPECT_EQ(out.budget, 2);
  ASSERT_TRUE(out.witness.has_value());
  EXPECT_EQ(out.witness->units.size(), 2u);
}

TEST(MinAttackBudgetTest, ZeroBudgetNeverChanges) {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto logits = RandomLogits(rng, 4, 3, t % 2 == 0);
    const auto out = MinAttackBudget(logits, AdversaryView::DpaPartitions(4), 0);
    EXPECT_FALSE(out.changed);
    EXPECT_FALSE(out.witness.has_value());
  }
}

TEST(MinAttackBudgetTest, BucketTouchingAllModels) {
  AdversaryView view;
  view.scheme = AdversaryScheme::kFaBuckets;
  view.unit_to_models = {{0}, {1}, {2}, {0, 1, 2, 3}, {3}};
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const auto logits = RandomLogits(rng, 4, 3, t % 2 == 0);
    const auto out = MinAttackBudget(logits, view, 5);
    ASSERT_TRUE(out.changed);
    EXPECT_EQ(out.budget, 1);
  }
}

TEST(MinAttackBudgetTest, WitnessFlipsPrediction) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 2 + rng.Below(4);
    const auto logits = RandomLogits(rng, k, 2 + rng.Below(2), t % 2 == 0);
    const auto out = MinAttackBudget(logits, AdversaryView::DpaPartitions(k),
                                     static_cast<int>(k));
    ASSERT_TRUE(out.changed);
    ASSERT_TRUE(out.witness.has_value());
    EXPECT_EQ(out.witness->units.size(), static_cast<std::size_t>(out.budget));
    const auto attacked = ApplyWitness(logits, *out.witness);
    EXPECT_NE(RoePredict(attacked).first, RoePredict(logits).first);
  }
}

TEST(MinAttackBudgetTest, BinaryDpaMatchesHalfGap) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 1 + rng.Below(8);
    const auto logits = RandomLogits(rng, k, 2, t % 2 == 0);
    const auto r2 = Round1(logits);
    const ClassId pred = RoePredict(logits).first;
    const ClassId other = 1 - pred;
    const std::int64_t gap =
        r2.counts[pred] - r2.counts[other] + (other > pred ? 1 : 0);
    const auto out = MinAttackBudget(logits, AdversaryView::DpaPartitions(k),
                                     static_cast<int>(k));
    ASSERT_TRUE(out.changed);
    EXPECT_EQ(out.budget, (gap + 1) / 2);
  }
}

TEST(MinAttackBudgetTest, PluralityAggregator) {
  // Plurality 3:2:2 falls to one flip.
  const auto logits = OneHot({0, 0, 0, 1, 1, 2, 2}, 3);
  const auto out = MinAttackBudget(logits, AdversaryView::DpaPartitions(7), 7,
                                   Aggregator::kPlurality);
  ASSERT_TRUE(out.changed);
  EXPECT_EQ(out.budget, 1);
}

TEST(MinAttackBudgetTest, MonotoneInUnitCoverage) {
  Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    const auto logits = RandomLogits(rng, 4, 3, t % 2 == 0);
    const auto narrow = AdversaryView::FaBuckets(BuildSpreadMap(2, 2, rng.Next()));
    auto wide = narrow;
    const std::size_t unit = rng.Below(wide.unit_to_models.size());
    auto& models = wide.unit_to_models[unit];
    for (std::size_t m = 0; m < 4; ++m) {
      if (std::find(models.begin(), models.end(), m) == models.end()) {
        models.push_back(m);
        break;
      }
    }
    const auto a = MinAttackBudget(logits, narrow, 4);
    const auto b = MinAttackBudget(logits, wide, 4);
    ASSERT_TRUE(a.changed);
    ASSERT_TRUE(b.changed);
    EXPECT_LE(b.budget, a.budget);
  }
}

TEST(MinAttackBudgetTest, RejectsInfeasibleInstances) {
  Rng rng(6);
  EXPECT_THROW(MinAttackBudget(RandomLogits(rng, 9, 2, true),
                               AdversaryView::DpaPartitions(9), 1),
               Error);
  EXPECT_THROW(MinAttackBudget(RandomLogits(rng, 3, 5, true),
                               AdversaryView::DpaPartitions(3), 1),
               Error);
  // Model 2 is fed by no unit.
  AdversaryView gap_view;
  gap_view.unit_to_models = {{0}, {1}};
  EXPECT_THROW(MinAttackBudget(RandomLogits(rng, 3, 2, true), gap_view, 1),
               Error);
  try {
    MinAttackBudget(RandomLogits(rng, 9, 2, true),
                    AdversaryView::DpaPartitions(9), 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(CheckSoundnessTest, TrivialCertificates) {
  Rng rng(7);
  for (int t = 0; t < 40; ++t) {
    const auto logits = RandomLogits(rng, 3, 3, t % 2 == 0);
    const auto view = AdversaryView::DpaPartitions(3);
    EXPECT_TRUE(CheckSoundness(logits, view, CertValue(0)));
    const bool single_flip = MinAttackBudget(logits, view, 1).changed;
    EXPECT_EQ(CheckSoundness(logits, view, CertValue(1)), true);
    EXPECT_EQ(CheckSoundness(logits, view, CertValue(2)), !single_flip);
  }
}

TEST(CheckSoundnessTest, DetectsOverclaim) {
  const auto logits = OneHot({0, 0, 0}, 2);
  const auto view = AdversaryView::DpaPartitions(3);
  EXPECT_TRUE(CheckSoundness(logits, view, CertValue(2)));
  EXPECT_FALSE(CheckSoundness(logits, view, CertValue(3)));
}

TEST(CheckSoundnessTest, RandomDpaCertificatesHold) {
  Rng rng(8);
  for (int t = 0; t < 60; ++t) {
    const std::size_t k = 3 + rng.Below(3);
    const auto logits = RandomLogits(rng, k, 2 + rng.Below(2), t % 2 == 0);
    const auto r = RoeCertificate(logits, DpaCertifier());
    EXPECT_TRUE(CheckSoundness(logits, AdversaryView::DpaPartitions(k), r.cert));
  }
}

TEST(MinAttackBudgetPairTest, Examples) {
  auto run = [](int g1, int g2) {
    const auto preds = PredictionsForGaps(g1, g2);
    return MinAttackBudgetPair(preds, 3,
                               AdversaryView::DpaPartitions(preds.size()), 0, 1,
                               2, static_cast<int>(preds.size()));
  };
  const auto zero = run(0, 0);
  EXPECT_TRUE(zero.changed);
  EXPECT_EQ(zero.budget, 0);
  EXPECT_EQ(run(2, 2).budget, 2);
  EXPECT_EQ(run(4, 4).budget, 3);
  EXPECT_EQ(run(4, 1).budget, 2);
}

TEST(MinAttackBudgetPairTest, HelperRealizesGaps) {
  for (int g1 = 0; g1 <= 6; ++g1) {
    for (int g2 = 0; g2 <= 6; ++g2) {
      const auto profile =
          VoteProfile::FromPredictions(PredictionsForGaps(g1, g2), 3);
      EXPECT_EQ(std::max<std::int64_t>(0, Gap(profile, 0, 1)), g1);
      EXPECT_EQ(std::max<std::int64_t>(0, Gap(profile, 0, 2)), g2);
    }
  }
}

TEST(MinAttackBudgetPairTest, WitnessAndBounds) {
  const std::vector<ClassId> preds{0, 0, 0, 1};
  const auto out = MinAttackBudgetPair(
      preds, 3, AdversaryView::DpaPartitions(4), 0, 1, 2, 4);
  ASSERT_TRUE(out.changed);
  ASSERT_TRUE(out.witness.has_value());
  auto attacked = preds;
  for (std::size_t j = 0; j < out.witness->models.size(); ++j) {
    attacked[out.witness->models[j]] = out.witness->rankings[j].front();
  }
  const auto p = VoteProfile::FromPredictions(attacked, 3);
  EXPECT_LE(Gap(p, 0, 1), 0);
  EXPECT_LE(Gap(p, 0, 2), 0);

  const auto none = MinAttackBudgetPair(
      preds, 3, AdversaryView::DpaPartitions(4), 0, 1, 2, 1);
  EXPECT_FALSE(none.changed);

  const std::vector<ClassId> big(17, 0);
  EXPECT_THROW(MinAttackBudgetPair(big, 3, AdversaryView::DpaPartitions(17), 0,
                                   1, 2, 1),
               Error);
  EXPECT_THROW(MinAttackBudgetPair(preds, 3, AdversaryView::DpaPartitions(4), 0,
                                   1, 1, 1),
               Error);
}

TEST(SoundnessTrialTest, FaAndDpaStarSchemes) {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const auto fa = EnsembleScheme::Fa(2, 2, rng.Next());
    const auto trial =
        RunSoundnessTrial(fa, RandomLogits(rng, fa.container_rows(), 3, t % 2));
    EXPECT_TRUE(trial.sound) << DescribeTrial(t, trial);

    const auto star = EnsembleScheme::DpaStar(3, 2);
    const auto star_trial = RunSoundnessTrial(
        star, RandomLogits(rng, star.container_rows(), 3, t % 2));
    EXPECT_TRUE(star_trial.sound) << DescribeTrial(t, star_trial);
  }
}

}  // namespace
}  // namespace roe

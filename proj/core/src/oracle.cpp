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
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>

namespace roe {

AdversaryView AdversaryView::DpaPartitions(std::size_t k) {
  AdversaryView view;
  view.scheme = AdversaryScheme::kDpaPartitions;
  view.unit_to_models = IdentitySpread(k);
  return view;
}

AdversaryView AdversaryView::FaBuckets(const SpreadMap& spread) {
  AdversaryView view;
  view.scheme = AdversaryScheme::kFaBuckets;
  view.unit_to_models = spread;
  return view;
}

namespace {

using ModelMask = std::uint32_t;

void Infeasible(const std::string& what) {
  throw Error(ErrorCode::kInfeasible, "oracle: " + what);
}

std::vector<ModelMask> UnitMasks(const AdversaryView& view,
                                 std::size_t num_models) {
  std::vector<ModelMask> masks;
  ModelMask covered = 0;
  for (const auto& models : view.unit_to_models) {
    ModelMask mask = 0;
    for (std::size_t m : models) {
      if (m >= num_models) Infeasible("unit references a missing model");
      mask |= ModelMask{1} << m;
    }
    covered |= mask;
    masks.push_back(mask);
  }
  const ModelMask all = (ModelMask{1} << num_models) - 1;
  if (covered != all) Infeasible("some model is not fed by any unit");
  return masks;
}

// Calls visit(units, mask) for each size-`size` unit subset whose model mask
// has not been seen before; stops early when visit returns true.
bool ForEachNewSubset(const std::vector<ModelMask>& unit_masks,
                      std::size_t size, std::vector<char>& seen,
                      const std::function<bool(const std::vector<std::size_t>&,
                                               ModelMask)>& visit) {
  const std::size_t n = unit_masks.size();
  if (size > n) return false;
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    ModelMask mask = 0;
    for (std::size_t u : idx) mask |= unit_masks[u];
    if (!seen[mask]) {
      seen[mask] = 1;
      if (visit(idx, mask)) return true;
    }
    // Next combination in lexicographic order.
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<std::size_t> MaskModels(ModelMask mask) {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; mask != 0; ++m, mask >>= 1) {
    if (mask & 1) out.push_back(m);
  }
  return out;
}

struct Ranking {
  std::vector<ClassId> order;  // best first
  ClassId top = 0;
  // above[a][b]: a is ranked above b.
  std::array<std::array<bool, kOracleMaxClasses>, kOracleMaxClasses> above{};
};

std::vector<Ranking> AllRankings(std::size_t num_classes) {
  std::vector<ClassId> perm(num_classes);
  std::iota(perm.begin(), perm.end(), ClassId{0});
  std::vector<Ranking> out;
  do {
    Ranking r;
    r.order = perm;
    r.top = perm.front();
    for (std::size_t i = 0; i < num_classes; ++i) {
      for (std::size_t j = i + 1; j < num_classes; ++j) {
        r.above[perm[i]][perm[j]] = true;
      }
    }
    out.push_back(std::move(r));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

struct Tally {
  std::array<int, kOracleMaxClasses> votes{};
  std::array<std::array<int, kOracleMaxClasses>, kOracleMaxClasses> prefer{};

  void Add(const Ranking& r, std::size_t num_classes, int sign) {
    votes[r.top] += sign;
    for (std::size_t a = 0; a < num_classes; ++a) {
      for (std::size_t b = 0; b < num_classes; ++b) {
        if (r.above[a][b]) prefer[a][b] += sign;
      }
    }
  }
};

ClassId Elect(const Tally& t, std::size_t num_classes, Aggregator aggregator) {
  ClassId c1 = 0;
  for (ClassId c = 1; c < num_classes; ++c) {
    if (t.votes[c] > t.votes[c1]) c1 = c;
  }
  if (aggregator == Aggregator::kPlurality) return c1;
  ClassId c2 = c1 == 0 ? 1 : 0;
  for (ClassId c = 0; c < num_classes; ++c) {
    if (c != c1 && t.votes[c] > t.votes[c2]) c2 = c;
  }
  const int a = t.prefer[c1][c2];
  const int b = t.prefer[c2][c1];
  return (a > b || (a == b && c1 < c2)) ? c1 : c2;
}

Ranking RankingOf(std::span<const double> row) {
  std::vector<ClassId> order(row.size());
  std::iota(order.begin(), order.end(), ClassId{0});
  std::sort(order.begin(), order.end(),
            [&](ClassId a, ClassId b) { return Prefers(row, a, b); });
  Ranking r;
  r.order = order;
  r.top = order.front();
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      r.above[order[i]][order[j]] = true;
    }
  }
  return r;
}

}  // namespace

AttackOutcome MinAttackBudget(const LogitsTensor& logits,
                              const AdversaryView& view, int max_budget,
                              Aggregator aggregator) {
  const std::size_t num_models = logits.num_models();
  const std::size_t num_classes = logits.num_classes();
  if (view.control_units() > kOracleMaxUnits ||
      num_models > kOracleMaxModels || num_classes > kOracleMaxClasses) {
    Infeasible("instance exceeds exhaustive bounds (units <= 8, models <= 8, "
               "classes <= 4)");
  }
  if (max_budget < 0) Infeasible("negative budget");
  const auto unit_masks = UnitMasks(view, num_models);

  std::vector<Ranking> original;
  for (std::size_t i = 0; i < num_models; ++i) {
    original.push_back(RankingOf(logits.row(i)));
  }
  Tally full;
  for (const auto& r : original) full.Add(r, num_classes, +1);
  const ClassId clean = Elect(full, num_classes, aggregator);

  const auto rankings = AllRankings(num_classes);
  std::vector<char> seen(std::size_t{1} << num_models, 0);
  const int top = std::min<int>(max_budget,
                                static_cast<int>(view.control_units()));

  AttackOutcome outcome;
  outcome.budget = max_budget;
  for (int size = 0; size <= top; ++size) {
    const bool found = ForEachNewSubset(
        unit_masks, static_cast<std::size_t>(size), seen,
        [&](const std::vector<std::size_t>& units, ModelMask mask) {
          const auto models = MaskModels(mask);
          Tally tally = full;
          for (std::size_t m : models) tally.Add(original[m], num_classes, -1);
          std::vector<std::size_t> chosen(models.size());
          // Controlled models are interchangeable, so multisets suffice.
          std::function<bool(std::size_t, std::size_t)> assign =
              [&](std::size_t pos, std::size_t first) -> bool {
            if (pos == models.size()) {
              return Elect(tally, num_classes, aggregator) != clean;
            }
            for (std::size_t r = first; r < rankings.size(); ++r) {
              tally.Add(rankings[r], num_classes, +1);
              chosen[pos] = r;
              if (assign(pos + 1, r)) return true;
              tally.Add(rankings[r], num_classes, -1);
            }
            return false;
          };
          if (!assign(0, 0)) return false;
          AttackWitness witness;
          witness.units = units;
          witness.models = models;
          for (std::size_t r : chosen) {
            witness.rankings.push_back(rankings[r].order);
          }
          outcome.witness = std::move(witness);
          return true;
        });
    if (found) {
      outcome.budget = size;
      outcome.changed = true;
      return outcome;
    }
  }
  return outcome;
}

bool CheckSoundness(const LogitsTensor& logits, const AdversaryView& view,
                    CertValue cert, Aggregator aggregator) {
  if (cert == CertValue(0)) return true;
  const auto units = static_cast<std::int64_t>(view.control_units());
  const std::int64_t budget =
      cert.is_infinite() ? units : std::min(units, cert.value() - 1);
  return !MinAttackBudget(logits, view, static_cast<int>(budget), aggregator)
              .changed;
}

AttackOutcome MinAttackBudgetPair(std::span<const ClassId> predictions,
                                  std::size_t num_classes,
                                  const AdversaryView& view, ClassId c,
                                  ClassId c1, ClassId c2, int max_budget) {
  const std::size_t num_models = predictions.size();
  if (view.control_units() > kPairOracleMaxUnits ||
      num_models > kPairOracleMaxModels || num_classes > kOracleMaxClasses) {
    Infeasible("pair instance exceeds exhaustive bounds (units <= 16, "
               "models <= 16, classes <= 4)");
  }
  if (c == c1 || c == c2 || c1 == c2 || c >= num_classes ||
      c1 >= num_classes || c2 >= num_classes) {
    throw Error(ErrorCode::kInvalidArgument,
                "pair oracle needs distinct in-range classes");
  }
  if (max_budget < 0) Infeasible("negative budget");
  const auto unit_masks = UnitMasks(view, num_models);

  std::array<int, kOracleMaxClasses> full{};
  for (ClassId p : predictions) {
    if (p >= num_classes) {
      throw Error(ErrorCode::kInvalidArgument, "prediction out of range");
    }
    ++full[p];
  }
  auto beats = [](const std::array<int, kOracleMaxClasses>& n, ClassId a,
                  ClassId b) { return n[a] > n[b] || (n[a] == n[b] && a < b); };
  auto reached = [&](const std::array<int, kOracleMaxClasses>& n) {
    return beats(n, c1, c) && beats(n, c2, c);
  };

  std::vector<char> seen(std::size_t{1} << num_models, 0);
  const int top = std::min<int>(max_budget,
                                static_cast<int>(view.control_units()));
  AttackOutcome outcome;
  outcome.budget = max_budget;
  for (int size = 0; size <= top; ++size) {
    const bool found = ForEachNewSubset(
        unit_masks, static_cast<std::size_t>(size), seen,
        [&](const std::vector<std::size_t>& units, ModelMask mask) {
          const auto models = MaskModels(mask);
          auto counts = full;
          for (std::size_t m : models) --counts[predictions[m]];
          std::vector<ClassId> chosen(models.size());
          std::function<bool(std::size_t, ClassId)> assign =
              [&](std::size_t pos, ClassId first) -> bool {
            if (pos == models.size()) return reached(counts);
            for (ClassId v = first; v < num_classes; ++v) {
              ++counts[v];
              chosen[pos] = v;
              if (assign(pos + 1, v)) return true;
              --counts[v];
            }
            return false;
          };
          if (!assign(0, 0)) return false;
          AttackWitness witness;
          witness.units = units;
          witness.models = models;
          for (ClassId v : chosen) witness.rankings.push_back({v});
          outcome.witness = std::move(witness);
          return true;
        });
    if (found) {
      outcome.budget = size;
      outcome.changed = true;
      return outcome;
    }
  }
  return outcome;
}

}  // namespace roe

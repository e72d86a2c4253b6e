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

#include "roe/partitioner.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "roe/common.hpp"
#include "roe/random.hpp"

namespace roe {

const char* SchemeName(Scheme scheme) {
  switch (scheme) {
    case Scheme::kDpa: return "dpa";
    case Scheme::kFa: return "fa";
    case Scheme::kDpaStar: return "dpa-star";
  }
  return "?";
}

Scheme ParseScheme(std::string_view name) {
  if (name == "dpa") return Scheme::kDpa;
  if (name == "fa") return Scheme::kFa;
  if (name == "dpa-star" || name == "dpa*") return Scheme::kDpaStar;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown scheme '" + std::string(name) + "'");
}

SampleId::SampleId(std::string bytes) : bytes_(std::move(bytes)) {
  if (bytes_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sample id must be non-empty");
  }
}

std::size_t AssignPartitionDpa(const SampleId& sample, std::size_t k,
                               std::uint64_t seed) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  return static_cast<std::size_t>(StableHash64(seed, sample.bytes()) % k);
}

std::size_t AssignBucket(const SampleId& sample, std::size_t kd,
                         std::uint64_t seed) {
  // Same hash as DPA so that FA with d = 1 reproduces the DPA split.
  return AssignPartitionDpa(sample, kd, seed);
}

namespace {

std::vector<std::size_t> SpreadOffsets(std::size_t kd, std::size_t d,
                                       std::uint64_t seed) {
  std::vector<std::size_t> pool(kd - 1);
  std::iota(pool.begin(), pool.end(), std::size_t{1});
  Rng rng(Mix64(seed ^ 0x5370726561644f66ULL));
  std::vector<std::size_t> offsets{0};
  for (std::size_t j = 0; j + 1 < d; ++j) {
    const std::size_t pick = j + rng.Below(pool.size() - j);
    std::swap(pool[j], pool[pick]);
    offsets.push_back(pool[j]);
  }
  return offsets;
}

void CheckSpreadArgs(std::size_t k, std::size_t d) {
  if (k == 0 || d == 0) {
    throw Error(ErrorCode::kInvalidArgument, "k and d must be >= 1");
  }
}

}  // namespace

std::vector<std::size_t> Spread(std::size_t bucket, std::size_t k,
                                std::size_t d, std::uint64_t seed) {
  CheckSpreadArgs(k, d);
  const std::size_t kd = k * d;
  if (bucket >= kd) {
    throw Error(ErrorCode::kInvalidArgument, "bucket out of range");
  }
  if (d == 1) return {bucket};
  std::vector<std::size_t> out;
  for (std::size_t offset : SpreadOffsets(kd, d, seed)) {
    out.push_back((bucket + offset) % kd);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SpreadMap BuildSpreadMap(std::size_t k, std::size_t d, std::uint64_t seed) {
  CheckSpreadArgs(k, d);
  const std::size_t kd = k * d;
  SpreadMap map(kd);
  if (d == 1) return IdentitySpread(kd);
  const auto offsets = SpreadOffsets(kd, d, seed);
  for (std::size_t b = 0; b < kd; ++b) {
    for (std::size_t offset : offsets) map[b].push_back((b + offset) % kd);
    std::sort(map[b].begin(), map[b].end());
  }
  return map;
}

SpreadMap IdentitySpread(std::size_t num_models) {
  SpreadMap map(num_models);
  for (std::size_t i = 0; i < num_models; ++i) map[i] = {i};
  return map;
}

PartitionPlan BuildPlan(Scheme scheme, std::size_t k, std::size_t d,
                        std::uint64_t seed,
                        const std::vector<SampleId>& sample_ids) {
  CheckSpreadArgs(k, d);
  if (scheme == Scheme::kDpa && d != 1) {
    throw Error(ErrorCode::kInvalidArgument, "DPA requires d = 1");
  }

  PartitionPlan plan;
  plan.scheme = scheme;
  plan.k = k;
  plan.d = d;
  plan.seed = seed;
  plan.num_models = scheme == Scheme::kDpa ? k : k * d;
  for (std::size_t i = 0; i < plan.num_models; ++i) {
    ModelSlot slot;
    slot.index = i;
    slot.seed = seed;
    slot.partition = i;
    if (scheme == Scheme::kDpaStar) {
      slot.partition = i / d;
      slot.submodel = i % d;
      slot.seed = seed ^ static_cast<std::uint64_t>(slot.submodel);
    }
    plan.models.push_back(std::move(slot));
  }
  if (scheme == Scheme::kFa) plan.spread = BuildSpreadMap(k, d, seed);

  plan.assignment.reserve(sample_ids.size());
  for (const SampleId& id : sample_ids) {
    std::vector<std::size_t> targets;
    switch (scheme) {
      case Scheme::kDpa:
        targets = {AssignPartitionDpa(id, k, seed)};
        break;
      case Scheme::kFa:
        targets = plan.spread[AssignBucket(id, k * d, seed)];
        break;
      case Scheme::kDpaStar: {
        const std::size_t p = AssignPartitionDpa(id, k, seed);
        for (std::size_t s = 0; s < d; ++s) targets.push_back(p * d + s);
        break;
      }
    }
    for (std::size_t m : targets) plan.models[m].samples.push_back(id.bytes());
    plan.assignment.push_back(std::move(targets));
  }
  return plan;
}

std::string PlanToJson(const PartitionPlan& plan) {
  nlohmann::ordered_json doc;
  doc["scheme"] = SchemeName(plan.scheme);
  doc["k"] = plan.k;
  doc["d"] = plan.d;
  doc["seed"] = plan.seed;
  doc["num_models"] = plan.num_models;
  if (plan.scheme == Scheme::kFa) doc["spread"] = plan.spread;
  auto models = nlohmann::ordered_json::array();
  for (const ModelSlot& slot : plan.models) {
    nlohmann::ordered_json m;
    m["index"] = slot.index;
    m["partition"] = slot.partition;
    if (plan.scheme == Scheme::kDpaStar) m["submodel"] = slot.submodel;
    m["seed"] = slot.seed;
    m["samples"] = slot.samples;
    models.push_back(std::move(m));
  }
  doc["models"] = std::move(models);
  return doc.dump(2) + "\n";
}

PartitionPlan PlanFromJson(std::string_view json) {
  PartitionPlan plan;
  try {
    const auto doc = nlohmann::json::parse(json);
    plan.scheme = ParseScheme(doc.at("scheme").get<std::string>());
    plan.k = doc.at("k").get<std::size_t>();
    plan.d = doc.at("d").get<std::size_t>();
    plan.seed = doc.at("seed").get<std::uint64_t>();
    plan.num_models = doc.at("num_models").get<std::size_t>();
    if (doc.contains("spread")) {
      plan.spread = doc.at("spread").get<SpreadMap>();
    }
    for (const auto& m : doc.at("models")) {
      ModelSlot slot;
      slot.index = m.at("index").get<std::size_t>();
      slot.partition = m.at("partition").get<std::size_t>();
      slot.submodel = m.value("submodel", std::size_t{0});
      slot.seed = m.at("seed").get<std::uint64_t>();
      slot.samples = m.at("samples").get<std::vector<std::string>>();
      plan.models.push_back(std::move(slot));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("plan json: ") + e.what());
  }

  const std::size_t expected =
      plan.scheme == Scheme::kDpa ? plan.k : plan.k * plan.d;
  if (plan.k == 0 || plan.d == 0 || plan.num_models != expected ||
      plan.models.size() != plan.num_models ||
      (plan.scheme == Scheme::kDpa && plan.d != 1)) {
    throw Error(ErrorCode::kShapeMismatch, "plan json: inconsistent shape");
  }
  if (plan.scheme == Scheme::kFa) {
    if (plan.spread.empty()) {
      plan.spread = BuildSpreadMap(plan.k, plan.d, plan.seed);
    }
    if (plan.spread.size() != plan.num_models) {
      throw Error(ErrorCode::kShapeMismatch, "plan json: bad spread size");
    }
    for (const auto& models : plan.spread) {
      for (std::size_t m : models) {
        if (m >= plan.num_models) {
          throw Error(ErrorCode::kShapeMismatch,
                      "plan json: spread index out of range");
        }
      }
    }
  }
  return plan;
}

}  // namespace roe

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

#ifndef ROE_PARTITIONER_HPP_
#define ROE_PARTITIONER_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace roe {

enum class Scheme { kDpa, kFa, kDpaStar };

const char* SchemeName(Scheme scheme);  // "dpa", "fa", "dpa-star"
Scheme ParseScheme(std::string_view name);

// Opaque, non-empty training sample identifier.
class SampleId {
 public:
  explicit SampleId(std::string bytes);

  const std::string& bytes() const { return bytes_; }

  friend bool operator==(const SampleId&, const SampleId&) = default;

 private:
  std::string bytes_;
};

// bucket -> distinct model (partition) indices.
using SpreadMap = std::vector<std::vector<std::size_t>>;

std::size_t AssignPartitionDpa(const SampleId& sample, std::size_t k,
                               std::uint64_t seed);
std::size_t AssignBucket(const SampleId& sample, std::size_t kd,
                         std::uint64_t seed);

// The d partitions a bucket feeds, sorted ascending. Buckets are shifted by
// d distinct seed-derived offsets (offset 0 always among them), so every
// partition also receives exactly d buckets. d == 1 is the identity.
std::vector<std::size_t> Spread(std::size_t bucket, std::size_t k,
                                std::size_t d, std::uint64_t seed);

SpreadMap BuildSpreadMap(std::size_t k, std::size_t d, std::uint64_t seed);

// Identity bucket -> {bucket} map, i.e. the DPA adversary structure.
SpreadMap IdentitySpread(std::size_t num_models);

struct ModelSlot {
  std::size_t index = 0;
  std::size_t partition = 0;  // logical model (== index except for DPA*)
  std::size_t submodel = 0;   // DPA* only
  std::uint64_t seed = 0;     // training seed for the slot
  std::vector<std::string> samples;

  friend bool operator==(const ModelSlot&, const ModelSlot&) = default;
};

struct PartitionPlan {
  Scheme scheme = Scheme::kDpa;
  std::size_t k = 1;
  std::size_t d = 1;
  std::uint64_t seed = 0;
  std::size_t num_models = 1;  // container rows: k, k*d, k*d
  SpreadMap spread;            // FA only
  std::vector<ModelSlot> models;
  // sample position -> model indices, in input order.
  std::vector<std::vector<std::size_t>> assignment;

  // Number of models the certifier sees (k for DPA and DPA*, k*d for FA).
  std::size_t logical_models() const {
    return scheme == Scheme::kFa ? k * d : k;
  }

  friend bool operator==(const PartitionPlan&, const PartitionPlan&) = default;
};

PartitionPlan BuildPlan(Scheme scheme, std::size_t k, std::size_t d,
                        std::uint64_t seed,
                        const std::vector<SampleId>& sample_ids);

std::string PlanToJson(const PartitionPlan& plan);
PartitionPlan PlanFromJson(std::string_view json);

}  // namespace roe

#endif  // ROE_PARTITIONER_HPP_

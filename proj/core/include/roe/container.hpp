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

#ifndef ROE_CONTAINER_HPP_
#define ROE_CONTAINER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roe/election.hpp"

namespace roe {

// Binary logits container, all integers little-endian:
//   "ROEL" | u32 version (=1) | u64 n_samples | u32 num_models |
//   u32 num_classes | n_samples x ( u16 true_label |
//   num_models*num_classes f32, row-major )
inline constexpr std::array<char, 4> kContainerMagic = {'R', 'O', 'E', 'L'};
inline constexpr std::uint32_t kContainerVersion = 1;
inline constexpr std::size_t kContainerHeaderBytes = 24;

struct ContainerHeader {
  std::uint64_t n_samples = 0;
  std::uint32_t num_models = 0;
  std::uint32_t num_classes = 0;

  std::size_t record_bytes() const {
    return 2 + 4 * std::size_t{num_models} * num_classes;
  }
  std::size_t file_bytes() const {
    return kContainerHeaderBytes + n_samples * record_bytes();
  }
};

struct LogitsContainer {
  std::uint32_t num_models = 0;
  std::uint32_t num_classes = 0;
  std::vector<std::uint16_t> labels;
  std::vector<float> scores;  // n_samples * num_models * num_classes

  std::size_t size() const { return labels.size(); }
  std::span<const float> sample_scores(std::size_t i) const;
  LogitsTensor tensor(std::size_t i) const;

  friend bool operator==(const LogitsContainer&,
                         const LogitsContainer&) = default;
};

struct LabeledLogits {
  std::uint16_t label = 0;
  LogitsTensor logits;
};

std::string EncodeContainer(const LogitsContainer& container);
LogitsContainer DecodeContainer(std::span<const char> bytes);

void WriteContainer(const std::string& path, const LogitsContainer& container);
LogitsContainer LoadContainer(const std::string& path);

// Sequential record-by-record decoding. The total file length is checked
// against the header when the file is opened.
class ContainerReader {
 public:
  explicit ContainerReader(const std::string& path);

  const ContainerHeader& header() const { return header_; }
  std::uint64_t remaining() const { return header_.n_samples - consumed_; }

  // Decodes the next record; empty once all records are consumed.
  std::optional<LabeledLogits> Next();

 private:
  std::ifstream in_;
  ContainerHeader header_;
  std::uint64_t consumed_ = 0;
  std::vector<char> buffer_;
};

// Text import for small ensembles (num_models * num_classes <= 100). Each
// non-empty line is `label,v_0,...,v_{k*C-1}`; a first line starting with
// "label" is treated as a header.
inline constexpr std::size_t kCsvImportMaxValues = 100;
LogitsContainer ImportCsv(std::istream& in, std::uint32_t num_models,
                          std::uint32_t num_classes);

}  // namespace roe

#endif  // ROE_CONTAINER_HPP_

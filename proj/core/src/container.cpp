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

#include "roe/container.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <sstream>

namespace roe {

namespace {

template <typename T>
void PutLe(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff));
  }
}

template <typename T>
T GetLe(const char* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  return static_cast<T>(v);
}

void PutFloat(std::string& out, float value) {
  PutLe<std::uint32_t>(out, std::bit_cast<std::uint32_t>(value));
}

float GetFloat(const char* p) {
  return std::bit_cast<float>(GetLe<std::uint32_t>(p));
}

ContainerHeader ParseHeader(std::span<const char> bytes) {
  if (bytes.size() < kContainerHeaderBytes) {
    throw Error(ErrorCode::kTruncated, "container: truncated header");
  }
  if (std::memcmp(bytes.data(), kContainerMagic.data(), 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "container: bad magic");
  }
  const auto version = GetLe<std::uint32_t>(bytes.data() + 4);
  if (version != kContainerVersion) {
    throw Error(ErrorCode::kBadVersion,
                "container: unsupported version " + std::to_string(version));
  }
  ContainerHeader h;
  h.n_samples = GetLe<std::uint64_t>(bytes.data() + 8);
  h.num_models = GetLe<std::uint32_t>(bytes.data() + 16);
  h.num_classes = GetLe<std::uint32_t>(bytes.data() + 20);
  if (h.num_models == 0 || h.num_classes < 2) {
    throw Error(ErrorCode::kShapeMismatch,
                "container: need >= 1 model and >= 2 classes");
  }
  return h;
}

void CheckLength(const ContainerHeader& h, std::uintmax_t actual) {
  // Guard the multiplication against absurd sample counts.
  const std::uintmax_t limit =
      (UINTMAX_MAX - kContainerHeaderBytes) / h.record_bytes();
  if (h.n_samples > limit || actual < h.file_bytes()) {
    throw Error(ErrorCode::kTruncated, "container: file shorter than header "
                                       "declares");
  }
  if (actual > h.file_bytes()) {
    throw Error(ErrorCode::kTrailingData, "container: trailing bytes");
  }
}

// Decodes one record into (label, scores) and validates it.
std::uint16_t DecodeRecord(const ContainerHeader& h, const char* p,
                           std::vector<float>& scores) {
  const auto label = GetLe<std::uint16_t>(p);
  if (label >= h.num_classes) {
    throw Error(ErrorCode::kLabelOutOfRange,
                "container: label " + std::to_string(label) + " out of range");
  }
  const std::size_t count = std::size_t{h.num_models} * h.num_classes;
  p += 2;
  for (std::size_t j = 0; j < count; ++j, p += 4) {
    const float v = GetFloat(p);
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "container: non-finite logit");
    }
    scores.push_back(v);
  }
  return label;
}

LogitsTensor ToTensor(std::uint32_t models, std::uint32_t classes,
                      std::span<const float> values) {
  return LogitsTensor(models, classes,
                      std::vector<double>(values.begin(), values.end()));
}

}  // namespace

std::span<const float> LogitsContainer::sample_scores(std::size_t i) const {
  const std::size_t width = std::size_t{num_models} * num_classes;
  return {scores.data() + i * width, width};
}

LogitsTensor LogitsContainer::tensor(std::size_t i) const {
  return ToTensor(num_models, num_classes, sample_scores(i));
}

std::string EncodeContainer(const LogitsContainer& c) {
  const std::size_t width = std::size_t{c.num_models} * c.num_classes;
  if (c.scores.size() != c.labels.size() * width) {
    throw Error(ErrorCode::kShapeMismatch, "container: score count mismatch");
  }
  ContainerHeader h{c.labels.size(), c.num_models, c.num_classes};
  std::string out;
  out.reserve(h.file_bytes());
  out.append(kContainerMagic.data(), 4);
  PutLe(out, kContainerVersion);
  PutLe(out, h.n_samples);
  PutLe(out, h.num_models);
  PutLe(out, h.num_classes);
  for (std::size_t i = 0; i < c.labels.size(); ++i) {
    PutLe(out, c.labels[i]);
    for (float v : c.sample_scores(i)) PutFloat(out, v);
  }
  return out;
}

LogitsContainer DecodeContainer(std::span<const char> bytes) {
  const ContainerHeader h = ParseHeader(bytes);
  CheckLength(h, bytes.size());
  LogitsContainer c;
  c.num_models = h.num_models;
  c.num_classes = h.num_classes;
  c.labels.reserve(h.n_samples);
  c.scores.reserve(h.n_samples * h.num_models * h.num_classes);
  const char* p = bytes.data() + kContainerHeaderBytes;
  for (std::uint64_t i = 0; i < h.n_samples; ++i, p += h.record_bytes()) {
    c.labels.push_back(DecodeRecord(h, p, c.scores));
  }
  return c;
}

void WriteContainer(const std::string& path, const LogitsContainer& container) {
  const std::string bytes = EncodeContainer(container);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

LogitsContainer LoadContainer(const std::string& path) {
  ContainerReader reader(path);
  LogitsContainer c;
  c.num_models = reader.header().num_models;
  c.num_classes = reader.header().num_classes;
  while (auto record = reader.Next()) {
    c.labels.push_back(record->label);
    for (double v : record->logits.scores()) {
      c.scores.push_back(static_cast<float>(v));
    }
  }
  return c;
}

ContainerReader::ContainerReader(const std::string& path)
    : in_(path, std::ios::binary) {
  if (!in_) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot stat " + path);
  std::array<char, kContainerHeaderBytes> head{};
  in_.read(head.data(), static_cast<std::streamsize>(
                            std::min<std::uintmax_t>(size, head.size())));
  header_ = ParseHeader(std::span<const char>(
      head.data(), std::min<std::uintmax_t>(size, head.size())));
  CheckLength(header_, size);
  buffer_.resize(header_.record_bytes());
}

std::optional<LabeledLogits> ContainerReader::Next() {
  if (consumed_ == header_.n_samples) return std::nullopt;
  in_.read(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
  if (!in_) throw Error(ErrorCode::kTruncated, "container: short read");
  std::vector<float> scores;
  scores.reserve(std::size_t{header_.num_models} * header_.num_classes);
  const auto label = DecodeRecord(header_, buffer_.data(), scores);
  ++consumed_;
  return LabeledLogits{label, ToTensor(header_.num_models,
                                       header_.num_classes, scores)};
}

LogitsContainer ImportCsv(std::istream& in, std::uint32_t num_models,
                          std::uint32_t num_classes) {
  const std::size_t width = std::size_t{num_models} * num_classes;
  if (num_models == 0 || num_classes < 2) {
    throw Error(ErrorCode::kShapeMismatch, "csv: need >= 1 model, >= 2 classes");
  }
  if (width > kCsvImportMaxValues) {
    throw Error(ErrorCode::kInvalidArgument,
                "csv: import limited to num_models * num_classes <= 100");
  }
  LogitsContainer c;
  c.num_models = num_models;
  c.num_classes = num_classes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("label", 0) == 0) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    const std::string where = "csv line " + std::to_string(line_no);
    if (cells.size() != width + 1) {
      throw Error(ErrorCode::kShapeMismatch, where + ": expected " +
                                                 std::to_string(width + 1) +
                                                 " columns");
    }
    try {
      const unsigned long label = std::stoul(cells[0]);
      if (label >= num_classes) {
        throw Error(ErrorCode::kLabelOutOfRange, where + ": label out of range");
      }
      c.labels.push_back(static_cast<std::uint16_t>(label));
      for (std::size_t j = 1; j <= width; ++j) {
        const float v = std::stof(cells[j]);
        if (!std::isfinite(v)) {
          throw Error(ErrorCode::kNonFinite, where + ": non-finite logit");
        }
        c.scores.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParse, where + ": not a number");
    }
  }
  return c;
}

}  // namespace roe

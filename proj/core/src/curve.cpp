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

#include "roe/curve.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "json.hpp"
#include "roe/parallel.hpp"

namespace roe {

namespace {

nlohmann::ordered_json CertJson(CertValue v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, "curve: bad number '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t ParseInt(std::string_view s) {
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, "curve: bad integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<SampleCertificate> CertifyContainer(
    const LogitsContainer& container, const EnsembleScheme& scheme,
    std::size_t threads) {
  if (container.num_models != scheme.container_rows()) {
    throw Error(ErrorCode::kShapeMismatch,
                "container has " + std::to_string(container.num_models) +
                    " model rows, plan expects " +
                    std::to_string(scheme.container_rows()));
  }
  std::vector<SampleCertificate> out(container.size());
  ParallelFor(
      container.size(),
      [&](std::size_t i) {
        const LogitsTensor logits = scheme.Logical(container.tensor(i));
        out[i] = {container.labels[i],
                  RoeCertificate(logits, scheme.certifier())};
      },
      threads);
  return out;
}

std::vector<std::int64_t> DefaultBudgets(
    const std::vector<SampleCertificate>& certs) {
  std::int64_t top = 0;
  for (const auto& s : certs) {
    for (CertValue v : {s.report.cert, s.report.baseline_cert}) {
      if (v.is_finite()) top = std::max(top, v.value());
    }
  }
  std::vector<std::int64_t> budgets;
  for (std::int64_t b = 0; b <= top; ++b) budgets.push_back(b);
  return budgets;
}

std::vector<CurvePoint> CertifiedFractionCurve(
    const std::vector<SampleCertificate>& certs, const EnsembleScheme& scheme,
    const std::vector<std::int64_t>& budgets) {
  std::vector<std::int64_t> sorted = budgets;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const double n = static_cast<double>(certs.size());

  std::vector<CurvePoint> curve;
  for (bool roe : {false, true}) {
    const std::string method = scheme.MethodTag(roe);
    for (std::int64_t b : sorted) {
      if (b < 0) {
        throw Error(ErrorCode::kInvalidArgument, "curve: negative budget");
      }
      std::size_t hits = 0;
      for (const auto& s : certs) {
        const ClassId pred = roe ? s.report.c_pred : s.report.plurality_pred;
        const CertValue cert = roe ? s.report.cert : s.report.baseline_cert;
        if (pred == s.label && cert.Radius().AtLeast(b)) ++hits;
      }
      curve.push_back({b, certs.empty() ? 0.0 : static_cast<double>(hits) / n,
                       method});
    }
  }
  std::stable_sort(curve.begin(), curve.end(),
                   [](const CurvePoint& a, const CurvePoint& b) {
                     return a.method != b.method ? a.method < b.method
                                                 : a.budget < b.budget;
                   });
  return curve;
}

std::string CurveToCsv(const std::vector<CurvePoint>& curve) {
  std::string out = "method,B,certified_fraction\n";
  for (const auto& p : curve) {
    out += p.method + "," + std::to_string(p.budget) + "," +
           FormatDouble(p.certified_fraction) + "\n";
  }
  return out;
}

std::string CurveToJson(const std::vector<CurvePoint>& curve) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& p : curve) {
    nlohmann::ordered_json point;
    point["method"] = p.method;
    point["B"] = p.budget;
    point["certified_fraction"] = p.certified_fraction;
    doc.push_back(std::move(point));
  }
  return doc.dump(2) + "\n";
}

std::vector<CurvePoint> CurveFromCsv(std::string_view text) {
  std::vector<CurvePoint> curve;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "method,B,certified_fraction") {
    throw Error(ErrorCode::kParse, "curve csv: missing header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    if (first == std::string::npos || second == std::string::npos) {
      throw Error(ErrorCode::kParse, "curve csv: expected 3 columns");
    }
    std::string_view view(line);
    curve.push_back({ParseInt(view.substr(first + 1, second - first - 1)),
                     ParseDouble(view.substr(second + 1)),
                     line.substr(0, first)});
  }
  return curve;
}

std::vector<CurvePoint> CurveFromJson(std::string_view text) {
  std::vector<CurvePoint> curve;
  try {
    for (const auto& p : nlohmann::json::parse(text)) {
      curve.push_back({p.at("B").get<std::int64_t>(),
                       p.at("certified_fraction").get<double>(),
                       p.at("method").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("curve json: ") + e.what());
  }
  return curve;
}

std::string PredictionJsonLine(std::size_t sample, const RoeOutcome& outcome) {
  nlohmann::ordered_json line;
  line["sample"] = sample;
  line["c_pred"] = outcome.c_pred;
  line["c_sec"] = outcome.c_sec;
  line["round1"] = outcome.round1.counts;
  line["round2"] = {{"class_a", outcome.round2.class_a},
                    {"class_b", outcome.round2.class_b},
                    {"count_a", outcome.round2.count_a},
                    {"count_b", outcome.round2.count_b}};
  return line.dump();
}

std::string CertificateJsonLine(std::size_t sample,
                                const SampleCertificate& cert) {
  const CertificateReport& r = cert.report;
  nlohmann::ordered_json line;
  line["sample"] = sample;
  line["label"] = cert.label;
  line["c_pred"] = r.c_pred;
  line["c_sec"] = r.c_sec;
  line["cert_r1"] = CertJson(r.cert_r1);
  line["cert_r2"] = CertJson(r.cert_r2);
  line["cert"] = CertJson(r.cert);
  line["certified_radius"] = CertJson(r.certified_radius);
  line["plurality_pred"] = r.plurality_pred;
  line["baseline_cert"] = CertJson(r.baseline_cert);
  return line.dump();
}

}  // namespace roe

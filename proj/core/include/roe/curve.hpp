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

#ifndef ROE_CURVE_HPP_
#define ROE_CURVE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "roe/certifier.hpp"
#include "roe/container.hpp"
#include "roe/scheme.hpp"

namespace roe {

struct SampleCertificate {
  std::uint16_t label = 0;
  CertificateReport report;
};

// Certifies every sample of the container. Output order matches the
// container regardless of how the work is scheduled.
std::vector<SampleCertificate> CertifyContainer(
    const LogitsContainer& container, const EnsembleScheme& scheme,
    std::size_t threads);

struct CurvePoint {
  std::int64_t budget = 0;
  double certified_fraction = 0.0;
  std::string method;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

// 0 .. largest finite certificate seen across both aggregators.
std::vector<std::int64_t> DefaultBudgets(
    const std::vector<SampleCertificate>& certs);

// CF(B) = #{prediction == label and radius >= B} / n, for the plurality
// baseline and the run-off variant. Sorted by (method, B).
std::vector<CurvePoint> CertifiedFractionCurve(
    const std::vector<SampleCertificate>& certs, const EnsembleScheme& scheme,
    const std::vector<std::int64_t>& budgets);

std::string CurveToCsv(const std::vector<CurvePoint>& curve);
std::string CurveToJson(const std::vector<CurvePoint>& curve);
std::vector<CurvePoint> CurveFromCsv(std::string_view text);
std::vector<CurvePoint> CurveFromJson(std::string_view text);

// One JSON object per line, as emitted by the `predict` and `certify`
// subcommands.
std::string PredictionJsonLine(std::size_t sample, const RoeOutcome& outcome);
std::string CertificateJsonLine(std::size_t sample,
                                const SampleCertificate& cert);

}  // namespace roe

#endif  // ROE_CURVE_HPP_

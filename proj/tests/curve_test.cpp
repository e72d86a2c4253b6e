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

#include <atomic>
#include <map>
#include <stdexcept>

#include "gtest/gtest.h"
#include "json.hpp"
#include "roe/parallel.hpp"
#include "roe/synth.hpp"

namespace roe {
namespace {

LogitsContainer Synth(std::uint32_t models, std::uint32_t classes,
                      std::uint64_t n, double agreement, std::uint64_t seed) {
  return SynthGenerate({.num_models = models, .num_classes = classes,
                        .n_samples = n, .agreement = agreement, .seed = seed});
}

std::map<std::string, std::vector<CurvePoint>> ByMethod(
    const std::vector<CurvePoint>& curve) {
  std::map<std::string, std::vector<CurvePoint>> out;
  for (const auto& p : curve) out[p.method].push_back(p);
  return out;
}

double Accuracy(const std::vector<SampleCertificate>& certs, bool roe) {
  std::size_t hits = 0;
  for (const auto& s : certs) {
    hits += (roe ? s.report.c_pred : s.report.plurality_pred) == s.label;
  }
  return static_cast<double>(hits) / static_cast<double>(certs.size());
}

TEST(CurveTest, ZeroBudgetIsCleanAccuracy) {
  const auto scheme = EnsembleScheme::Dpa(9);
  const auto certs = CertifyContainer(Synth(9, 4, 300, 0.6, 1), scheme, 2);
  const auto curve = ByMethod(CertifiedFractionCurve(certs, scheme, {0, 1}));
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_DOUBLE_EQ(curve.at("dpa").front().certified_fraction,
                   Accuracy(certs, false));
  EXPECT_DOUBLE_EQ(curve.at("dpa+roe").front().certified_fraction,
                   Accuracy(certs, true));
}

TEST(CurveTest, BudgetBeyondEnsembleCertifiesNothing) {
  const std::size_t k = 7;
  const auto scheme = EnsembleScheme::Dpa(k);
  const auto certs = CertifyContainer(Synth(k, 3, 100, 1.0, 2), scheme, 1);
  // Unanimous ensembles get the largest certificates possible.
  for (const auto& p : CertifiedFractionCurve(certs, scheme, {0, k / 2, k})) {
    if (p.budget == static_cast<std::int64_t>(k)) {
      EXPECT_EQ(p.certified_fraction, 0.0) << p.method;
    } else if (p.budget == 0) {
      EXPECT_EQ(p.certified_fraction, 1.0) << p.method;
    }
  }
}

TEST(CurveTest, NonIncreasingAndSorted) {
  for (const auto& scheme :
       {EnsembleScheme::Dpa(10), EnsembleScheme::Fa(5, 2, std::uint64_t{3}),
        EnsembleScheme::DpaStar(5, 2)}) {
    const auto certs = CertifyContainer(
        Synth(static_cast<std::uint32_t>(scheme.container_rows()), 4, 200, 0.7,
              4),
        scheme, 2);
    const auto budgets = DefaultBudgets(certs);
    ASSERT_FALSE(budgets.empty());
    EXPECT_EQ(budgets.front(), 0);
    const auto curve = CertifiedFractionCurve(certs, scheme, {3, 0, 1, 1, 2});
    ASSERT_EQ(curve.size(), 8u);  // duplicates collapse
    for (std::size_t i = 1; i < curve.size(); ++i) {
      const auto& a = curve[i - 1];
      const auto& b = curve[i];
      EXPECT_TRUE(a.method < b.method ||
                  (a.method == b.method && a.budget < b.budget));
      if (a.method == b.method) {
        EXPECT_GE(a.certified_fraction, b.certified_fraction);
      }
    }
    for (const auto& p : curve) {
      EXPECT_GE(p.certified_fraction, 0.0);
      EXPECT_LE(p.certified_fraction, 1.0);
    }
  }
}

TEST(CurveTest, MethodTags) {
  EXPECT_EQ(EnsembleScheme::Dpa(2).MethodTag(true), "dpa+roe");
  EXPECT_EQ(EnsembleScheme::Fa(2, 2, std::uint64_t{0}).MethodTag(false), "fa");
  EXPECT_EQ(EnsembleScheme::DpaStar(2, 2).MethodTag(true), "dpa*+roe");
}

TEST(CurveTest, ShapeMismatch) {
  try {
    CertifyContainer(Synth(4, 3, 5, 0.8, 0), EnsembleScheme::Dpa(5), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
  const auto certs =
      CertifyContainer(Synth(2, 2, 3, 0.8, 0), EnsembleScheme::Dpa(2), 1);
  EXPECT_THROW(CertifiedFractionCurve(certs, EnsembleScheme::Dpa(2), {-1}),
               Error);
}

TEST(CurveTest, EmptyContainer) {
  const auto scheme = EnsembleScheme::Dpa(3);
  const auto certs = CertifyContainer(Synth(3, 2, 0, 0.8, 0), scheme, 2);
  EXPECT_TRUE(certs.empty());
  EXPECT_EQ(DefaultBudgets(certs), (std::vector<std::int64_t>{0}));
  for (const auto& p : CertifiedFractionCurve(certs, scheme, {0})) {
    EXPECT_EQ(p.certified_fraction, 0.0);
  }
}

TEST(CurveSerializationTest, RoundTrips) {
  const auto scheme = EnsembleScheme::Fa(4, 2, std::uint64_t{9});
  const auto certs = CertifyContainer(Synth(8, 5, 150, 0.55, 5), scheme, 3);
  const auto curve =
      CertifiedFractionCurve(certs, scheme, DefaultBudgets(certs));
  const auto csv = CurveToCsv(curve);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "method,B,certified_fraction");
  EXPECT_EQ(CurveFromCsv(csv), curve);
  EXPECT_EQ(CurveToCsv(CurveFromCsv(csv)), csv);
  EXPECT_EQ(CurveFromJson(CurveToJson(curve)), curve);
  EXPECT_THROW(CurveFromCsv("B,method\n"), Error);
  EXPECT_THROW(CurveFromCsv("method,B,certified_fraction\nfa,x,0.5\n"), Error);
  EXPECT_THROW(CurveFromJson("{"), Error);
}

TEST(JsonLinesTest, CertificateLine) {
  SampleCertificate s;
  s.label = 1;
  s.report.c_pred = 1;
  s.report.c_sec = 0;
  s.report.cert_r1 = CertValue::Infinite();
  s.report.cert_r2 = CertValue(2);
  s.report.cert = CertValue(2);
  s.report.certified_radius = CertValue(1);
  s.report.plurality_pred = 1;
  s.report.baseline_cert = CertValue(2);
  const auto j = nlohmann::json::parse(CertificateJsonLine(4, s));
  EXPECT_EQ(j["sample"], 4);
  EXPECT_EQ(j["cert_r1"], "inf");
  EXPECT_EQ(j["cert"], 2);
  EXPECT_EQ(j["certified_radius"], 1);
}

TEST(JsonLinesTest, PredictionLine) {
  const LogitsTensor logits(3, 2, {1, 0, 1, 0, 0, 1});
  const auto j = nlohmann::json::parse(PredictionJsonLine(0, RoeElect(logits)));
  EXPECT_EQ(j["c_pred"], 0);
  EXPECT_EQ(j["round1"], nlohmann::json::array({2, 1}));
  EXPECT_EQ(j["round2"]["count_a"], 2);
}

TEST(ParallelForTest, ResultsIndependentOfThreadCount) {
  const auto scheme = EnsembleScheme::Dpa(6);
  const auto container = Synth(6, 3, 120, 0.65, 6);
  const auto one = CertifyContainer(container, scheme, 1);
  const auto many = CertifyContainer(container, scheme, 4);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(CertificateJsonLine(i, one[i]), CertificateJsonLine(i, many[i]));
  }
}

TEST(ParallelForTest, VisitsEveryIndexAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  ParallelFor(hits.size(), [&](std::size_t i) { ++hits[i]; }, 3);
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(ParallelFor(
                   10,
                   [](std::size_t i) {
                     if (i == 7) throw std::runtime_error("boom");
                   },
                   2),
               std::runtime_error);
  ParallelFor(0, [](std::size_t) { FAIL(); }, 2);
}

}  // namespace
}  // namespace roe

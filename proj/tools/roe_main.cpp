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

// roe: partition planning, run-off election prediction and poisoning
// certificates for ensemble classifiers.
//
// Exit codes: 0 ok, 2 validation failure, 3 soundness violation (verify).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "roe/container.hpp"
#include "roe/curve.hpp"
#include "roe/parallel.hpp"
#include "roe/partitioner.hpp"
#include "roe/scheme.hpp"
#include "roe/synth.hpp"
#include "roe/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitViolation = 3;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw roe::Error(roe::ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or stdout when it is empty or "-".
void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw roe::Error(roe::ErrorCode::kIo, "cannot open " + path);
  out << text;
}

std::vector<roe::SampleId> ReadIds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw roe::Error(roe::ErrorCode::kIo, "cannot open " + path);
  std::vector<roe::SampleId> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) ids.emplace_back(line);
  }
  return ids;
}

struct SchemeFlags {
  std::string scheme = "dpa";
  std::size_t k = 1;
  std::size_t d = 1;
  std::uint64_t seed = 0;
};

void AddSchemeFlags(CLI::App* cmd, SchemeFlags& f) {
  cmd->add_option("--scheme", f.scheme, "dpa | fa | dpa-star")
      ->check(CLI::IsMember({"dpa", "fa", "dpa-star"}));
  cmd->add_option("--k", f.k, "partition count")->check(CLI::PositiveNumber);
  cmd->add_option("--d", f.d, "FA spread degree / DPA* submodels")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "hash / PRNG seed");
}

roe::PartitionPlan LoadPlan(const std::string& path) {
  return roe::PlanFromJson(ReadFile(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run-off election aggregation and data-poisoning certificates"};
  app.require_subcommand(1);

  // plan
  SchemeFlags plan_flags;
  std::string ids_file, plan_out;
  auto* plan_cmd = app.add_subcommand("plan", "Emit a partition plan");
  AddSchemeFlags(plan_cmd, plan_flags);
  plan_cmd->add_option("--ids-file", ids_file, "newline-delimited sample ids")
      ->required();
  plan_cmd->add_option("--out", plan_out, "output JSON (default stdout)");

  // predict
  std::string predict_logits, predict_plan, predict_out;
  auto* predict_cmd =
      app.add_subcommand("predict", "Run-off election per test sample");
  predict_cmd->add_option("--logits", predict_logits, "logits container")
      ->required();
  predict_cmd->add_option("--plan", predict_plan,
                          "plan JSON (needed to average DPA* submodels)");
  predict_cmd->add_option("--out", predict_out, "JSON lines (default stdout)");

  // certify
  std::string certify_logits, certify_plan, certify_out;
  auto* certify_cmd =
      app.add_subcommand("certify", "Per-sample poisoning certificates");
  certify_cmd->add_option("--logits", certify_logits, "logits container")
      ->required();
  certify_cmd->add_option("--plan", certify_plan, "plan JSON")->required();
  certify_cmd->add_option("--out", certify_out, "JSON lines (default stdout)");

  // curve
  std::string curve_logits, curve_plan, curve_out, curve_format = "csv";
  std::vector<std::int64_t> curve_budgets;
  auto* curve_cmd =
      app.add_subcommand("curve", "Certified-fraction curves per budget");
  curve_cmd->add_option("--logits", curve_logits, "logits container")
      ->required();
  curve_cmd->add_option("--plan", curve_plan, "plan JSON")->required();
  curve_cmd->add_option("--budgets", curve_budgets,
                        "budgets B (default 0..max finite certificate)")
      ->delimiter(',');
  curve_cmd->add_option("--format", curve_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  curve_cmd->add_option("--out", curve_out, "output file (default stdout)");

  // synth
  roe::SynthConfig synth;
  std::string synth_out;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic logits container");
  synth_cmd->add_option("--k", synth.num_models, "model rows per sample")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--c", synth.num_classes, "classes")
      ->check(CLI::Range(2, 65535));
  synth_cmd->add_option("--n", synth.n_samples, "samples");
  synth_cmd->add_option("--agreement", synth.agreement,
                        "probability a model favors the true class")
      ->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--seed", synth.seed, "PRNG seed");
  synth_cmd->add_option("--out", synth_out, "container path")->required();

  // verify
  SchemeFlags verify_flags;
  verify_flags.k = 3;
  std::size_t trials = 100;
  std::size_t verify_classes = 3;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Check certificates against the exhaustive adversary");
  AddSchemeFlags(verify_cmd, verify_flags);
  verify_cmd->add_option("--trials", trials, "random instances");
  verify_cmd->add_option("--c", verify_classes, "classes")
      ->check(CLI::Range(2, 4));

  // import-csv
  std::string csv_in, csv_out;
  std::uint32_t csv_models = 1, csv_classes = 2;
  auto* csv_cmd = app.add_subcommand(
      "import-csv", "Convert a small CSV logits table into a container");
  csv_cmd->add_option("--in", csv_in, "CSV file")->required();
  csv_cmd->add_option("--models", csv_models, "model rows per sample")
      ->required();
  csv_cmd->add_option("--classes", csv_classes, "classes")->required();
  csv_cmd->add_option("--out", csv_out, "container path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*plan_cmd) {
      const auto plan = roe::BuildPlan(roe::ParseScheme(plan_flags.scheme),
                                       plan_flags.k, plan_flags.d,
                                       plan_flags.seed, ReadIds(ids_file));
      Emit(plan_out, roe::PlanToJson(plan));
    } else if (*predict_cmd) {
      roe::ContainerReader reader(predict_logits);
      std::optional<roe::EnsembleScheme> scheme;
      if (!predict_plan.empty()) {
        scheme = roe::EnsembleScheme::FromPlan(LoadPlan(predict_plan));
      }
      std::string out;
      std::size_t i = 0;
      while (auto record = reader.Next()) {
        const auto logits =
            scheme ? scheme->Logical(record->logits) : record->logits;
        out += roe::PredictionJsonLine(i++, roe::RoeElect(logits)) + "\n";
      }
      Emit(predict_out, out);
    } else if (*certify_cmd) {
      const auto scheme =
          roe::EnsembleScheme::FromPlan(LoadPlan(certify_plan));
      const auto certs = roe::CertifyContainer(
          roe::LoadContainer(certify_logits), scheme, roe::ThreadCount());
      std::string out;
      for (std::size_t i = 0; i < certs.size(); ++i) {
        out += roe::CertificateJsonLine(i, certs[i]) + "\n";
      }
      Emit(certify_out, out);
    } else if (*curve_cmd) {
      const auto scheme = roe::EnsembleScheme::FromPlan(LoadPlan(curve_plan));
      const auto certs = roe::CertifyContainer(
          roe::LoadContainer(curve_logits), scheme, roe::ThreadCount());
      const auto budgets =
          curve_budgets.empty() ? roe::DefaultBudgets(certs) : curve_budgets;
      const auto curve = roe::CertifiedFractionCurve(certs, scheme, budgets);
      Emit(curve_out, curve_format == "json" ? roe::CurveToJson(curve)
                                             : roe::CurveToCsv(curve));
    } else if (*synth_cmd) {
      roe::WriteContainer(synth_out, roe::SynthGenerate(synth));
    } else if (*verify_cmd) {
      const auto kind = roe::ParseScheme(verify_flags.scheme);
      if (kind == roe::Scheme::kDpa && verify_flags.d != 1) {
        throw roe::Error(roe::ErrorCode::kInvalidArgument, "DPA requires d = 1");
      }
      roe::Rng rng(verify_flags.seed);
      std::size_t violations = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const auto scheme =
            kind == roe::Scheme::kDpa
                ? roe::EnsembleScheme::Dpa(verify_flags.k)
            : kind == roe::Scheme::kFa
                ? roe::EnsembleScheme::Fa(verify_flags.k, verify_flags.d,
                                          rng.Next())
                : roe::EnsembleScheme::DpaStar(verify_flags.k, verify_flags.d);
        const auto rows = roe::RandomLogits(rng, scheme.container_rows(),
                                            verify_classes, t % 2 == 0);
        const auto trial = roe::RunSoundnessTrial(scheme, rows);
        if (!trial.sound) ++violations;
        std::cout << roe::DescribeTrial(t, trial) << "\n";
      }
      std::cout << "violations: " << violations << " / " << trials << "\n";
      if (violations > 0) return kExitViolation;
    } else if (*csv_cmd) {
      std::ifstream in(csv_in);
      if (!in) throw roe::Error(roe::ErrorCode::kIo, "cannot open " + csv_in);
      roe::WriteContainer(csv_out, roe::ImportCsv(in, csv_models, csv_classes));
    }
  } catch (const roe::Error& e) {
    std::cerr << "error [" << roe::ErrorCodeName(e.code()) << "]: " << e.what()
              << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

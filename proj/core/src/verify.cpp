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

#include "roe/verify.hpp"

#include <sstream>

namespace roe {

LogitsTensor RandomLogits(Rng& rng, std::size_t num_models,
                          std::size_t num_classes, bool integer_scores) {
  std::vector<double> scores(num_models * num_classes);
  for (double& v : scores) {
    v = integer_scores ? static_cast<double>(rng.Below(4)) : rng.Unit();
  }
  return LogitsTensor(num_models, num_classes, std::move(scores));
}

SoundnessTrial RunSoundnessTrial(const EnsembleScheme& scheme,
                                 const LogitsTensor& rows) {
  const LogitsTensor logits = scheme.Logical(rows);
  const AdversaryView view = scheme.Adversary();
  SoundnessTrial trial;
  trial.report = RoeCertificate(logits, scheme.certifier());
  trial.attack = MinAttackBudget(logits, view,
                                 static_cast<int>(view.control_units()));
  trial.sound = !trial.attack.changed ||
                trial.report.cert <= CertValue(trial.attack.budget);
  return trial;
}

std::string DescribeTrial(std::size_t index, const SoundnessTrial& trial) {
  std::ostringstream os;
  os << "trial " << index << ": c_pred=" << trial.report.c_pred
     << " cert=" << trial.report.cert
     << " radius=" << trial.report.certified_radius << " oracle_min=";
  if (trial.attack.changed) {
    os << trial.attack.budget;
  } else {
    os << "none";
  }
  os << (trial.sound ? " sound" : " VIOLATION");
  return os.str();
}

}  // namespace roe

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

#ifndef ROE_SCHEME_HPP_
#define ROE_SCHEME_HPP_

#include <memory>
#include <string>

#include "roe/certifier.hpp"
#include "roe/election.hpp"
#include "roe/oracle.hpp"
#include "roe/partitioner.hpp"

namespace roe {

// Binds an ensemble scheme to its container layout, certificate routines
// and adversary structure.
class EnsembleScheme {
 public:
  static EnsembleScheme Dpa(std::size_t k);
  static EnsembleScheme Fa(std::size_t k, std::size_t d, SpreadMap spread);
  static EnsembleScheme Fa(std::size_t k, std::size_t d, std::uint64_t seed);
  static EnsembleScheme DpaStar(std::size_t k, std::size_t d);
  static EnsembleScheme FromPlan(const PartitionPlan& plan);

  Scheme scheme() const { return scheme_; }
  std::size_t k() const { return k_; }
  std::size_t d() const { return d_; }

  // Rows stored per sample in a container.
  std::size_t container_rows() const;
  // Models the election runs over (DPA* groups averaged).
  std::size_t logical_models() const;

  // Container rows -> logical ensemble. Throws kShapeMismatch on a row
  // count that does not match the scheme.
  LogitsTensor Logical(const LogitsTensor& rows) const;

  const VoteCertifier& certifier() const { return *certifier_; }
  AdversaryView Adversary() const;

  // "dpa" / "fa" / "dpa*", with "+roe" for the run-off variant.
  std::string MethodTag(bool roe) const;

 private:
  EnsembleScheme(Scheme scheme, std::size_t k, std::size_t d,
                 SpreadMap spread);

  Scheme scheme_;
  std::size_t k_;
  std::size_t d_;
  SpreadMap spread_;  // FA only
  std::shared_ptr<const VoteCertifier> certifier_;
};

}  // namespace roe

#endif  // ROE_SCHEME_HPP_

// Copyright 2026 The stabctx Authors
//
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabctx/mub_phase.hpp"

namespace stabctx {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20260101;
  std::size_t trials = 1000;
  unsigned threads = 1;
  /// Replaces the witness facet in the bijection check for this facet's p.
  std::optional<FacetVector> inject_facet;
  /// Criterion ids to run; empty runs all nine.
  std::vector<int> only;
};

inline constexpr int kCriterionCount = 9;

CriterionResult run_criterion(int id, const AcceptanceOptions& options);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  [n] title: detail (t s)" or "FAIL  ...".
std::string format_line(const CriterionResult& r, bool with_time = true);

/// Omits wall-clock time so reports are reproducible.
nlohmann::json to_json(const CriterionResult& r);
nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace stabctx

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

#include <ostream>
#include <string>
#include <vector>

#include "stabctx/mub_phase.hpp"

namespace stabctx {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitTimeout = 3,
};

/// Named state ("strange", "tstate", "mixed"), inline JSON matrix, or a path
/// to a file holding one. JSON is row-major [[re, im], ...], either flat with
/// p*p entries or nested as p rows. Throws std::invalid_argument when malformed.
DensityMatrix parse_state(const std::string& spec, std::uint32_t p);

/// Comma-separated facet entries ("0,1,2,0"); p is inferred from the length.
FacetVector parse_facet_vector(const std::string& text);

/// Runs the command line `args` (args[0] is the program name). Writes results
/// to `out` unless --output is given, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stabctx

// Copyright 2026 The petriplan Authors
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


// Command-line driver: generate, analyze, check, plan, serve and bench.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace petriplan {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
  kExitOk = 0,
  /// check and plan: the relaxation proves the goal unreachable.
  kExitInfeasible = 1,
  kExitError = 2,
  /// plan: horizon or solver limit reached.
  kExitLimit = 3,
};

/// args excludes the program name.
int runCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace petriplan

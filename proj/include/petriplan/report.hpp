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


// Structured and human-readable renderings of analysis and planning results.
// Digests hold only deterministic fields; reports add timings and counters.

#pragma once

#include <string>

#include "petriplan/planner.hpp"
#include "petriplan/problem_json.hpp"

namespace petriplan::json {

OrderedJson planToJson(const Plan& plan);
OrderedJson explanationToJson(const Problem& p, const Explanation& e);
OrderedJson timingsToJson(const StageTimings& t);
OrderedJson invariantsToJson(const Problem& p,
                             const std::vector<MutexGroup>& groups);
OrderedJson reachToJson(const Problem& p, const ReachableSets& sets);

/// Status, plan or explanation, and detail.
OrderedJson outcomeDigest(const Problem& p, const PlanOutcome& o);
/// The digest plus lower bound, stage timings and solver counters.
OrderedJson outcomeReport(const Problem& p, const PlanOutcome& o);

std::string outcomeText(const Problem& p, const PlanOutcome& o);

}  // namespace petriplan::json

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


// Sequential planning sessions: problem updates, incremental re-solving over
// a long-lived solver, and an append-only journal.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "petriplan/planner.hpp"
#include "petriplan/problem_json.hpp"

namespace petriplan {

/// Deletes goal conditions by index, then appends new ones.
struct GoalChange {
  std::vector<Condition> add;
  std::vector<std::size_t> del;

  bool operator==(const GoalChange&) const = default;
};

/// Global state constraints for every step after the initial one.
struct AddConstraints {
  std::vector<Condition> constraints;

  bool operator==(const AddConstraints&) const = default;
};

using Update = std::variant<GoalChange, AddConstraints>;

class UpdateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The problem after one update. Throws UpdateError when the update does
/// not fit p.
Problem compose(const Problem& p, const Update& u);

json::OrderedJson updateToJson(const Problem& p, const Update& u);
/// Throws UpdateError on malformed input or unknown names.
Update updateFromJson(const Problem& p, const json::Json& node);

/// `count` updates alternating goal changes and constraint additions,
/// deterministic in `seed`. Constraints are satisfied by the initial state.
std::vector<Update> genUpdateSequence(const Problem& base, std::uint64_t seed,
                                      int count = 30);

struct SessionOptions {
  PlannerOptions planner;
  /// Journal file; empty keeps the journal in memory only.
  std::string journalPath;
};

class Session {
 public:
  Session(std::string id, Problem p0, SessionOptions opts = {});

  const std::string& id() const { return id_; }
  int round() const { return round_; }
  const Problem& problem() const { return problem_; }
  const Analysis& analysis() const { return *analysis_; }
  const PlanSearch& search() const { return *search_; }
  const std::optional<PlanOutcome>& lastOutcome() const { return last_; }

  /// Leaves the session unchanged when it throws.
  GoalStatus apply(const Update& u);
  PlanOutcome solve();

  /// One JSON record per line.
  const std::vector<std::string>& journal() const { return journal_; }
  std::string journalText() const;

  /// Round, problem and last outcome digest.
  json::OrderedJson digest() const;
  /// Round, goal, invariants, last outcome and explanations.
  json::OrderedJson state() const;

  /// Rebuilds a session by re-running every record. Throws std::runtime_error
  /// on a malformed journal or when a re-run outcome differs from the
  /// recorded one.
  static std::unique_ptr<Session> replay(const std::string& journalText,
                                         SessionOptions opts = {});

 private:
  void record(json::OrderedJson rec);

  std::string id_;
  int round_ = 0;
  Problem problem_;
  SessionOptions opts_;
  std::unique_ptr<Analysis> analysis_;
  std::unique_ptr<PlanSearch> search_;
  std::optional<PlanOutcome> last_;
  std::vector<std::string> journal_;
};

}  // namespace petriplan

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

// JSON mapping of the problem document. Shared by the session wire format,
// which embeds problems and conditions in request bodies.

#pragma once

#include <string>

#include "json.hpp"
#include "petriplan/problem.hpp"

namespace petriplan::json {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Integers become JSON numbers when they fit in 64 bits, everything else
/// a "p/q" string.
OrderedJson rationalToJson(const Rational& value);
Rational rationalFromJson(const Json& node, const std::string& path);

OrderedJson conditionToJson(const Problem& p, const Condition& cond);
/// Resolves variable names against `p`. Throws ParseError.
Condition conditionFromJson(const Problem& p, const Json& node,
                            const std::string& path);

OrderedJson problemToJson(const Problem& p);
/// Structural parse without validation. Throws ParseError.
Problem problemFromJson(const Json& node);

}  // namespace petriplan::json

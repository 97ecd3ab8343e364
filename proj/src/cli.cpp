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


#include "petriplan/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "petriplan/domains.hpp"
#include "petriplan/report.hpp"
#include "petriplan/service.hpp"
#include "petriplan/session.hpp"

namespace petriplan {

namespace {

using json::OrderedJson;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Problem readProblem(const std::string& path, std::istream& in) {
  std::stringstream text;
  if (path.empty() || path == "-") {
    text << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw UsageError("cannot open " + path);
    text << file.rdbuf();
  }
  return parseProblem(text.str());
}

void writeText(const std::string& path, const std::string& text,
               std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  file << text;
  if (!file) throw UsageError("cannot write " + path);
}

std::string relaxationName(GoalStatus s) {
  return s == GoalStatus::Infeasible ? "infeasible" : "possibly feasible";
}

std::string setText(const Problem& p, const StepSets& s) {
  std::ostringstream out;
  const char* sep = "";
  for (const auto& [v, value] : s.bindings) {
    out << sep << p.vars[v].name << '=';
    if (p.isBoolean(v)) {
      out << (value != 0 ? "true" : "false");
    } else {
      out << formatRational(value);
    }
    sep = " ";
  }
  for (VarId v = 0; v < s.intervals.size(); ++v) {
    if (p.isBoolean(v) || s.bindings.count(v)) continue;
    const Interval& iv = s.intervals[v];
    out << sep << p.vars[v].name << " in ["
        << (iv.lo ? formatRational(*iv.lo) : "-inf") << ", "
        << (iv.hi ? formatRational(*iv.hi) : "inf") << ']';
    sep = " ";
  }
  std::size_t off = 0;
  for (bool d : s.disabled) off += d;
  out << sep << "(" << off << " disabled)";
  return out.str();
}

// -------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string domain;
  int n = 1;
  int maxVal = 2;
  std::vector<int> goal;
  int trucks = 1;
  int packages = 1;
  int locations = 2;
  int capacity = 1;
  std::uint64_t seed = 1;
  int vars = 8;
  int actions = 10;
  std::string updatesFrom;
  int count = 30;
  std::string output;
};

int runGenerate(const GenerateArgs& a, std::istream& in, std::ostream& out) {
  if (a.domain == "updates") {
    const Problem base = readProblem(a.updatesFrom, in);
    std::string text;
    for (const auto& u : genUpdateSequence(base, a.seed, a.count)) {
      text += updateToJson(base, u).dump() + "\n";
    }
    writeText(a.output, text, out);
    return kExitOk;
  }
  Problem p;
  if (a.domain == "counters") {
    std::vector<int> goal = a.goal;
    if (goal.empty()) goal.assign(static_cast<std::size_t>(a.n), a.maxVal);
    p = genCounters(a.n, a.maxVal, goal);
  } else if (a.domain == "delivery") {
    p = genDelivery(a.trucks, a.packages, a.locations, a.capacity);
  } else if (a.domain == "strips") {
    p = genRandomStrips(a.seed, a.vars, a.actions);
  } else if (a.domain == "robot") {
    p = genRobot(a.n);
  } else {
    throw UsageError("unknown domain '" + a.domain + "'");
  }
  writeText(a.output, serializeProblem(p) + "\n", out);
  return kExitOk;
}

// -------------------------------------------------------------------------
// analyze / check

int runAnalyze(const Problem& p, unsigned threads, bool emitReach, bool report,
               std::ostream& out) {
  const Analysis a = analyzeProblem(p, threads, false);
  if (report) {
    OrderedJson j;
    j["places"] = p.vars.size();
    j["transitions"] = p.actions.size();
    j["relaxation"] = a.goalStatus == GoalStatus::Infeasible
                          ? "infeasible"
                          : "possibly_feasible";
    j["invariants"] = json::invariantsToJson(p, a.invariants);
    j["lower_bound"] = a.lowerBound;
    if (emitReach) {
      j["forward"] = json::reachToJson(p, a.forward);
      j["backward"] = json::reachToJson(p, a.backward);
    } else {
      j["forward_fixpoint"] = a.forward.fixpointStep;
      j["backward_fixpoint"] = a.backward.fixpointStep;
    }
    j["timings"] = json::timingsToJson(a.timings);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  std::size_t numeric = 0;
  for (const auto& v : p.vars) numeric += v.kind != VarKind::Boolean;
  out << "places: " << p.vars.size() << " (" << numeric
      << " numeric), transitions: " << p.actions.size() << '\n';
  out << "relaxation: " << relaxationName(a.goalStatus) << '\n';
  out << "invariants: " << a.invariants.size()
      << (a.invariants.size() == 1 ? " group\n" : " groups\n");
  for (const auto& g : a.invariants) {
    out << "  "
        << (g.kind == MutexGroup::Kind::ExactlyOne ? "exactly one of"
                                                   : "at most one of");
    for (auto v : g.members) out << ' ' << p.vars[v].name;
    out << '\n';
  }
  auto fixpoint = [](const ReachableSets& r) {
    return r.capped ? std::string("capped at ") +
                          std::to_string(r.perStep.size() - 1)
                    : "fixpoint at " + std::to_string(r.fixpointStep);
  };
  out << "forward reachability: " << fixpoint(a.forward) << '\n';
  out << "backward reachability: " << fixpoint(a.backward) << '\n';
  out << "horizon lower bound: " << a.lowerBound << '\n';
  if (emitReach) {
    for (std::size_t k = 0; k < a.forward.perStep.size(); ++k) {
      out << "  F" << k << ": " << setText(p, a.forward.perStep[k]) << '\n';
    }
    for (std::size_t k = 0; k < a.backward.perStep.size(); ++k) {
      out << "  B" << k << ": " << setText(p, a.backward.perStep[k]) << '\n';
    }
  }
  return kExitOk;
}

int runCheck(const Problem& p, bool report, std::ostream& out) {
  const PetriNet net = buildNet(p);
  const RelaxedSystem sys = buildRelaxedSystem(net, p.constraints);
  const GoalStatus status = checkGoalReachable(sys, p.goal);
  std::optional<Explanation> expl;
  if (status == GoalStatus::Infeasible) {
    expl = explainInfeasibility(sys, p.goal);
  }
  if (report) {
    OrderedJson j;
    j["relaxation"] =
        status == GoalStatus::Infeasible ? "infeasible" : "possibly_feasible";
    if (expl) j["explanation"] = json::explanationToJson(p, *expl);
    out << j.dump(2) << '\n';
  } else {
    PlanOutcome o;
    if (expl) {
      o.status = PlanOutcome::Status::Infeasible;
      o.explanation = expl;
      out << json::outcomeText(p, o);
    } else {
      out << "possibly feasible\n";
    }
  }
  return expl ? kExitInfeasible : kExitOk;
}

// -------------------------------------------------------------------------
// plan

int runPlan(const Problem& p, const PlannerOptions& opts,
            const std::string& emit, bool report, std::ostream& out,
            std::ostream& err) {
  Analysis a = analyzeProblem(p, opts.threads);
  PlanSearch search(a, p.constraints, opts.solver);
  const PlanOutcome o = search.run(p, a, opts);
  std::ostream& result = emit.empty() ? out : err;
  if (report) {
    result << json::outcomeReport(p, o).dump(2) << '\n';
  } else {
    result << json::outcomeText(p, o);
  }
  if (emit == "smt2") {
    out << search.solver().exportSmt2();
  } else if (emit == "lp") {
    out << search.solver().exportLp();
  }
  switch (o.status) {
    case PlanOutcome::Status::Plan:
      return kExitOk;
    case PlanOutcome::Status::Infeasible:
      return kExitInfeasible;
    case PlanOutcome::Status::ResourceLimit:
      return kExitLimit;
  }
  return kExitError;
}

// -------------------------------------------------------------------------
// bench

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void print(std::ostream& out) const {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
      width[c] = header[c].size();
      for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        out << (c ? "  " : "") << std::setw(static_cast<int>(width[c]))
            << (c ? std::right : std::left) << cells[c];
      }
      out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

std::string ms(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << v;
  return s.str();
}

struct BenchArgs {
  std::string suite = "oneshot";
  std::uint64_t seed = 1;
  int sequences = 10;
  int updates = 30;
  int maxHorizon = 12;
  bool timings = true;
  bool report = false;
};

int runBenchOneshot(const BenchArgs& b, unsigned threads, std::ostream& out) {
  std::vector<std::pair<std::string, Problem>> suite = {
      {"counters(1,2,[2])", genCounters(1, 2, {2})},
      {"counters(2,3,[3,2])", genCounters(2, 3, {3, 2})},
      {"counters(3,4,[4,1,2])", genCounters(3, 4, {4, 1, 2})},
      {"counters(1,2,[3])", genCounters(1, 2, {3})},
      {"robot(4)", genRobot(4)},
      {"robot(6)", genRobot(6)},
      {"delivery(1,1,2,1)", genDelivery(1, 1, 2, 1)},
      {"delivery(1,2,3,1)", genDelivery(1, 2, 3, 1)},
      {"delivery(2,2,3,1)", genDelivery(2, 2, 3, 1)},
  };
  for (std::uint64_t s = b.seed; s < b.seed + 6; ++s) {
    suite.emplace_back("strips(" + std::to_string(s) + ",8,10)",
                       genRandomStrips(s, 8, 10));
  }
  PlannerOptions opts;
  opts.maxHorizon = b.maxHorizon;
  opts.threads = threads;
  Table t;
  t.header = {"problem", "status", "horizon", "lb", "checks", "nodes"};
  if (b.timings) {
    for (const char* h : {"relax_ms", "inv_ms", "reach_ms", "encode_ms",
                          "solve_ms", "total_ms"}) {
      t.header.push_back(h);
    }
  }
  OrderedJson results = OrderedJson::array();
  for (const auto& [name, p] : suite) {
    const PlanOutcome o = plan(p, opts);
    std::vector<std::string> row = {
        name, std::string(statusName(o.status)),
        o.plan ? std::to_string(o.plan->horizon) : "-",
        std::to_string(o.lowerBound), std::to_string(o.solverChecks),
        std::to_string(o.solverNodes)};
    if (b.timings) {
      for (double v : {o.timings.relaxMs, o.timings.invariantsMs,
                       o.timings.reachMs, o.timings.encodeMs,
                       o.timings.solveMs, o.timings.totalMs}) {
        row.push_back(ms(v));
      }
    }
    t.rows.push_back(std::move(row));
    OrderedJson j = b.timings ? json::outcomeReport(p, o)
                              : json::outcomeDigest(p, o);
    j["problem"] = name;
    results.push_back(std::move(j));
  }
  if (b.report) {
    out << OrderedJson({{"suite", "oneshot"}, {"results", results}}).dump(2)
        << '\n';
  } else {
    t.print(out);
  }
  return kExitOk;
}

bool sameVerdict(const PlanOutcome& a, const PlanOutcome& b) {
  if (a.status != b.status) return false;
  if (a.explanation.has_value() != b.explanation.has_value()) return false;
  return !a.explanation ||
         a.explanation->goalIndexSets == b.explanation->goalIndexSets;
}

int runBenchSequential(const BenchArgs& b, unsigned threads,
                       std::ostream& out) {
  Table t;
  t.header = {"sequence", "rounds", "plan", "infeasible", "limit", "agree",
              "nodes_inc", "nodes_fresh"};
  if (b.timings) {
    for (const char* h : {"cum_inc_ms", "cum_fresh_ms", "inc_reach_ms",
                          "inc_solve_ms"}) {
      t.header.push_back(h);
    }
  }
  OrderedJson results = OrderedJson::array();
  PlannerOptions opts;
  opts.maxHorizon = b.maxHorizon;
  opts.threads = threads;
  for (int i = 0; i < b.sequences; ++i) {
    const std::uint64_t seed = b.seed + static_cast<std::uint64_t>(i);
    const bool counters = i % 2 == 0;
    const Problem base =
        counters ? genCounters(2, 3, {2, 1}) : genDelivery(1, 2, 3, 1);
    const std::string name = std::string(counters ? "counters" : "delivery") +
                             "#" + std::to_string(seed);
    const auto updates = genUpdateSequence(base, seed, b.updates);
    SessionOptions so;
    so.planner = opts;
    Session session("bench", base, so);
    Problem composed = base;
    int counts[3] = {0, 0, 0};
    int agree = 0;
    std::uint64_t nodesInc = 0, nodesFresh = 0;
    double cumInc = 0, cumFresh = 0, reachInc = 0, solveInc = 0;
    for (std::size_t r = 0; r <= updates.size(); ++r) {
      auto t0 = Clock::now();
      if (r > 0) session.apply(updates[r - 1]);
      const PlanOutcome inc = session.solve();
      cumInc += msSince(t0);
      reachInc += inc.timings.reachMs;
      solveInc += inc.timings.solveMs;
      t0 = Clock::now();
      if (r > 0) composed = compose(composed, updates[r - 1]);
      const PlanOutcome fresh = plan(composed, opts);
      cumFresh += msSince(t0);
      ++counts[static_cast<int>(inc.status)];
      agree += sameVerdict(inc, fresh);
      nodesInc += inc.solverNodes;
      nodesFresh += fresh.solverNodes;
    }
    const int rounds = static_cast<int>(updates.size()) + 1;
    std::vector<std::string> row = {
        name,
        std::to_string(rounds),
        std::to_string(counts[0]),
        std::to_string(counts[1]),
        std::to_string(counts[2]),
        std::to_string(agree) + "/" + std::to_string(rounds),
        std::to_string(nodesInc),
        std::to_string(nodesFresh)};
    OrderedJson j;
    j["sequence"] = name;
    j["rounds"] = rounds;
    j["plan"] = counts[0];
    j["infeasible"] = counts[1];
    j["limit"] = counts[2];
    j["agree"] = agree;
    j["nodes_incremental"] = nodesInc;
    j["nodes_fresh"] = nodesFresh;
    if (b.timings) {
      for (double v : {cumInc, cumFresh, reachInc, solveInc}) {
        row.push_back(ms(v));
      }
      j["cumulative_ms_incremental"] = cumInc;
      j["cumulative_ms_fresh"] = cumFresh;
      j["incremental_reach_ms"] = reachInc;
      j["incremental_solve_ms"] = solveInc;
    }
    t.rows.push_back(std::move(row));
    results.push_back(std::move(j));
  }
  if (b.report) {
    out << OrderedJson({{"suite", "sequential"}, {"results", results}}).dump(2)
        << '\n';
  } else {
    t.print(out);
  }
  return kExitOk;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app{"Petri-net relaxation planner", "petriplan"};
  app.require_subcommand(1, 1);
  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "Worker threads for the invariant sweep (0 = hardware)");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Emit a generated problem");
  generate
      ->add_option("domain", gen.domain,
                   "counters | delivery | strips | robot | updates")
      ->required();
  generate->add_option("--n", gen.n, "Counters or robot locations");
  generate->add_option("--max", gen.maxVal, "Counter upper bound");
  generate->add_option("--goal", gen.goal, "Counter goal values");
  generate->add_option("--trucks", gen.trucks);
  generate->add_option("--packages", gen.packages);
  generate->add_option("--locations", gen.locations);
  generate->add_option("--capacity", gen.capacity);
  generate->add_option("--seed", gen.seed);
  generate->add_option("--vars", gen.vars, "Random STRIPS variables");
  generate->add_option("--actions", gen.actions, "Random STRIPS actions");
  generate->add_option("--from", gen.updatesFrom,
                       "Base problem for an update sequence ('-' = stdin)");
  generate->add_option("--count", gen.count, "Updates to generate");
  generate->add_option("-o,--output", gen.output, "Output file");

  std::string input;
  std::string format = "text";
  const std::vector<std::string> formats = {"text", "report"};

  bool emitReach = false;
  auto* analyze =
      app.add_subcommand("analyze", "Invariants, relaxation and reachability");
  analyze->add_option("input", input, "Problem file ('-' or none = stdin)");
  analyze->add_flag("--emit-reach", emitReach, "Print every reachable set");
  analyze->add_option("--format", format)
      ->check(CLI::IsMember(formats));

  auto* check = app.add_subcommand(
      "check", "Relaxation feasibility; explains infeasible goals");
  check->add_option("input", input, "Problem file ('-' or none = stdin)");
  check->add_option("--format", format)->check(CLI::IsMember(formats));

  PlannerOptions popts;
  std::string emit;
  auto* planCmd = app.add_subcommand("plan", "Find a plan or explain why not");
  planCmd->add_option("input", input, "Problem file ('-' or none = stdin)");
  planCmd->add_option("--max-horizon", popts.maxHorizon)
      ->check(CLI::NonNegativeNumber);
  planCmd->add_option("--node-limit", popts.solver.nodeLimit);
  planCmd
      ->add_option("--emit", emit,
                   "Print the final encoding to stdout (the outcome goes to "
                   "stderr)")
      ->check(CLI::IsMember({"smt2", "lp"}));
  planCmd->add_option("--format", format)->check(CLI::IsMember(formats));

  ServiceConfig svc;
  auto* serve = app.add_subcommand("serve", "Run the session service");
  serve->add_option("--host", svc.host);
  serve->add_option("--port", svc.port,
                    "Listening port (default PETRIPLAN_PORT or 8080)");
  serve->add_option("--data-dir", svc.dataDir,
                    "Journal directory (default PETRIPLAN_DATA_DIR)");
  serve->add_option("--max-horizon", svc.planner.maxHorizon);

  BenchArgs bench;
  auto* benchCmd = app.add_subcommand("bench", "Timing tables");
  benchCmd->add_option("--suite", bench.suite)
      ->check(CLI::IsMember({"oneshot", "sequential"}));
  benchCmd->add_option("--seed", bench.seed);
  benchCmd->add_option("--sequences", bench.sequences);
  benchCmd->add_option("--updates", bench.updates);
  benchCmd->add_option("--max-horizon", bench.maxHorizon);
  benchCmd->add_flag("!--no-timings", bench.timings,
                     "Leave out wall-clock columns");
  benchCmd->add_option("--format", format)->check(CLI::IsMember(formats));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  const bool report = format == "report";
  try {
    if (*generate) return runGenerate(gen, in, out);
    if (*analyze) {
      return runAnalyze(readProblem(input, in), threads, emitReach, report,
                        out);
    }
    if (*check) return runCheck(readProblem(input, in), report, out);
    if (*planCmd) {
      popts.threads = threads;
      return runPlan(readProblem(input, in), popts, emit, report, out, err);
    }
    if (*serve) {
      ServiceConfig env = configFromEnv();
      if (serve->count("--port") == 0) svc.port = env.port;
      if (serve->count("--data-dir") == 0) svc.dataDir = env.dataDir;
      svc.planner.threads = threads;
      Service service(svc);
      service.run([&](int port) {
        err << "serving on " << svc.host << ':' << port << std::endl;
      });
      return kExitOk;
    }
    if (*benchCmd) {
      bench.report = report;
      return bench.suite == "oneshot" ? runBenchOneshot(bench, threads, out)
                                      : runBenchSequential(bench, threads, out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& d : e.diagnostics()) {
      err << "  " << d.path << ": " << d.message << '\n';
    }
    return kExitError;
  } catch (const ParseError& e) {
    err << "error: " << e.path() << ": " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace petriplan

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


#include "petriplan/service.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "petriplan/report.hpp"

namespace petriplan {

namespace {

using json::Json;
using json::OrderedJson;

constexpr const char* kJson = "application/json";

void reply(httplib::Response& res, int status, const OrderedJson& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void fail(httplib::Response& res, int status, const std::string& message,
          const std::vector<Diagnostic>& diags = {}) {
  OrderedJson body;
  body["error"] = message;
  if (!diags.empty()) {
    OrderedJson list = OrderedJson::array();
    for (const auto& d : diags) list.push_back({{"path", d.path}, {"message", d.message}});
    body["diagnostics"] = std::move(list);
  }
  reply(res, status, body);
}

OrderedJson analysisDigest(const Session& s) {
  const Analysis& a = s.analysis();
  OrderedJson j;
  j["relaxation"] = a.goalStatus == GoalStatus::Infeasible
                        ? "infeasible"
                        : "possibly_feasible";
  j["lower_bound"] = a.lowerBound;
  j["invariants"] = json::invariantsToJson(s.problem(), a.invariants);
  j["forward_fixpoint"] = a.forward.fixpointStep;
  j["backward_fixpoint"] = a.backward.fixpointStep;
  return j;
}

}  // namespace

ServiceConfig configFromEnv(ServiceConfig base) {
  if (const char* port = std::getenv("PETRIPLAN_PORT")) {
    try {
      base.port = std::stoi(port);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("PETRIPLAN_PORT is not a port: ") +
                                  port);
    }
  }
  if (const char* dir = std::getenv("PETRIPLAN_DATA_DIR")) base.dataDir = dir;
  return base;
}

SessionStore::SessionStore(ServiceConfig config) : config_(std::move(config)) {}

SessionOptions SessionStore::optionsFor(const std::string& id) const {
  SessionOptions opts;
  opts.planner = config_.planner;
  if (!config_.dataDir.empty()) {
    opts.journalPath =
        (std::filesystem::path(config_.dataDir) / (id + ".jsonl")).string();
  }
  return opts;
}

std::shared_ptr<SessionStore::Entry> SessionStore::create(Problem p) {
  std::string id;
  {
    std::lock_guard<std::mutex> guard(mutex_);
    id = "s" + std::to_string(next_++);
  }
  auto entry = std::make_shared<Entry>();
  entry->session = std::make_unique<Session>(id, std::move(p), optionsFor(id));
  std::lock_guard<std::mutex> guard(mutex_);
  sessions_[id] = entry;
  return entry;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(
    const std::string& id) const {
  std::lock_guard<std::mutex> guard(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::size_t SessionStore::loadDataDir() {
  if (config_.dataDir.empty()) return 0;
  namespace fs = std::filesystem;
  fs::create_directories(config_.dataDir);
  std::vector<fs::path> files;
  for (const auto& f : fs::directory_iterator(config_.dataDir)) {
    if (f.path().extension() == ".jsonl") files.push_back(f.path());
  }
  std::sort(files.begin(), files.end());
  std::size_t loaded = 0;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream text;
    text << in.rdbuf();
    const std::string id = f.stem().string();
    auto entry = std::make_shared<Entry>();
    entry->session = Session::replay(text.str(), optionsFor(id));
    std::lock_guard<std::mutex> guard(mutex_);
    sessions_[entry->session->id()] = entry;
    if (id.size() > 1 && id[0] == 's') {
      try {
        next_ = std::max<std::uint64_t>(next_, std::stoull(id.substr(1)) + 1);
      } catch (const std::exception&) {
        // Foreign file names do not take part in numbering.
      }
    }
    ++loaded;
  }
  return loaded;
}

Service::Service(ServiceConfig config)
    : config_(std::move(config)),
      store_(config_),
      server_(std::make_unique<httplib::Server>()) {
  store_.loadDataDir();
  routes();
}

Service::~Service() { stop(); }

void Service::routes() {
  httplib::Server& svr = *server_;
  svr.set_post_routing_handler([](const auto&, auto& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
  });
  svr.Options(R"(/.*)", [](const auto&, auto& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  svr.Post("/sessions", [this](const httplib::Request& req,
                               httplib::Response& res) {
    Problem p;
    try {
      p = json::problemFromJson(Json::parse(req.body));
    } catch (const Json::exception& e) {
      return fail(res, 400, std::string("malformed JSON: ") + e.what());
    } catch (const ParseError& e) {
      return fail(res, 400, e.path() + ": " + e.what());
    } catch (const ValidationError& e) {
      return fail(res, 400, "invalid problem", e.diagnostics());
    }
    auto entry = store_.create(std::move(p));
    std::shared_lock<std::shared_mutex> lock(entry->lock);
    OrderedJson body;
    body["id"] = entry->session->id();
    body["round"] = entry->session->round();
    body["analysis"] = analysisDigest(*entry->session);
    reply(res, 201, body);
  });

  svr.Get(R"(/sessions/([^/]+))", [this](const httplib::Request& req,
                                         httplib::Response& res) {
    auto entry = store_.find(req.matches[1]);
    if (!entry) return fail(res, 404, "no session " + req.matches[1].str());
    std::shared_lock<std::shared_mutex> lock(entry->lock);
    reply(res, 200, entry->session->state());
  });

  svr.Post(R"(/sessions/([^/]+)/updates)", [this](const httplib::Request& req,
                                                  httplib::Response& res) {
    auto entry = store_.find(req.matches[1]);
    if (!entry) return fail(res, 404, "no session " + req.matches[1].str());
    std::unique_lock<std::shared_mutex> lock(entry->lock);
    Session& s = *entry->session;
    GoalStatus status;
    try {
      status = s.apply(updateFromJson(s.problem(), Json::parse(req.body)));
    } catch (const Json::exception& e) {
      return fail(res, 400, std::string("malformed JSON: ") + e.what());
    } catch (const UpdateError& e) {
      return fail(res, 400, e.what());
    }
    OrderedJson body;
    body["round"] = s.round();
    body["relaxation"] =
        status == GoalStatus::Infeasible ? "infeasible" : "possibly_feasible";
    reply(res, 200, body);
  });

  svr.Post(R"(/sessions/([^/]+)/solve)", [this](const httplib::Request& req,
                                                httplib::Response& res) {
    auto entry = store_.find(req.matches[1]);
    if (!entry) return fail(res, 404, "no session " + req.matches[1].str());
    std::unique_lock<std::shared_mutex> lock(entry->lock);
    Session& s = *entry->session;
    const PlanOutcome o = s.solve();
    OrderedJson body;
    body["round"] = s.round();
    body["outcome"] = json::outcomeDigest(s.problem(), o);
    body["lower_bound"] = o.lowerBound;
    body["timings"] = json::timingsToJson(o.timings);
    body["solver"] = {{"checks", o.solverChecks},
                      {"nodes", o.solverNodes},
                      {"assertions", o.solverAssertions}};
    reply(res, 200, body);
  });

  svr.Get(R"(/sessions/([^/]+)/journal)", [this](const httplib::Request& req,
                                                 httplib::Response& res) {
    auto entry = store_.find(req.matches[1]);
    if (!entry) return fail(res, 404, "no session " + req.matches[1].str());
    std::shared_lock<std::shared_mutex> lock(entry->lock);
    res.set_content(entry->session->journalText(), "application/x-ndjson");
  });

  svr.set_exception_handler([](const auto&, auto& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      fail(res, 500, e.what());
    } catch (...) {
      fail(res, 500, "unknown error");
    }
  });
}

int Service::bind() {
  int port = config_.port;
  if (port == 0) {
    port = server_->bind_to_any_port(config_.host);
  } else if (!server_->bind_to_port(config_.host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw std::runtime_error("cannot bind " + config_.host + ":" +
                             std::to_string(config_.port));
  }
  return port;
}

int Service::start() {
  const int port = bind();
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

void Service::run(const std::function<void(int)>& onBound) {
  const int port = bind();
  if (onBound) onBound(port);
  server_->listen_after_bind();
}

void Service::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace petriplan

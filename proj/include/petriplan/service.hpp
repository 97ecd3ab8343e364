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


// HTTP front end for planning sessions.

#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <thread>
#include <unordered_map>

#include "petriplan/session.hpp"

namespace httplib {
class Server;
}

namespace petriplan {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  /// 0 picks a free port.
  int port = 8080;
  /// Journals live here as <id>.jsonl when set; existing ones are replayed
  /// at startup.
  std::string dataDir;
  PlannerOptions planner;
};

/// Applies PETRIPLAN_PORT and PETRIPLAN_DATA_DIR over `base`.
ServiceConfig configFromEnv(ServiceConfig base = {});

/// Sessions by id. Each session has its own reader/writer lock.
class SessionStore {
 public:
  struct Entry {
    std::shared_mutex lock;
    std::unique_ptr<Session> session;
  };

  explicit SessionStore(ServiceConfig config);

  std::shared_ptr<Entry> create(Problem p);
  /// nullptr for unknown ids.
  std::shared_ptr<Entry> find(const std::string& id) const;
  /// Replays every journal in the data directory; returns how many loaded.
  std::size_t loadDataDir();

 private:
  SessionOptions optionsFor(const std::string& id) const;

  ServiceConfig config_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_ = 1;
};

class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and serves on a background thread; returns the bound port.
  /// Throws std::runtime_error when binding fails.
  int start();
  /// Binds and serves on the calling thread until stop(). `onBound` sees
  /// the bound port before the first request is accepted.
  void run(const std::function<void(int)>& onBound = nullptr);
  void stop();

  SessionStore& store() { return store_; }

 private:
  void routes();
  int bind();

  ServiceConfig config_;
  SessionStore store_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace petriplan

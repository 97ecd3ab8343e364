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


#include <gtest/gtest.h>
#include <httplib.h>

#include <cstdlib>
#include <filesystem>
#include <thread>

#include "petriplan/domains.hpp"
#include "petriplan/report.hpp"
#include "petriplan/service.hpp"

namespace petriplan {
namespace {

using json::Json;

ServiceConfig testConfig(std::string dataDir = "") {
  ServiceConfig c;
  c.port = 0;
  c.dataDir = std::move(dataDir);
  c.planner.maxHorizon = 12;
  c.planner.threads = 1;
  return c;
}

std::string problemBody(const Problem& p) { return json::problemToJson(p).dump(); }

// Responses come back with keys in canonical order.
Json canonical(const json::OrderedJson& j) { return Json::parse(j.dump()); }

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    service_ = std::make_unique<Service>(testConfig());
    port_ = service_->start();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override { service_->stop(); }

  std::string create(const Problem& p) {
    auto res = client_->Post("/sessions", problemBody(p), "application/json");
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, 201);
    return Json::parse(res->body)["id"].get<std::string>();
  }

  Json post(const std::string& path, const std::string& body, int want = 200) {
    auto res = client_->Post(path, body, "application/json");
    EXPECT_TRUE(res) << path;
    EXPECT_EQ(res->status, want) << res->body;
    return Json::parse(res->body);
  }

  std::unique_ptr<Service> service_;
  int port_ = 0;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(ServiceTest, CreateUpdateSolveMatchesInProcess) {
  const Problem p = genCounters(1, 3, {2});
  const std::string id = create(p);

  SessionOptions local;
  local.planner = testConfig().planner;
  Session ref("ref", p, local);

  Json r = post("/sessions/" + id + "/solve", "{}");
  EXPECT_EQ(r["round"], 0);
  EXPECT_EQ(r["outcome"], canonical(json::outcomeDigest(p, ref.solve())));
  EXPECT_EQ(r["outcome"]["status"], "PLAN");

  const GoalChange change{{LinearRelation{{{0, Rational(1)}}, RelOp::Eq, Rational(1)}}, {0}};
  const std::string update = updateToJson(p, change).dump();
  r = post("/sessions/" + id + "/updates", update);
  EXPECT_EQ(r["round"], 1);
  EXPECT_EQ(r["relaxation"], "possibly_feasible");
  ref.apply(change);

  r = post("/sessions/" + id + "/solve", "{}");
  EXPECT_EQ(r["outcome"], canonical(json::outcomeDigest(ref.problem(), ref.solve())));
  EXPECT_TRUE(r.contains("timings"));
  EXPECT_TRUE(r["solver"].contains("checks"));

  auto state = client_->Get("/sessions/" + id);
  ASSERT_TRUE(state);
  EXPECT_EQ(state->status, 200);
  EXPECT_EQ(Json::parse(state->body)["round"], 1);

  auto journal = client_->Get("/sessions/" + id + "/journal");
  ASSERT_TRUE(journal);
  EXPECT_EQ(journal->status, 200);
  Json replayed = canonical(Session::replay(journal->body)->digest());
  Json expected = canonical(ref.digest());
  replayed.erase("id");
  expected.erase("id");
  EXPECT_EQ(replayed, expected);
}

TEST_F(ServiceTest, MalformedInputIs400AndRoundUnchanged) {
  const std::string id = create(genCounters(1, 3, {2}));
  post("/sessions/" + id + "/updates", "{not json", 400);
  const Json err = post("/sessions/" + id + "/updates", R"({"goal_change":{"del":[9]}})", 400);
  EXPECT_TRUE(err.contains("error"));
  auto state = client_->Get("/sessions/" + id);
  ASSERT_TRUE(state);
  EXPECT_EQ(Json::parse(state->body)["round"], 0);
  post("/sessions", R"({"vars": 3})", 400);
}

TEST_F(ServiceTest, UnknownSessionIs404) {
  EXPECT_EQ(client_->Get("/sessions/nope")->status, 404);
  EXPECT_EQ(client_->Post("/sessions/nope/solve", "{}", "application/json")->status, 404);
  EXPECT_EQ(client_->Get("/sessions/nope/journal")->status, 404);
}

TEST_F(ServiceTest, CorsPreflight) {
  auto res = client_->Options("/sessions");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 204);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
}

TEST_F(ServiceTest, ConcurrentSessionsStayIndependent) {
  const Problem a = genCounters(1, 3, {3});
  const Problem b = genDelivery(1, 1, 2, 1);
  const std::string ida = create(a), idb = create(b);
  EXPECT_NE(ida, idb);
  Json ra, rb;
  std::thread ta([&] {
    httplib::Client c("127.0.0.1", port_);
    ra = Json::parse(c.Post("/sessions/" + ida + "/solve", "{}", "application/json")->body);
  });
  std::thread tb([&] {
    httplib::Client c("127.0.0.1", port_);
    rb = Json::parse(c.Post("/sessions/" + idb + "/solve", "{}", "application/json")->body);
  });
  ta.join();
  tb.join();
  PlannerOptions po = testConfig().planner;
  EXPECT_EQ(ra["outcome"], canonical(json::outcomeDigest(a, plan(a, po))));
  EXPECT_EQ(rb["outcome"], canonical(json::outcomeDigest(b, plan(b, po))));
}

TEST(ServiceDataDirTest, JournalsSurviveRestart) {
  const auto dir = std::filesystem::temp_directory_path() / "petriplan_service_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::string id, before;
  {
    Service svc(testConfig(dir.string()));
    httplib::Client c("127.0.0.1", svc.start());
    auto res = c.Post("/sessions", problemBody(genCounters(1, 2, {2})), "application/json");
    ASSERT_TRUE(res);
    id = Json::parse(res->body)["id"].get<std::string>();
    c.Post("/sessions/" + id + "/solve", "{}", "application/json");
    before = c.Get("/sessions/" + id)->body;
    svc.stop();
  }
  EXPECT_TRUE(std::filesystem::exists(dir / (id + ".jsonl")));
  Service svc(testConfig(dir.string()));
  EXPECT_EQ(svc.store().loadDataDir(), 1u);
  httplib::Client c("127.0.0.1", svc.start());
  auto res = c.Get("/sessions/" + id);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, before);
  // New ids do not collide with restored ones.
  auto created = c.Post("/sessions", problemBody(genCounters(1, 2, {1})), "application/json");
  EXPECT_NE(Json::parse(created->body)["id"].get<std::string>(), id);
  svc.stop();
  std::filesystem::remove_all(dir);
}

TEST(ServiceConfigTest, EnvironmentOverrides) {
  ::setenv("PETRIPLAN_PORT", "9123", 1);
  ::setenv("PETRIPLAN_DATA_DIR", "/tmp/pp", 1);
  const ServiceConfig c = configFromEnv();
  EXPECT_EQ(c.port, 9123);
  EXPECT_EQ(c.dataDir, "/tmp/pp");
  ::unsetenv("PETRIPLAN_PORT");
  ::unsetenv("PETRIPLAN_DATA_DIR");
  EXPECT_EQ(configFromEnv().port, 8080);
}

}  // namespace
}  // namespace petriplan

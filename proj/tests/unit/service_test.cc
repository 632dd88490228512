// Copyright 2026 The Stylecomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stylecomp/service.h"

#include <gtest/gtest.h>

#include <cmath>
#include <future>
#include <thread>

#include "httplib.h"
#include "stylecomp/errors.h"
#include "test_util.h"

namespace stylecomp {
namespace {

std::shared_ptr<ServiceSnapshot> MakeSnapshot(bool with_lexicon) {
  Vocabularies v;
  for (const char* w : {"red", "floral", "dress", "black", "leather", "bag", "tan", "heels"}) {
    v.source.Add(w);
    v.target.Add(w);
  }
  ModelConfig mc;
  mc.embedding_dim = 6;
  mc.hidden_dim = 6;
  mc.init_scale = 0.8;
  mc.max_target_len = 4;
  mc.seed = 3;
  auto snap = std::make_shared<ServiceSnapshot>();
  snap->model = MakeModel(mc, v);
  snap->taxonomy = FixtureTaxonomy();
  if (with_lexicon) {
    StyleRuleLexicon lex;
    lex.entries["red floral dress"] = {{"tan heels", 4}, {"black leather bag", 2}};
    lex.entries["black leather bag"] = {{"red floral dress", 2}, {"tan heels", 1}};
    snap->lexicon = lex;
  }
  return snap;
}

TEST(ParseCompletionRequest, Validation) {
  const CompletionRequest r = ParseCompletionRequest(R"({"items":["red dress"],"k":3,"method":"apriori"})");
  EXPECT_EQ(r.items, std::vector<std::string>{"red dress"});
  EXPECT_EQ(r.k, 3);
  EXPECT_EQ(r.method, Method::kApriori);
  EXPECT_EQ(ParseCompletionRequest(R"({"items":["x"]})").k, 10);
  EXPECT_THROW(ParseCompletionRequest("{not json"), ParseError);
  EXPECT_THROW(ParseCompletionRequest(R"({"items":[],"k":3})"), InvalidArgument);
  EXPECT_THROW(ParseCompletionRequest(R"({"items":["x"],"k":21})"), InvalidArgument);
  EXPECT_THROW(ParseCompletionRequest(R"({"items":["x"],"k":0})"), InvalidArgument);
  EXPECT_THROW(ParseCompletionRequest(R"({"items":["x"],"method":"magic"})"), InvalidArgument);
  EXPECT_THROW(ParseCompletionRequest(R"({"items":[1]})"), ParseError);
  EXPECT_THROW(ParseCompletionRequest(R"([1])"), Error);
}

TEST(CompletionService, ModelCompletion) {
  CompletionService svc;
  svc.Load(MakeSnapshot(false));
  const HttpResponse r =
      svc.Complete(R"({"items":["red floral dress","black leather bag"],"k":3,"method":"model"})");
  ASSERT_EQ(r.status, 200) << r.body.dump();
  const Json& cands = r.body.at("candidates");
  ASSERT_LE(cands.size(), 3u);
  ASSERT_FALSE(cands.empty());
  for (std::size_t i = 1; i < cands.size(); ++i) {
    EXPECT_GE(cands[i - 1].at("score").get<double>(), cands[i].at("score").get<double>());
    EXPECT_TRUE(cands[i].at("attention").is_null());
  }
  const Json& att = cands[0].at("attention");
  ASSERT_TRUE(att.is_array());
  EXPECT_EQ(att.size(), r.body.at("source_tokens").size());
  double sum = 0;
  for (const Json& a : att) {
    EXPECT_GE(a.get<double>(), 0.0);
    sum += a.get<double>();
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
  EXPECT_EQ(r.body.at("source_tokens").front(), "red");
  EXPECT_EQ(r.body.at("items"), (Json{"red floral dress", "black leather bag"}));
}

TEST(CompletionService, WarningsForUnknownWords) {
  CompletionService svc;
  svc.Load(MakeSnapshot(false));
  const HttpResponse r = svc.Complete(R"({"items":["red skirt","hello"],"k":2})");
  ASSERT_EQ(r.status, 200) << r.body.dump();
  const std::string w = r.body.at("warnings").dump();
  EXPECT_NE(w.find("skirt"), std::string::npos);
  EXPECT_NE(w.find("hello"), std::string::npos);
}

TEST(CompletionService, ErrorStatuses) {
  CompletionService svc;
  EXPECT_EQ(svc.Complete(R"({"items":["red dress"]})").status, 503);
  EXPECT_EQ(svc.TaxonomyTerms().status, 503);
  EXPECT_EQ(svc.Health().status, 200);
  EXPECT_EQ(svc.Health().body.at("loaded"), false);

  svc.Load(MakeSnapshot(false));
  EXPECT_EQ(svc.Complete("garbage").status, 400);
  EXPECT_EQ(svc.Complete(R"({"items":[],"k":3})").status, 400);
  EXPECT_EQ(svc.Complete(R"({"items":["hello world"]})").status, 422);
  EXPECT_EQ(svc.Complete(R"({"items":["skirt"]})").status, 422);
  EXPECT_EQ(svc.Complete(R"({"items":["red floral dress"],"method":"apriori"})").status, 409);
}

TEST(CompletionService, AprioriAndNil) {
  CompletionService svc;
  svc.Load(MakeSnapshot(true));
  const HttpResponse hit = svc.Complete(R"({"items":["red floral dress"],"k":5,"method":"apriori"})");
  ASSERT_EQ(hit.status, 200);
  const Json& c = hit.body.at("candidates");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].at("item"), "tan heels");
  EXPECT_EQ(c[0].at("support"), 4);
  EXPECT_EQ(c[0].at("parsed").at("apparel"), "heels");
  EXPECT_NEAR(c[0].at("score").get<double>(), 4.0 / 6, 1e-12);

  const HttpResponse nil = svc.Complete(R"({"items":["blue printed jeans"],"method":"apriori"})");
  ASSERT_EQ(nil.status, 200);
  EXPECT_TRUE(nil.body.at("candidates").empty());
}

TEST(CompletionService, TaxonomyAndHealth) {
  CompletionService svc;
  svc.Load(MakeSnapshot(false));
  const HttpResponse t = svc.TaxonomyTerms();
  ASSERT_EQ(t.status, 200);
  EXPECT_EQ(t.body.at("apparel").size(), FixtureTaxonomy().apparel_terms().size());
  EXPECT_EQ(t.body.at("colors").size(), 20u);
  EXPECT_EQ(t.body.at("patterns").size(), 15u);
  EXPECT_EQ(svc.Health().body.at("version"), kVersion);
  EXPECT_EQ(svc.Health().body.at("status"), "ok");
}

TEST(CompletionService, ConcurrentRequestsMatchSerial) {
  CompletionService svc;
  svc.Load(MakeSnapshot(true));
  const std::vector<std::string> bodies{
      R"({"items":["red floral dress"],"k":4})",
      R"({"items":["black leather bag","tan heels"],"k":2})",
      R"({"items":["red floral dress"],"method":"apriori"})",
      R"({"items":["floral dress"],"k":6})"};
  std::vector<std::string> serial;
  for (const auto& b : bodies) serial.push_back(svc.Complete(b).body.dump());
  std::vector<std::future<std::string>> futures;
  for (int rep = 0; rep < 8; ++rep) {
    for (const auto& b : bodies) {
      futures.push_back(std::async(std::launch::async, [&svc, b] { return svc.Complete(b).body.dump(); }));
    }
  }
  for (std::size_t i = 0; i < futures.size(); ++i) EXPECT_EQ(futures[i].get(), serial[i % bodies.size()]);
}

TEST(HttpServer, EndToEndOverLoopback) {
  CompletionService svc;
  HttpServer server(svc);
  const int port = server.Bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread serving([&] { server.Serve(); });
  server.WaitUntilReady();
  httplib::Client client("127.0.0.1", port);

  auto taxonomy = client.Get("/taxonomy");
  ASSERT_TRUE(taxonomy);
  EXPECT_EQ(taxonomy->status, 503);

  svc.Load(MakeSnapshot(false));
  auto health = client.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(ParseJson(health->body, "health").at("loaded"), true);

  taxonomy = client.Get("/taxonomy");
  ASSERT_TRUE(taxonomy);
  EXPECT_EQ(taxonomy->status, 200);

  const std::string body = R"({"items":["red floral dress","black leather bag"],"k":3})";
  auto complete = client.Post("/complete", body, "application/json");
  ASSERT_TRUE(complete);
  EXPECT_EQ(complete->status, 200);
  EXPECT_EQ(ParseJson(complete->body, "response"), svc.Complete(body).body);
  auto bad = client.Post("/complete", "{", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  server.Stop();
  serving.join();
}

}  // namespace
}  // namespace stylecomp

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

#include <set>

#include "httplib.h"
#include "stylecomp/annotator.h"
#include "stylecomp/corpus.h"
#include "stylecomp/decoding.h"
#include "stylecomp/errors.h"

namespace stylecomp {

CompletionRequest ParseCompletionRequest(std::string_view body) {
  const Json j = ParseJson(body, "request body");
  CompletionRequest req;
  try {
    if (!j.is_object()) throw InvalidArgument("request body must be a JSON object");
    for (const Json& item : j.at("items")) req.items.push_back(item.get<std::string>());
    if (j.contains("k")) req.k = j.at("k").get<int>();
    if (j.contains("method")) {
      const std::string m = j.at("method").get<std::string>();
      if (m == "model") {
        req.method = Method::kModel;
      } else if (m == "apriori") {
        req.method = Method::kApriori;
      } else {
        throw InvalidArgument("method must be 'model' or 'apriori', got '" + m + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("request body: ") + e.what());
  }
  if (req.items.empty()) throw InvalidArgument("items must be a non-empty list");
  if (req.k < 1 || req.k > kMaxRequestK) {
    throw InvalidArgument("k must be in 1.." + std::to_string(kMaxRequestK));
  }
  return req;
}

namespace {

Json ParsedOrNull(const std::optional<AttributedItem>& item) {
  return item ? ItemToJson(*item) : Json(nullptr);
}

}  // namespace

Json RunCompletion(const ServiceSnapshot& snapshot, const CompletionRequest& request) {
  Json warnings = Json::array();
  std::vector<AttributedItem> items;
  std::set<AttributedItem> seen;
  for (const std::string& text : request.items) {
    const std::vector<AttributedItem> parsed = Annotate(text, snapshot.taxonomy);
    if (parsed.empty()) warnings.push_back("no fashion term in '" + text + "'");
    for (const AttributedItem& item : parsed) {
      if (seen.insert(item).second) items.push_back(item);
    }
  }
  if (items.empty()) {
    throw DataError("none of the items contains an apparel term of the taxonomy");
  }

  Json out;
  Json j_items = Json::array();
  for (const AttributedItem& item : items) j_items.push_back(item.ToString());
  out["items"] = std::move(j_items);
  Json candidates = Json::array();

  if (request.method == Method::kApriori) {
    if (!snapshot.lexicon) throw ConflictError("no apriori lexicon is loaded");
    const StyleRuleLexicon& lex = *snapshot.lexicon;
    std::vector<std::string> query;
    for (const AttributedItem& item : items) query.push_back(Project(item, lex.granularity));
    const std::vector<CoItem> recs = Recommend(lex, query, request.k);
    double total = 0.0;
    for (const CoItem& c : recs) total += static_cast<double>(c.support);
    for (const CoItem& c : recs) {
      const std::vector<AttributedItem> parsed = Annotate(c.item, snapshot.taxonomy);
      std::optional<AttributedItem> item;
      if (parsed.size() == 1 && parsed.front().ToString() == c.item) item = parsed.front();
      candidates.push_back(Json{{"attention", nullptr},
                                {"item", c.item},
                                {"parsed", ParsedOrNull(item)},
                                {"score", static_cast<double>(c.support) / total},
                                {"support", c.support}});
    }
    out["method"] = "apriori";
    out["source_tokens"] = Json::array();
  } else {
    const Model& model = snapshot.model;
    const Completion completion =
        CompleteItemset(items, model, snapshot.taxonomy, request.k);
    for (const std::string& w : completion.unknown_words) {
      warnings.push_back("unknown word '" + w + "' replaced by <unk>");
    }
    for (std::size_t i = 0; i < completion.candidates.size(); ++i) {
      const Candidate& c = completion.candidates[i];
      Json attention = nullptr;
      if (i == 0 && model.config.attention) {
        const std::vector<Tensor> trace =
            AttentionTrace(model, completion.source_ids, c.tokens);
        if (!trace.empty()) attention = trace.back().values();
      }
      candidates.push_back(Json{{"attention", std::move(attention)},
                                {"item", c.Text()},
                                {"logprob", c.logprob},
                                {"parsed", ParsedOrNull(c.item)},
                                {"score", c.score}});
    }
    Json source = Json::array();
    for (int id : completion.source_ids) source.push_back(model.vocab.source.Token(id));
    out["method"] = "model";
    out["source_tokens"] = std::move(source);
  }
  out["candidates"] = std::move(candidates);
  out["warnings"] = std::move(warnings);
  return out;
}

void CompletionService::Load(std::shared_ptr<const ServiceSnapshot> snapshot) {
  std::lock_guard<std::mutex> lock(mu_);
  snapshot_ = std::move(snapshot);
}

std::shared_ptr<const ServiceSnapshot> CompletionService::snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return snapshot_;
}

namespace {

HttpResponse ErrorResponse(int status, const std::string& message) {
  return {status, Json{{"error", message}, {"status", status}}};
}

}  // namespace

HttpResponse CompletionService::Complete(std::string_view body) const {
  const auto snap = snapshot();
  if (!snap) return ErrorResponse(503, "model is still loading");
  CompletionRequest request;
  try {
    request = ParseCompletionRequest(body);
  } catch (const Error& e) {
    return ErrorResponse(400, e.what());
  }
  try {
    return {200, RunCompletion(*snap, request)};
  } catch (const ConflictError& e) {
    return ErrorResponse(409, e.what());
  } catch (const DataError& e) {
    return ErrorResponse(422, e.what());
  } catch (const Error& e) {
    return ErrorResponse(500, e.what());
  }
}

HttpResponse CompletionService::Health() const {
  return {200, Json{{"loaded", snapshot() != nullptr}, {"status", "ok"},
                    {"version", kVersion}}};
}

HttpResponse CompletionService::TaxonomyTerms() const {
  const auto snap = snapshot();
  if (!snap) return ErrorResponse(503, "taxonomy is still loading");
  const Taxonomy& t = snap->taxonomy;
  return {200, Json{{"apparel", t.apparel_terms()},
                    {"colors", t.color_terms()},
                    {"patterns", t.pattern_terms()}}};
}

HttpServer::HttpServer(CompletionService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto reply = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json; charset=utf-8");
  };
  server_->Post("/complete", [this, reply](const httplib::Request& req,
                                           httplib::Response& res) {
    reply(res, service_.Complete(req.body));
  });
  server_->Get("/health", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, service_.Health());
  });
  server_->Get("/taxonomy",
               [this, reply](const httplib::Request&, httplib::Response& res) {
                 reply(res, service_.TaxonomyTerms());
               });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::Serve() { return server_->listen_after_bind(); }

void HttpServer::Stop() {
  if (server_) server_->stop();
}

void HttpServer::WaitUntilReady() const { server_->wait_until_ready(); }

}  // namespace stylecomp

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

#ifndef STYLECOMP_SERVICE_H_
#define STYLECOMP_SERVICE_H_

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stylecomp/apriori.h"
#include "stylecomp/io.h"
#include "stylecomp/model.h"
#include "stylecomp/taxonomy.h"

namespace httplib {
class Server;
}

namespace stylecomp {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kMaxRequestK = 20;

enum class Method { kModel, kApriori };

struct CompletionRequest {
  std::vector<std::string> items;
  int k = 10;
  Method method = Method::kModel;
};

// Throws ParseError for a malformed body and InvalidArgument for an empty
// item list, k outside 1..20 or an unknown method.
CompletionRequest ParseCompletionRequest(std::string_view body);

// Everything a request reads. Never mutated once published.
struct ServiceSnapshot {
  Model model;
  Taxonomy taxonomy;
  std::optional<StyleRuleLexicon> lexicon;
};

// Runs one completion against a snapshot and renders the response body:
// {"candidates": [{"item", "parsed", "score", "logprob"|"support",
// "attention"}], "items", "method", "source_tokens", "warnings"}.
// Candidates are best first. Only the top model candidate carries
// attention: the weights over source tokens at its final decoding step.
// Throws DataError when the items annotate to no fashion term or no query
// word is known to the model, and ConflictError for apriori without a
// lexicon.
Json RunCompletion(const ServiceSnapshot& snapshot, const CompletionRequest& request);

struct HttpResponse {
  int status = 200;
  Json body;
};

// Request handling independent of the transport. Reload swaps in a new
// snapshot; requests already running keep the one they started with.
class CompletionService {
 public:
  void Load(std::shared_ptr<const ServiceSnapshot> snapshot);
  std::shared_ptr<const ServiceSnapshot> snapshot() const;

  // 200, or 400 (bad body), 422 (nothing annotates or nothing known),
  // 409 (apriori without lexicon), 503 (nothing loaded).
  HttpResponse Complete(std::string_view body) const;
  HttpResponse Health() const;
  // 503 until a snapshot is loaded.
  HttpResponse TaxonomyTerms() const;

 private:
  mutable std::mutex mu_;
  std::shared_ptr<const ServiceSnapshot> snapshot_;
};

// HTTP/1.1 front end over a CompletionService.
class HttpServer {
 public:
  explicit HttpServer(CompletionService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Returns the bound port, or -1.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool Serve();
  void Stop();
  void WaitUntilReady() const;

 private:
  CompletionService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace stylecomp

#endif  // STYLECOMP_SERVICE_H_

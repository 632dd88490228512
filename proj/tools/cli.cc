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

#include "cli.h"

#include <chrono>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "stylecomp/annotator.h"
#include "stylecomp/apriori.h"
#include "stylecomp/corpus.h"
#include "stylecomp/errors.h"
#include "stylecomp/eval.h"
#include "stylecomp/model.h"
#include "stylecomp/service.h"
#include "stylecomp/synthgen.h"
#include "stylecomp/taxonomy.h"
#include "stylecomp/training.h"

namespace stylecomp::cli {

namespace fs = std::filesystem;

namespace {

// Bad flag values and missing required options; exit 1 like parse errors.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Flag {
  std::string name;     // without leading dashes
  std::string pointer;  // JSON pointer into the options object
  std::string help;
  bool required = false;
};

struct Command {
  std::string name;
  std::string help;
  Json defaults;
  std::vector<Flag> flags;
  std::vector<std::string> seed_pointers;
  // Pointer to the output path the manifest sits next to; empty for none.
  std::string manifest_of;
};

std::vector<Command> Commands() {
  std::vector<Command> cmds;
  cmds.push_back({"fixtures",
                  "write the fixture taxonomy and style rules",
                  Json{{"noise", 0.15}, {"out_dir", ""}},
                  {{"out-dir", "/out_dir", "output directory", true},
                   {"noise", "/noise", "rule noise rate"}},
                  {},
                  "/out_dir"});
  GenConfig gen;
  Json gen_defaults = gen.ToJson();
  gen_defaults["rules"] = "";
  gen_defaults["noise"] = nullptr;
  gen_defaults["out"] = "";
  cmds.push_back({"gen",
                  "generate a synthetic posts file from planted style rules",
                  gen_defaults,
                  {{"rules", "/rules", "rules file (default: fixture rules)"},
                   {"n", "/n_posts", "number of posts"},
                   {"noise", "/noise", "override the rules' noise rate"},
                   {"min-items", "/min_items", "fewest items per post"},
                   {"max-items", "/max_items", "most items per post"},
                   {"violator-factor", "/violator_factor",
                    "social-count scale for rule-violating posts"},
                   {"out", "/out", "posts file", true}},
                  {"/seed"},
                  "/out"});
  cmds.push_back({"annotate",
                  "turn posts into structured itemsets",
                  Json{{"in", ""}, {"out", ""}, {"taxonomy", ""}},
                  {{"taxonomy", "/taxonomy", "taxonomy file", true},
                   {"in", "/in", "posts file", true},
                   {"out", "/out", "structured posts file", true}},
                  {},
                  "/out"});
  cmds.push_back({"filter",
                  "keep the top percentile of posts by fashion score",
                  Json{{"in", ""}, {"out", ""}, {"percentile", 30.0},
                       {"weights", {1.0, 1.0, 1.0}}},
                  {{"in", "/in", "posts file", true},
                   {"out", "/out", "filtered posts file", true},
                   {"percentile", "/percentile", "percent of posts to keep"},
                   {"weights", "/weights", "votes,likes,comments weights"}},
                  {},
                  "/out"});
  cmds.push_back({"prepare",
                  "split structured posts and build examples and vocabularies",
                  Json{{"in", ""}, {"out", ""}, {"taxonomy", ""},
                       {"ratios", {0.7, 0.2, 0.1}}, {"seed", 1}},
                  {{"in", "/in", "structured posts file", true},
                   {"out", "/out", "corpus directory", true},
                   {"taxonomy", "/taxonomy", "taxonomy copied into the corpus"},
                   {"ratios", "/ratios", "train,test,validate ratios"}},
                  {"/seed"},
                  "/out"});
  cmds.push_back({"mine",
                  "mine a style-rule lexicon with apriori",
                  Json{{"corpus", ""}, {"split", "train"}, {"granularity", "full"},
                       {"min_support", 2}, {"out", ""}},
                  {{"corpus", "/corpus", "corpus directory", true},
                   {"split", "/split", "split to mine"},
                   {"granularity", "/granularity", "full|color|pattern|apparel"},
                   {"min-support", "/min_support", "absolute minimum support"},
                   {"out", "/out", "lexicon file", true}},
                  {},
                  "/out"});
  cmds.push_back(
      {"train",
       "train the encoder-decoder",
       Json{{"corpus", ""}, {"out", ""}, {"report", ""},
            {"model", ModelConfig{}.ToJson()}, {"train", TrainConfig{}.ToJson()}},
       {{"corpus", "/corpus", "corpus directory", true},
        {"out", "/out", "checkpoint file", true},
        {"report", "/report", "per-epoch report (default: <out>.report.jsonl)"},
        {"attention", "/model/attention", "on|off"},
        {"embedding-dim", "/model/embedding_dim", "word embedding size"},
        {"hidden-dim", "/model/hidden_dim", "LSTM state size"},
        {"max-target-len", "/model/max_target_len", "decoding length limit"},
        {"init-scale", "/model/init_scale", "uniform init half-width"},
        {"epochs", "/train/epochs", "epoch limit"},
        {"lr", "/train/learning_rate", "learning rate"},
        {"lr-decay", "/train/lr_decay", "decay factor on plateau"},
        {"batch-size", "/train/batch_size", "examples per update"},
        {"clip-norm", "/train/clip_norm", "gradient norm clip"},
        {"patience", "/train/early_stop_patience", "stale epochs before stopping"},
        {"per-token-loss", "/train/per_token_loss", "normalize loss per token"}},
       {"/model/seed", "/train/seed"},
       "/out"});
  cmds.push_back({"eval",
                  "JSS@k and MRR report for a model or a lexicon",
                  Json{{"model", ""}, {"lexicon", ""}, {"test", ""}, {"split", "test"},
                       {"granularity", "full"}, {"report", ""}, {"taxonomy", ""},
                       {"k_neg", {1, 2, 3, 4}}, {"seed", 1}, {"method", ""}},
                  {{"model", "/model", "checkpoint file"},
                   {"lexicon", "/lexicon", "lexicon file"},
                   {"test", "/test", "corpus directory", true},
                   {"split", "/split", "split to evaluate"},
                   {"granularity", "/granularity", "full|color|pattern|apparel"},
                   {"report", "/report", "report file", true},
                   {"taxonomy", "/taxonomy", "taxonomy (default: from model or corpus)"},
                   {"k-neg", "/k_neg", "negative counts for MRR"},
                   {"method", "/method", "method label in the report"}},
                  {"/seed"},
                  "/report"});
  cmds.push_back({"retrieval",
                  "MRR of the true label against sampled negatives",
                  Json{{"model", ""}, {"test", ""}, {"split", "test"}, {"k_neg", 4},
                       {"seed", 1}, {"out", ""}},
                  {{"model", "/model", "checkpoint file", true},
                   {"test", "/test", "corpus directory", true},
                   {"split", "/split", "split to use"},
                   {"k-neg", "/k_neg", "number of negatives"},
                   {"out", "/out", "result file"}},
                  {"/seed"},
                  "/out"});
  cmds.push_back({"recommend",
                  "complete an itemset",
                  Json{{"model", ""}, {"query", ""}, {"k", 10}, {"lexicon", ""},
                       {"method", "model"}, {"taxonomy", ""}, {"json", false}},
                  {{"model", "/model", "checkpoint file", true},
                   {"query", "/query", "comma-separated items", true},
                   {"k", "/k", "number of candidates"},
                   {"lexicon", "/lexicon", "lexicon file for method apriori"},
                   {"method", "/method", "model|apriori"},
                   {"taxonomy", "/taxonomy", "taxonomy (default: from model)"},
                   {"json", "/json", "print the service response body"}},
                  {},
                  ""});
  cmds.push_back({"serve",
                  "HTTP completion service",
                  Json{{"model", ""}, {"lexicon", ""}, {"taxonomy", ""}, {"port", 8080},
                       {"host", "127.0.0.1"}},
                  {{"model", "/model", "checkpoint file", true},
                   {"lexicon", "/lexicon", "lexicon file"},
                   {"taxonomy", "/taxonomy", "taxonomy file", true},
                   {"port", "/port", "port (0 picks a free one)"},
                   {"host", "/host", "bind address"}},
                  {},
                  ""});
  return cmds;
}

const Command& FindCommand(const std::string& name) {
  static const std::vector<Command> kCommands = Commands();
  for (const Command& c : kCommands) {
    if (c.name == name) return c;
  }
  throw UsageError("unknown command '" + name + "'");
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, ',');) out.push_back(part);
  return out;
}

Json ParseScalar(const std::string& flag, const std::string& text, const Json& like) {
  std::size_t used = 0;
  try {
    if (like.is_boolean()) {
      if (text == "on" || text == "true" || text == "1" || text == "yes") return true;
      if (text == "off" || text == "false" || text == "0" || text == "no") return false;
      throw UsageError("");
    }
    if (like.is_number_integer()) {
      const long long v = std::stoll(text, &used);
      if (used != text.size()) throw UsageError("");
      return v;
    }
    if (like.is_number() || like.is_null()) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw UsageError("");
      return v;
    }
  } catch (const std::exception&) {
    std::string kind = like.is_boolean()          ? "on or off"
                       : like.is_number_integer() ? "an integer"
                                                  : "a number";
    throw UsageError("--" + flag + ": '" + text + "' is not " + kind);
  }
  return text;
}

Json ParseFlagValue(const Flag& flag, const std::string& text, const Json& like) {
  if (!like.is_array()) return ParseScalar(flag.name, text, like);
  const Json element = like.empty() ? Json(0.0) : like.front();
  Json out = Json::array();
  for (const std::string& part : SplitList(text)) {
    out.push_back(ParseScalar(flag.name, part, element));
  }
  return out;
}

// Config file sections: one keyed by the command name patches the whole
// options object; keys naming a nested options object ("model", "train")
// patch that object.
void ApplyConfig(const Command& cmd, const Json& config, Json& options) {
  if (!config.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : config.items()) {
    if (options.contains(key) && options.at(key).is_object()) {
      options[key].merge_patch(value);
    }
  }
  if (config.contains(cmd.name)) options.merge_patch(config.at(cmd.name));
}

fs::path ManifestPath(const std::string& output) {
  std::string p = output;
  while (p.size() > 1 && p.back() == '/') p.pop_back();
  return fs::path(p + ".manifest.json");
}

struct Logger {
  std::ostream& err;
  bool quiet;
  void operator()(const std::string& line) const {
    if (!quiet) err << line << "\n";
  }
};

std::string Str(const Json& opts, const char* key) { return opts.at(key).get<std::string>(); }

void Require(const Json& opts, const char* key, const char* flag) {
  if (Str(opts, key).empty()) throw UsageError(std::string("--") + flag + " is required");
}

std::optional<Taxonomy> CorpusTaxonomy(const fs::path& dir) {
  const fs::path p = dir / "taxonomy.json";
  if (!fs::exists(p)) return std::nullopt;
  return LoadTaxonomy(p);
}

void RunFixtures(const Json& o, const Logger& log) {
  const fs::path dir = Str(o, "out_dir");
  WriteFile(dir / "taxonomy.json", FixtureTaxonomy().Serialize());
  SaveRules(dir / "rules.json", FixtureRules(o.at("noise").get<double>()));
  log("wrote " + (dir / "taxonomy.json").string() + " and " +
      (dir / "rules.json").string());
}

void RunGen(const Json& o, const Logger& log) {
  StyleRuleSet rules = Str(o, "rules").empty() ? FixtureRules() : LoadRules(Str(o, "rules"));
  if (!o.at("noise").is_null()) rules.noise = o.at("noise").get<double>();
  rules.Validate();
  GenConfig cfg;
  cfg.Update(o);
  const std::vector<GeneratedPost> posts = GenerateDetailed(rules, cfg);
  std::vector<SocialPost> plain;
  std::size_t violating = 0;
  for (const GeneratedPost& gp : posts) {
    plain.push_back(gp.post);
    violating += gp.violating ? 1 : 0;
  }
  WritePosts(Str(o, "out"), plain);
  log("generated " + std::to_string(plain.size()) + " posts (" +
      std::to_string(violating) + " violate a rule)");
}

void RunAnnotate(const Json& o, const Logger& log) {
  const Taxonomy taxonomy = LoadTaxonomy(Str(o, "taxonomy"));
  const std::vector<SocialPost> posts = ReadPosts(Str(o, "in"));
  std::vector<StructuredPost> out;
  for (const SocialPost& p : posts) {
    if (auto s = AnnotatePost(p, taxonomy)) out.push_back(std::move(*s));
  }
  WriteStructuredPosts(Str(o, "out"), out);
  log("annotated " + std::to_string(posts.size()) + " posts, kept " +
      std::to_string(out.size()) + " with at least two items");
}

void RunFilter(const Json& o, const Logger& log) {
  const std::vector<double> w = o.at("weights").get<std::vector<double>>();
  if (w.size() != 3) throw UsageError("--weights needs three values");
  ScoreWeights weights{w[0], w[1], w[2]};
  weights.Validate();
  const std::vector<SocialPost> posts = ReadPosts(Str(o, "in"));
  const std::vector<SocialPost> kept =
      FilterTopPercentile(posts, weights, o.at("percentile").get<double>());
  WritePosts(Str(o, "out"), kept);
  log("kept " + std::to_string(kept.size()) + " of " + std::to_string(posts.size()) +
      " posts");
}

void RunPrepare(const Json& o, const Logger& log) {
  const std::vector<double> r = o.at("ratios").get<std::vector<double>>();
  if (r.size() != 3) throw UsageError("--ratios needs three values");
  const SplitRatios ratios{r[0], r[1], r[2]};
  std::vector<StructuredPost> posts = ReadStructuredPosts(Str(o, "in"));
  const Corpus corpus =
      SplitCorpus(std::move(posts), ratios, o.at("seed").get<std::uint64_t>());
  const fs::path dir = Str(o, "out");
  SaveCorpus(dir, corpus);
  if (!Str(o, "taxonomy").empty()) {
    WriteFile(dir / "taxonomy.json", LoadTaxonomy(Str(o, "taxonomy")).Serialize());
  }
  log("posts train/test/validate: " + std::to_string(corpus.train.posts.size()) + "/" +
      std::to_string(corpus.test.posts.size()) + "/" +
      std::to_string(corpus.validate.posts.size()) + ", examples " +
      std::to_string(corpus.train.examples.size()) + "/" +
      std::to_string(corpus.test.examples.size()) + "/" +
      std::to_string(corpus.validate.examples.size()));
}

void RunMine(const Json& o, const Logger& log) {
  const Granularity g = ParseGranularity(Str(o, "granularity"));
  if (!o.at("min_support").is_number_integer()) {
    throw ConfigError("min_support must be an absolute integer count, got " +
                      o.at("min_support").dump());
  }
  const auto min_support = o.at("min_support").get<std::int64_t>();
  const std::vector<StructuredPost> posts = LoadSplitPosts(Str(o, "corpus"), Str(o, "split"));
  const std::vector<Transaction> db = ToTransactions(posts, g);
  const std::vector<FrequentItemset> frequent = MineFrequent(db, min_support);
  const StyleRuleLexicon lex = BuildLexicon(frequent, g, min_support);
  SaveLexicon(Str(o, "out"), lex);
  log(std::to_string(frequent.size()) + " frequent itemsets, " +
      std::to_string(lex.entries.size()) + " lexicon entries");
}

void RunTrain(const Json& o, const Logger& log) {
  const fs::path dir = Str(o, "corpus");
  const Corpus corpus = LoadCorpus(dir);
  ModelConfig mcfg;
  mcfg.Update(o.at("model"));
  TrainConfig tcfg;
  tcfg.Update(o.at("train"));
  TrainResult result = Train(corpus, mcfg, tcfg, [&log](const EpochRecord& r) {
    std::ostringstream line;
    line << "epoch " << r.epoch << " train_nll " << r.train_nll << " validate_nll "
         << r.validate_nll << " lr " << r.learning_rate;
    log(line.str());
  });
  result.model.taxonomy = CorpusTaxonomy(dir);
  const std::string out = Str(o, "out");
  SaveModel(out, result.model);
  const std::string report = Str(o, "report").empty() ? out + ".report.jsonl" : Str(o, "report");
  WriteFile(report, result.report.ToJsonLines());
  log("best epoch " + std::to_string(result.report.best_epoch) + "; wrote " + out);
}

Taxonomy ResolveTaxonomy(const Json& o, const Model* model, const fs::path& corpus_dir) {
  if (o.contains("taxonomy") && !Str(o, "taxonomy").empty()) {
    return LoadTaxonomy(Str(o, "taxonomy"));
  }
  if (model && model->taxonomy) return *model->taxonomy;
  if (!corpus_dir.empty()) {
    if (auto t = CorpusTaxonomy(corpus_dir)) return *t;
  }
  throw UsageError("--taxonomy is required (no taxonomy embedded in the inputs)");
}

void RunEval(const Json& o, std::ostream& out, const Logger& log) {
  const bool has_model = !Str(o, "model").empty();
  const bool has_lexicon = !Str(o, "lexicon").empty();
  if (has_model == has_lexicon) {
    throw UsageError("exactly one of --model and --lexicon is required");
  }
  const fs::path test_dir = Str(o, "test");
  const std::vector<LabeledExample> examples = LoadSplitExamples(test_dir, Str(o, "split"));
  const Granularity g = ParseGranularity(Str(o, "granularity"));

  EvalReport report;
  if (has_model) {
    const Model model = LoadModel(Str(o, "model"));
    const Taxonomy taxonomy = ResolveTaxonomy(o, &model, test_dir);
    const std::string method = !Str(o, "method").empty() ? Str(o, "method")
                               : model.config.attention  ? "model"
                                                         : "model-no-attention";
    report = Evaluate(method, examples, ModelPredictor(model, taxonomy), g);
    for (int k : o.at("k_neg").get<std::vector<int>>()) {
      const RetrievalResult r = RetrievalExperiment(examples, ModelScorer(model), k,
                                                    o.at("seed").get<std::uint64_t>());
      report.mrr[k] = r.mrr;
    }
    report.train_corpus = fs::path(Str(o, "model")).filename().string();
  } else {
    const StyleRuleLexicon lex = LoadLexicon(Str(o, "lexicon"));
    const Taxonomy taxonomy = ResolveTaxonomy(o, nullptr, test_dir);
    const std::string method = Str(o, "method").empty() ? "apriori" : Str(o, "method");
    report = Evaluate(method, examples, AprioriPredictor(lex, taxonomy), g);
    report.train_corpus = fs::path(Str(o, "lexicon")).filename().string();
  }
  report.test_corpus = test_dir.filename().string() + "/" + Str(o, "split");
  WriteFile(Str(o, "report"), report.Serialize());
  const std::string table = report.ToTable();
  WriteFile(Str(o, "report") + ".txt", table);
  if (!log.quiet) out << table;
}

void RunRetrieval(const Json& o, std::ostream& out, const Logger& log) {
  const Model model = LoadModel(Str(o, "model"));
  const std::vector<LabeledExample> examples = LoadSplitExamples(Str(o, "test"), Str(o, "split"));
  const int k = o.at("k_neg").get<int>();
  const RetrievalResult r = RetrievalExperiment(examples, ModelScorer(model), k,
                                                o.at("seed").get<std::uint64_t>());
  const Json result{{"k_neg", k}, {"mrr", r.mrr}, {"num_queries", r.ranks.size()},
                    {"random_mrr", RandomMrr(k)}, {"random_recall_at_1", RandomRecallAt1(k)}};
  if (!Str(o, "out").empty()) WriteFile(Str(o, "out"), result.dump(2) + "\n");
  if (!log.quiet) out << result.dump() << "\n";
}

std::shared_ptr<ServiceSnapshot> LoadSnapshot(const Json& o) {
  auto snap = std::make_shared<ServiceSnapshot>();
  snap->model = LoadModel(Str(o, "model"));
  snap->taxonomy = ResolveTaxonomy(o, &snap->model, {});
  if (!Str(o, "lexicon").empty()) snap->lexicon = LoadLexicon(Str(o, "lexicon"));
  return snap;
}

void RunRecommend(const Json& o, std::ostream& out) {
  const auto snap = LoadSnapshot(o);
  Json body{{"items", Json::array()}, {"k", o.at("k")}, {"method", o.at("method")}};
  for (const std::string& item : SplitList(Str(o, "query"))) {
    if (item.find_first_not_of(" \t") != std::string::npos) body["items"].push_back(item);
  }
  CompletionRequest request;
  try {
    request = ParseCompletionRequest(body.dump());
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const Json response = RunCompletion(*snap, request);
  if (o.at("json").get<bool>()) {
    out << response.dump() << "\n";
    return;
  }
  for (const std::string& w : response.at("warnings")) out << "warning: " << w << "\n";
  int rank = 1;
  for (const Json& c : response.at("candidates")) {
    out << rank++ << "\t" << c.at("item").get<std::string>() << "\t";
    if (c.contains("logprob")) {
      out << c.at("logprob").dump();
    } else {
      out << "support=" << c.at("support").dump();
    }
    out << "\n";
  }
}

void RunServe(const Json& o, const Logger& log) {
  CompletionService service;
  HttpServer server(service);
  const int port = server.Bind(Str(o, "host"), o.at("port").get<int>());
  if (port < 0) throw DataError("serve: cannot bind " + Str(o, "host"));
  log("listening on " + Str(o, "host") + ":" + std::to_string(port));
  std::exception_ptr load_error;
  std::thread loader([&] {
    try {
      service.Load(LoadSnapshot(o));
      log("model loaded");
    } catch (...) {
      load_error = std::current_exception();
      server.Stop();
    }
  });
  server.Serve();
  loader.join();
  if (load_error) std::rethrow_exception(load_error);
}

}  // namespace

void Execute(const std::string& command, const Json& options, std::ostream& out,
             std::ostream& err, bool quiet) {
  const Command& cmd = FindCommand(command);
  for (const Flag& f : cmd.flags) {
    if (!f.required) continue;
    const Json& v = options.at(Json::json_pointer(f.pointer));
    if (v.is_null() || (v.is_string() && v.get<std::string>().empty())) {
      throw UsageError("--" + f.name + " is required");
    }
  }
  const Logger log{err, quiet};
  if (command == "fixtures") {
    RunFixtures(options, log);
  } else if (command == "gen") {
    RunGen(options, log);
  } else if (command == "annotate") {
    RunAnnotate(options, log);
  } else if (command == "filter") {
    RunFilter(options, log);
  } else if (command == "prepare") {
    RunPrepare(options, log);
  } else if (command == "mine") {
    RunMine(options, log);
  } else if (command == "train") {
    RunTrain(options, log);
  } else if (command == "eval") {
    RunEval(options, out, log);
  } else if (command == "retrieval") {
    RunRetrieval(options, out, log);
  } else if (command == "recommend") {
    RunRecommend(options, out);
  } else if (command == "serve") {
    RunServe(options, log);
  }
}

namespace {

void WriteManifest(const Command& cmd, const Json& options,
                   const std::vector<std::string>& args, double seconds) {
  if (cmd.manifest_of.empty()) return;
  const std::string output = options.at(Json::json_pointer(cmd.manifest_of)).get<std::string>();
  if (output.empty()) return;
  Json seed = nullptr;
  if (!cmd.seed_pointers.empty()) seed = options.at(Json::json_pointer(cmd.seed_pointers[0]));
  const Json manifest{{"argv", args},       {"command", cmd.name},
                      {"options", options}, {"seed", seed},
                      {"version", kVersion}, {"wall_time_seconds", seconds}};
  WriteFile(ManifestPath(output), manifest.dump(2) + "\n");
}

int Timed(const Command& cmd, const Json& options, const std::vector<std::string>& args,
          std::ostream& out, std::ostream& err, bool quiet) {
  const auto start = std::chrono::steady_clock::now();
  Execute(cmd.name, options, out, err, quiet);
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  WriteManifest(cmd, options, args, took.count());
  return kExitOk;
}

int RunParsed(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stylecomp: fashion itemset completion toolkit", "stylecomp"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed;
  std::string config_path;
  bool quiet = false;
  app.add_option("--seed", seed, "seed for every random stream of the command");
  app.add_option("--config", config_path, "JSON config file");
  app.add_flag("--quiet", quiet, "suppress progress output");

  const std::vector<Command> cmds = Commands();
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, CLI::Option*>> opts;
  std::map<std::string, CLI::App*> subs;
  for (const Command& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    subs[cmd.name] = sub;
    for (const Flag& f : cmd.flags) {
      const std::string help = f.required ? f.help + " (required)" : f.help;
      opts[cmd.name][f.name] = sub->add_option("--" + f.name, values[cmd.name][f.name], help);
    }
  }
  std::string manifest_path;
  std::vector<std::string> sets;
  CLI::App* rerun = app.add_subcommand("rerun", "re-execute a run from its manifest");
  rerun->add_option("--manifest", manifest_path, "manifest file")->required();
  rerun->add_option("--set", sets, "override an option: pointer=value (e.g. out=b.ckpt)");

  std::vector<const char*> argv;
  argv.push_back("stylecomp");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (rerun->parsed()) {
    const Json manifest = ParseJson(ReadFile(manifest_path), manifest_path);
    const Command& cmd = FindCommand(manifest.at("command").get<std::string>());
    Json options = manifest.at("options");
    for (const std::string& s : sets) {
      const std::size_t eq = s.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects pointer=value");
      const Json::json_pointer ptr("/" + s.substr(0, eq));
      if (!options.contains(ptr)) throw UsageError("--set: unknown option '" + s.substr(0, eq) + "'");
      options[ptr] = ParseFlagValue({s.substr(0, eq), "", ""}, s.substr(eq + 1), options.at(ptr));
    }
    std::vector<std::string> rerun_args = {"rerun", "--manifest", manifest_path};
    for (const std::string& s : sets) {
      rerun_args.push_back("--set");
      rerun_args.push_back(s);
    }
    return Timed(cmd, options, rerun_args, out, err, quiet);
  }

  for (const Command& cmd : cmds) {
    if (!subs[cmd.name]->parsed()) continue;
    Json options = cmd.defaults;
    if (!config_path.empty()) {
      ApplyConfig(cmd, ParseJson(ReadFile(config_path), config_path), options);
    }
    for (const Flag& f : cmd.flags) {
      if (opts[cmd.name][f.name]->count() == 0) continue;
      const Json::json_pointer ptr(f.pointer);
      options[ptr] = ParseFlagValue(f, values[cmd.name][f.name], options.at(ptr));
    }
    if (seed) {
      for (const std::string& p : cmd.seed_pointers) options[Json::json_pointer(p)] = *seed;
    }
    return Timed(cmd, options, args, out, err, quiet);
  }
  return kExitUsage;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return RunParsed(args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace stylecomp::cli

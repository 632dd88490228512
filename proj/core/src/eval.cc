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

#include "stylecomp/eval.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "stylecomp/annotator.h"
#include "stylecomp/decoding.h"
#include "stylecomp/errors.h"
#include "stylecomp/rng.h"

namespace stylecomp {

double Jss(const TokenSet& truth, const TokenSet& pred) {
  if (truth.empty()) throw InvalidArgument("jss: empty truth set");
  std::size_t common = 0;
  for (const std::string& t : pred) common += truth.contains(t) ? 1 : 0;
  const std::size_t uni = truth.size() + pred.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

double JssAtK(const TokenSet& truth, std::span<const TokenSet> preds, int k) {
  if (truth.empty()) throw InvalidArgument("jss_at_k: empty truth set");
  if (k < 1) throw InvalidArgument("jss_at_k: k must be >= 1");
  double best = 0.0;
  const std::size_t n = std::min(preds.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, Jss(truth, preds[i]));
  return best;
}

double Mrr(std::span<const int> ranks) {
  if (ranks.empty()) throw InvalidArgument("mrr: empty rank list");
  double sum = 0.0;
  for (int r : ranks) {
    if (r < 1) throw InvalidArgument("mrr: rank " + std::to_string(r) + " < 1");
    sum += 1.0 / r;
  }
  return sum / static_cast<double>(ranks.size());
}

int PessimisticRank(double truth_score, std::span<const double> negative_scores) {
  int rank = 1;
  for (double s : negative_scores) rank += s >= truth_score ? 1 : 0;
  return rank;
}

TokenSet ItemTokens(const AttributedItem& item, Granularity g) {
  const std::vector<std::string> words = ProjectItem(item, g).Words();
  return TokenSet(words.begin(), words.end());
}

TokenSet Prediction::Tokens(Granularity g) const {
  if (item) return ItemTokens(*item, g);
  return TokenSet(words.begin(), words.end());
}

namespace {

Prediction ParsePrediction(std::vector<std::string> words, const Taxonomy& taxonomy) {
  Prediction p;
  std::string text;
  for (const std::string& w : words) text += (text.empty() ? "" : " ") + w;
  const std::vector<AttributedItem> parsed = Annotate(text, taxonomy);
  if (parsed.size() == 1 && parsed.front().Words() == words) p.item = parsed.front();
  p.words = std::move(words);
  return p;
}

std::vector<std::string> SplitWords(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

Predictor ModelPredictor(const Model& model, const Taxonomy& taxonomy, int k) {
  return [&model, &taxonomy, k](const LabeledExample& ex) {
    std::vector<Prediction> out;
    Completion completion;
    try {
      completion = CompleteItemset(ex.inputs, model, taxonomy, k);
    } catch (const DataError&) {
      return out;
    }
    for (Candidate& c : completion.candidates) {
      out.push_back({std::move(c.item), std::move(c.words)});
    }
    return out;
  };
}

Predictor AprioriPredictor(const StyleRuleLexicon& lexicon, const Taxonomy& taxonomy,
                           int k) {
  return [&lexicon, &taxonomy, k](const LabeledExample& ex) {
    std::vector<std::string> query;
    for (const AttributedItem& item : ex.inputs) {
      query.push_back(Project(item, lexicon.granularity));
    }
    std::vector<Prediction> out;
    for (const CoItem& c : Recommend(lexicon, query, k)) {
      out.push_back(ParsePrediction(SplitWords(c.item), taxonomy));
    }
    return out;
  };
}

double RandomRecallAt1(int k_neg) { return 1.0 / (k_neg + 1); }

double RandomMrr(int k_neg) {
  double h = 0.0;
  for (int r = 1; r <= k_neg + 1; ++r) h += 1.0 / r;
  return h / (k_neg + 1);
}

EvalReport Evaluate(const std::string& method,
                    std::span<const LabeledExample> examples,
                    const Predictor& predictor, Granularity granularity) {
  if (examples.empty()) throw InvalidArgument("evaluate: empty test set");
  EvalReport report;
  report.method = method;
  report.granularity = granularity;
  report.num_examples = static_cast<std::int64_t>(examples.size());

  std::map<Granularity, std::vector<double>> sums;
  for (Granularity g : kAllGranularities) sums[g].assign(kMaxReportK, 0.0);
  for (const LabeledExample& ex : examples) {
    const std::vector<Prediction> preds = predictor(ex);
    if (preds.empty()) ++report.nil_predictions;
    for (Granularity g : kAllGranularities) {
      const TokenSet truth = ItemTokens(ex.target, g);
      std::vector<TokenSet> pred_sets;
      for (const Prediction& p : preds) pred_sets.push_back(p.Tokens(g));
      // Running max over the prefix gives every k in one pass.
      double best = 0.0;
      for (int k = 1; k <= kMaxReportK; ++k) {
        if (static_cast<std::size_t>(k) <= pred_sets.size()) {
          best = std::max(best, Jss(truth, pred_sets[k - 1]));
        }
        sums[g][k - 1] += best;
      }
    }
  }
  const double n = static_cast<double>(examples.size());
  for (Granularity g : kAllGranularities) {
    std::vector<double>& curve = sums[g];
    for (double& v : curve) v /= n;
    report.per_granularity[std::string(GranularityName(g))] = curve;
  }
  report.jss_at_k = sums[granularity];
  return report;
}

Json EvalReport::ToJson() const {
  Json j_mrr = Json::object();
  Json j_recall = Json::object();
  Json j_random_mrr = Json::object();
  for (const auto& [k, v] : mrr) j_mrr[std::to_string(k)] = v;
  for (int k = 1; k <= kMaxNegatives; ++k) {
    j_recall[std::to_string(k)] = RandomRecallAt1(k);
    j_random_mrr[std::to_string(k)] = RandomMrr(k);
  }
  return Json{{"granularity", std::string(GranularityName(granularity))},
              {"jss_at_k", jss_at_k},
              {"method", method},
              {"mrr", std::move(j_mrr)},
              {"nil_predictions", nil_predictions},
              {"num_examples", num_examples},
              {"per_granularity", per_granularity},
              {"random_mrr", std::move(j_random_mrr)},
              {"random_recall_at_1", std::move(j_recall)},
              {"test_corpus", test_corpus},
              {"train_corpus", train_corpus}};
}

std::string EvalReport::Serialize() const { return ToJson().dump(2) + "\n"; }

std::string EvalReport::ToTable() const {
  std::string out;
  char buf[64];
  out += "method: " + method + "  examples: " + std::to_string(num_examples) +
         "  nil: " + std::to_string(nil_predictions) + "\n";
  if (!train_corpus.empty() || !test_corpus.empty()) {
    out += "train: " + train_corpus + "  test: " + test_corpus + "\n";
  }
  out += "JSS@k (x axis: number of recommendations)\n";
  out += "granularity";
  for (int k = 1; k <= kMaxReportK; ++k) {
    std::snprintf(buf, sizeof buf, "%8d", k);
    out += buf;
  }
  out += "\n";
  for (const auto& [name, curve] : per_granularity) {
    std::snprintf(buf, sizeof buf, "%-11s", name.c_str());
    out += buf;
    for (double v : curve) {
      std::snprintf(buf, sizeof buf, "%8.4f", v);
      out += buf;
    }
    out += "\n";
  }
  if (!mrr.empty()) {
    out += "MRR by negatives     model  random_mrr  random_recall@1\n";
    for (const auto& [k, v] : mrr) {
      std::snprintf(buf, sizeof buf, "%-16d %9.4f %11.4f %16.4f\n", k, v,
                    RandomMrr(k), RandomRecallAt1(k));
      out += buf;
    }
  }
  return out;
}

LabelScorer ModelScorer(const Model& model) {
  return [&model](const LabeledExample& query, const AttributedItem& label) {
    const std::vector<int> src = EncodeSource(query.inputs, model.vocab.source);
    const std::vector<int> tgt = EncodeTarget(label, model.vocab.target);
    return SequenceLogprob(model, src, tgt);
  };
}

RetrievalResult RetrievalExperiment(std::span<const LabeledExample> examples,
                                    const LabelScorer& scorer, int k_neg,
                                    std::uint64_t seed) {
  if (examples.empty()) throw InvalidArgument("retrieval: empty test set");
  if (k_neg < 1) throw InvalidArgument("retrieval: k_neg must be >= 1");
  std::set<AttributedItem> unique;
  for (const LabeledExample& ex : examples) unique.insert(ex.target);
  const std::vector<AttributedItem> pool(unique.begin(), unique.end());
  if (pool.size() < static_cast<std::size_t>(k_neg) + 1) {
    throw InvalidArgument("retrieval: label pool has " + std::to_string(pool.size()) +
                          " distinct targets, need at least " +
                          std::to_string(k_neg + 1));
  }

  RetrievalResult result;
  result.k_neg = k_neg;
  Rng rng(seed);
  std::vector<std::size_t> chosen;
  std::vector<double> neg_scores;
  for (const LabeledExample& ex : examples) {
    chosen.clear();
    while (chosen.size() < static_cast<std::size_t>(k_neg)) {
      const std::size_t idx = rng.Below(pool.size());
      if (pool[idx] == ex.target) continue;
      if (std::find(chosen.begin(), chosen.end(), idx) != chosen.end()) continue;
      chosen.push_back(idx);
    }
    const double truth = scorer(ex, ex.target);
    neg_scores.clear();
    for (std::size_t idx : chosen) neg_scores.push_back(scorer(ex, pool[idx]));
    result.ranks.push_back(PessimisticRank(truth, neg_scores));
  }
  result.mrr = Mrr(result.ranks);
  return result;
}

}  // namespace stylecomp

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

#ifndef STYLECOMP_EVAL_H_
#define STYLECOMP_EVAL_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "stylecomp/apriori.h"
#include "stylecomp/corpus.h"
#include "stylecomp/io.h"
#include "stylecomp/model.h"
#include "stylecomp/taxonomy.h"

namespace stylecomp {

using TokenSet = std::set<std::string>;

inline constexpr int kMaxReportK = 10;
inline constexpr int kMaxNegatives = 4;

// |A ∩ P| / |A ∪ P|. Throws InvalidArgument when `truth` is empty.
double Jss(const TokenSet& truth, const TokenSet& pred);

// Best Jss among the first k predictions; 0 when there are none.
double JssAtK(const TokenSet& truth, std::span<const TokenSet> preds, int k);

// Mean of 1/rank. Throws InvalidArgument on an empty list or a rank < 1.
double Mrr(std::span<const int> ranks);

// 1 + the number of negatives scoring at least as high as the truth, so
// ties count against the truth.
int PessimisticRank(double truth_score, std::span<const double> negative_scores);

// Word set of an item after projection.
TokenSet ItemTokens(const AttributedItem& item, Granularity g);

// One ranked output of a method. Outputs that do not parse as an item keep
// their raw words, which are used unchanged at every granularity.
struct Prediction {
  std::optional<AttributedItem> item;
  std::vector<std::string> words;

  TokenSet Tokens(Granularity g) const;
};

using Predictor = std::function<std::vector<Prediction>(const LabeledExample&)>;

// Beam completions (width k). A query with no known word yields no
// predictions instead of an error.
Predictor ModelPredictor(const Model& model, const Taxonomy& taxonomy,
                         int k = kMaxReportK);

// Inputs projected to the lexicon granularity, recommended co-items parsed
// back with the annotator.
Predictor AprioriPredictor(const StyleRuleLexicon& lexicon, const Taxonomy& taxonomy,
                           int k = kMaxReportK);

struct EvalReport {
  std::string method;
  Granularity granularity = Granularity::kFull;
  std::vector<double> jss_at_k;  // k = 1..10 at `granularity`
  std::map<std::string, std::vector<double>> per_granularity;
  std::map<int, double> mrr;  // by number of negatives
  std::string train_corpus;
  std::string test_corpus;
  std::int64_t num_examples = 0;
  std::int64_t nil_predictions = 0;  // examples with no output at all

  Json ToJson() const;
  // Sorted-key JSON with a trailing newline.
  std::string Serialize() const;
  // JSS@k rows per granularity, then MRR rows against both random
  // reference lines.
  std::string ToTable() const;
};

// Chance levels for `k_neg` uniformly ranked negatives: recall@1 = 1/(k+1)
// and MRR = H(k+1)/(k+1).
double RandomRecallAt1(int k_neg);
double RandomMrr(int k_neg);

// Runs the predictor once per example and averages JssAtK for k = 1..10 at
// every granularity. Throws InvalidArgument on an empty test set.
EvalReport Evaluate(const std::string& method,
                    std::span<const LabeledExample> examples,
                    const Predictor& predictor, Granularity granularity);

// Scores a candidate label (a target item) for a query's inputs.
using LabelScorer =
    std::function<double(const LabeledExample& query, const AttributedItem& label)>;

// Teacher-forced sequence log probability under the model.
LabelScorer ModelScorer(const Model& model);

struct RetrievalResult {
  int k_neg = 0;
  double mrr = 0.0;
  std::vector<int> ranks;
};

// For every example, k_neg distinct negatives are drawn uniformly from the
// distinct targets of `examples` other than its own, and the truth is
// ranked against them by score. Deterministic in `seed`. Throws
// InvalidArgument when the label pool has fewer than k_neg + 1 items or the
// test set is empty.
RetrievalResult RetrievalExperiment(std::span<const LabeledExample> examples,
                                    const LabelScorer& scorer, int k_neg,
                                    std::uint64_t seed);

}  // namespace stylecomp

#endif  // STYLECOMP_EVAL_H_

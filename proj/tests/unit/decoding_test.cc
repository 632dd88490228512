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

#include "stylecomp/decoding.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "stylecomp/errors.h"
#include "stylecomp/training.h"
#include "test_util.h"

namespace stylecomp {
namespace {

using testing::RandomModel;

const std::vector<int> kSrc{5, 6, kEoi};

TEST(Decoding, DecodableTokens) {
  EXPECT_FALSE(IsDecodableToken(kPad, 1));
  EXPECT_FALSE(IsDecodableToken(kSos, 2));
  EXPECT_FALSE(IsDecodableToken(kEoi, 2));
  EXPECT_FALSE(IsDecodableToken(kUnk, 2));
  EXPECT_FALSE(IsDecodableToken(kEos, 1));
  EXPECT_TRUE(IsDecodableToken(kEos, 2));
  EXPECT_TRUE(IsDecodableToken(5, 1));
}

TEST(BeamSearch, Preconditions) {
  const Model m = RandomModel(3, 3, 3, 3, true, 1);
  EXPECT_THROW(BeamSearch(m, std::vector<int>{}, {}), InvalidArgument);
  EXPECT_THROW(BeamSearch(m, kSrc, {.width = 0}), InvalidArgument);
  EXPECT_THROW(BeamSearch(m, kSrc, {.width = 2, .max_len = 0}), InvalidArgument);
}

TEST(BeamSearch, WidthOneIsGreedy) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Model m = RandomModel(4, 5, 4, 5, seed % 2 == 1, seed, 1.5);
    const auto beam = BeamSearch(m, kSrc, {.width = 1, .max_len = 5});
    ASSERT_EQ(beam.size(), 1u);
    const Hypothesis greedy = GreedyDecode(m, kSrc, 5);
    EXPECT_EQ(beam[0].tokens, greedy.tokens) << seed;
    EXPECT_NEAR(beam[0].logprob, greedy.logprob, 1e-12);
  }
}

// Every sequence of at most max_len decodable tokens is enumerated and
// scored; finished ones end in <eos>, the rest are force-finished at
// max_len.
std::vector<std::pair<double, std::vector<int>>> Enumerate(const Model& m, int max_len) {
  std::vector<std::pair<double, std::vector<int>>> out;
  std::vector<std::vector<int>> frontier{{}};
  for (int step = 1; step <= max_len; ++step) {
    std::vector<std::vector<int>> next;
    for (const auto& p : frontier) {
      for (int t = 0; t < m.vocab.target.size(); ++t) {
        if (!IsDecodableToken(t, step)) continue;
        std::vector<int> q = p;
        q.push_back(t);
        if (t == kEos || step == max_len) {
          out.emplace_back(ScoreTokens(m, kSrc, q), q);
        } else {
          next.push_back(q);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  return out;
}

TEST(BeamSearch, FullWidthMatchesExhaustiveSearch) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Model m = RandomModel(3, 3, 3, 4, seed % 2 == 0, seed, 2.0, 2);
    const auto all = Enumerate(m, 2);
    // Three words at step 1 (no <eos> yet), then three words or <eos>.
    ASSERT_EQ(all.size(), 12u);
    const auto beam = BeamSearch(m, kSrc, {.width = 12, .max_len = 2});
    ASSERT_EQ(beam.size(), all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      EXPECT_EQ(beam[i].tokens, all[i].second) << "seed " << seed << " rank " << i;
      EXPECT_NEAR(beam[i].logprob, all[i].first, 1e-12);
    }
    const auto top = BeamSearch(m, kSrc, {.width = 9, .max_len = 2});
    EXPECT_EQ(top.front().tokens, all.front().second);
  }
}

TEST(BeamSearch, ScoresSortedAndSelfConsistent) {
  const Model m = RandomModel(4, 6, 4, 6, true, 77, 1.0);
  const auto hyps = BeamSearch(m, kSrc, {.width = 6, .max_len = 4});
  ASSERT_FALSE(hyps.empty());
  EXPECT_LE(hyps.size(), 6u);
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    EXPECT_TRUE(hyps[i].finished);
    EXPECT_LE(hyps[i].logprob, 0.0);
    EXPECT_NEAR(hyps[i].logprob, ScoreTokens(m, kSrc, hyps[i].tokens), 1e-9);
    if (i) EXPECT_GE(hyps[i - 1].logprob, hyps[i].logprob);
  }
}

TEST(BeamSearch, LengthNormalizationReordersByMeanLogprob) {
  const Model m = RandomModel(4, 6, 4, 6, true, 5, 1.0);
  const auto hyps = BeamSearch(m, kSrc, {.width = 5, .max_len = 4, .length_normalize = true});
  for (std::size_t i = 1; i < hyps.size(); ++i) {
    EXPECT_GE(hyps[i - 1].logprob / static_cast<double>(hyps[i - 1].tokens.size()),
              hyps[i].logprob / static_cast<double>(hyps[i].tokens.size()) - 1e-12);
  }
}

TEST(BeamSearch, OverfitModelReturnsItsTarget) {
  const auto examples = testing::OverfitExamples(1);
  const Vocabularies vocab = BuildVocab(examples);
  const auto train = EncodeAll(examples, vocab);
  ModelConfig mc;
  mc.embedding_dim = 8;
  mc.hidden_dim = 8;
  mc.init_scale = 0.1;
  TrainConfig tc;
  tc.epochs = 60;
  tc.learning_rate = 1.0;
  tc.lr_decay = 1.0;
  tc.early_stop_patience = 60;
  const Model m = TrainModel(MakeModel(mc, vocab), train, train, tc).model;
  const auto hyps = BeamSearch(m, train[0].source_ids, {.width = 3, .max_len = 6});
  ASSERT_FALSE(hyps.empty());
  const std::vector<int> expected(train[0].target_ids.begin() + 1, train[0].target_ids.end());
  EXPECT_EQ(hyps[0].tokens, expected);
}

TEST(CompleteItemset, UniformModelGivesEqualScores) {
  const Taxonomy& t = FixtureTaxonomy();
  Vocabularies v;
  for (const char* w : {"red", "dress", "black", "bag"}) {
    v.source.Add(w);
    v.target.Add(w);
  }
  ModelConfig mc;
  mc.embedding_dim = 3;
  mc.hidden_dim = 3;
  mc.init_scale = 0.0;
  mc.max_target_len = 2;
  const Model m = MakeModel(mc, v);
  const std::vector<AttributedItem> q{{"dress", "red", std::nullopt}};
  const Completion c = CompleteItemset(q, m, t, 3);
  ASSERT_EQ(c.candidates.size(), 3u);
  for (const Candidate& cand : c.candidates) {
    EXPECT_NEAR(cand.score, 1.0 / 3, 1e-12);
    EXPECT_NEAR(cand.logprob, c.candidates[0].logprob, 1e-12);
  }
}

TEST(CompleteItemset, ParsesCandidatesAndReportsUnknowns) {
  const Taxonomy& t = FixtureTaxonomy();
  Vocabularies v;
  for (const char* w : {"red", "floral", "dress", "black", "leather", "bag"}) {
    v.source.Add(w);
    v.target.Add(w);
  }
  ModelConfig mc;
  mc.embedding_dim = 4;
  mc.hidden_dim = 5;
  mc.init_scale = 1.0;
  mc.max_target_len = 3;
  const Model m = MakeModel(mc, v);
  const std::vector<AttributedItem> q{{"dress", "red", "floral"}, {"skirt", std::nullopt, std::nullopt}};
  const Completion c = CompleteItemset(q, m, t, 5);
  EXPECT_EQ(c.unknown_words, std::vector<std::string>{"skirt"});
  ASSERT_LE(c.candidates.size(), 5u);
  double total = 0;
  for (std::size_t i = 0; i < c.candidates.size(); ++i) {
    const Candidate& cand = c.candidates[i];
    total += cand.score;
    if (i) EXPECT_GE(c.candidates[i - 1].score, cand.score);
    EXPECT_EQ(cand.raw, !cand.item.has_value());
    if (cand.item) EXPECT_EQ(cand.item->Words(), cand.words);
  }
  EXPECT_NEAR(total, 1.0, 1e-9);

  const std::vector<AttributedItem> unknown{{"skirt", std::nullopt, std::nullopt}};
  EXPECT_THROW(CompleteItemset(unknown, m, t, 3), DataError);
}

}  // namespace
}  // namespace stylecomp

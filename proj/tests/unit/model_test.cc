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

#include "stylecomp/model.h"

#include <gtest/gtest.h>

#include <cmath>

#include "stylecomp/errors.h"
#include "stylecomp/rng.h"
#include "test_util.h"

namespace stylecomp {
namespace {

using testing::RandomModel;
using testing::TinyVocab;

Model ZeroModel(int tgt, bool attention) {
  return RandomModel(3, tgt, 4, 5, attention, 1, /*scale=*/0.0);
}

TEST(ModelConfig, Validation) {
  ModelConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.hidden_dim = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  ModelConfig d;
  d.init_scale = -1;
  EXPECT_THROW(d.Validate(), ConfigError);
  ModelConfig e;
  e.Update(ModelConfig{.embedding_dim = 3}.ToJson());
  EXPECT_EQ(e.embedding_dim, 3);
}

TEST(InitParams, DeterministicAndInRange) {
  const Model a = RandomModel(4, 5, 6, 7, true, 12, 0.08);
  const Model b = RandomModel(4, 5, 6, 7, true, 12, 0.08);
  const Model c = RandomModel(4, 5, 6, 7, true, 13, 0.08);
  EXPECT_TRUE(a.params == b.params);
  EXPECT_FALSE(a.params == c.params);
  for (const Parameter* p : a.params.All()) {
    for (double v : p->value.values()) {
      EXPECT_GE(v, -0.08);
      EXPECT_LE(v, 0.08);
    }
  }
  const Model zero = ZeroModel(3, true);
  for (const Parameter* p : zero.params.All()) {
    for (double v : p->value.values()) EXPECT_EQ(v, 0.0);
  }
}

TEST(InitParams, OutputWidthFollowsAttention) {
  EXPECT_EQ(RandomModel(2, 3, 4, 5, true, 1).params.output_weight.value.shape(), (Shape{8, 10}));
  EXPECT_EQ(RandomModel(2, 3, 4, 5, false, 1).params.output_weight.value.shape(), (Shape{8, 5}));
}

TEST(Encode, ZeroParamsGiveZeroStates) {
  const Model m = ZeroModel(3, true);
  const EncoderStates enc = Encode(m, std::vector<int>{5, 6, kEoi});
  ASSERT_EQ(enc.size(), 3u);
  for (const Tensor& h : enc.hidden) EXPECT_EQ(h, Tensor({5}));
  EXPECT_EQ(Encode(m, std::vector<int>{5}).size(), 1u);
}

TEST(Encode, PrefixProperty) {
  const Model m = RandomModel(4, 3, 4, 5, true, 3);
  const EncoderStates one = Encode(m, std::vector<int>{6});
  const EncoderStates two = Encode(m, std::vector<int>{6, 7});
  EXPECT_EQ(one.hidden[0], two.hidden[0]);
  EXPECT_EQ(one.cell[0], two.cell[0]);
}

TEST(Encode, Errors) {
  const Model m = RandomModel(2, 2, 3, 3, true, 1);
  EXPECT_THROW(Encode(m, std::vector<int>{}), InvalidArgument);
  EXPECT_THROW(Encode(m, std::vector<int>{99}), IndexError);
}

TEST(Attend, Examples) {
  EncoderStates one;
  one.hidden = {Tensor::Vector({1, 2})};
  one.cell = one.hidden;
  AttentionResult r = Attend(Tensor::Vector({0.3, 0.4}), one);
  EXPECT_EQ(r.weights, Tensor::Vector({1.0}));
  EXPECT_EQ(r.query, Tensor::Vector({1, 2}));

  EncoderStates twin;
  twin.hidden = {Tensor::Vector({1, 2}), Tensor::Vector({1, 2})};
  twin.cell = twin.hidden;
  EXPECT_EQ(Attend(Tensor::Vector({3, -1}), twin).weights, Tensor::Vector({0.5, 0.5}));

  EncoderStates ortho;
  ortho.hidden = {Tensor::Vector({1, 0, 0}), Tensor::Vector({0, 2, 0}), Tensor::Vector({0, 5, 0})};
  ortho.cell = ortho.hidden;
  const Tensor w = Attend(Tensor::Vector({0, 0, 1}), ortho).weights;
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(w[i], 1.0 / 3);

  EXPECT_THROW(Attend(Tensor::Vector({1}), EncoderStates{}), InvalidArgument);
}

TEST(DecodeStep, ZeroParamsUniform) {
  for (bool att : {true, false}) {
    const Model m = ZeroModel(6, att);
    const EncoderStates enc = Encode(m, std::vector<int>{5, kEoi});
    const StepResult s = DecodeStep(m, kSos, enc.Final(), enc);
    const Tensor p = s.Probabilities();
    for (double v : p.values()) EXPECT_NEAR(v, 1.0 / 11, 1e-15);
  }
}

TEST(DecodeStep, ProbabilitiesSumToOneAndAttentionIsDistribution) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Model m = RandomModel(5, 6, 4, 5, seed % 2 == 0, seed, 1.0);
    const EncoderStates enc = Encode(m, std::vector<int>{5, 6, kEoi, 7, kEoi});
    const StepResult s = DecodeStep(m, kSos, enc.Final(), enc);
    const Tensor probs = s.Probabilities();
    double sum = 0;
    for (double v : probs.values()) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-9);
    if (s.attention) {
      double a = 0;
      for (double v : s.attention->weights.values()) {
        EXPECT_GE(v, 0.0);
        a += v;
      }
      EXPECT_NEAR(a, 1.0, 1e-12);
    }
  }
}

TEST(DecodeStep, AttentionOffEqualsZeroQueryBlock) {
  Model on = RandomModel(3, 4, 4, 5, true, 8, 0.7);
  Model off = on;
  off.config.attention = false;
  const std::size_t n = on.hidden();
  Tensor w_off({on.params.output_weight.value.rows(), n});
  for (std::size_t r = 0; r < w_off.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      w_off.at(r, c) = on.params.output_weight.value.at(r, n + c);
      on.params.output_weight.value.at(r, c) = 0.0;  // q block
    }
  }
  off.params.output_weight = Parameter("output_weight", w_off);
  const std::vector<int> src{5, 6, kEoi};
  const std::vector<int> tgt{kSos, 6, 7, kEos};
  EXPECT_NEAR(SequenceLogprob(on, src, tgt), SequenceLogprob(off, src, tgt), 1e-12);
}

TEST(DecodeStep, WidthMismatchIsConfigError) {
  Model m = RandomModel(3, 3, 4, 5, true, 1);
  m.config.attention = false;
  const EncoderStates enc = Encode(m, std::vector<int>{5});
  EXPECT_THROW(DecodeStep(m, kSos, enc.Final(), enc), ConfigError);
}

TEST(SequenceLogprob, UniformModel) {
  const Model m = ZeroModel(4, true);
  const std::vector<int> tgt{kSos, 5, 6, kEos};
  EXPECT_NEAR(SequenceLogprob(m, std::vector<int>{5}, tgt), -3 * std::log(9.0), 1e-12);
  EXPECT_THROW(SequenceLogprob(m, std::vector<int>{5}, std::vector<int>{kSos, kEos}), InvalidArgument);
}

TEST(SequenceLogprob, SumOfStepLogProbs) {
  const Model m = RandomModel(4, 4, 4, 6, true, 21, 0.9);
  const std::vector<int> src{5, 7, kEoi};
  const std::vector<int> tgt{kSos, 6, 8, 5, kEos};
  const EncoderStates enc = Encode(m, src);
  LstmState state = enc.Final();
  double sum = 0;
  for (std::size_t j = 1; j < tgt.size(); ++j) {
    const StepResult s = DecodeStep(m, tgt[j - 1], state, enc);
    sum += s.log_probs[tgt[j]];
    state = s.state;
  }
  EXPECT_NEAR(SequenceLogprob(m, src, tgt), sum, 1e-12);
  EXPECT_LE(SequenceLogprob(m, src, tgt), 0.0);
  EXPECT_NEAR(ScoreTokens(m, src, std::vector<int>(tgt.begin() + 1, tgt.end())), sum, 1e-12);
}

// Summing exp(logprob) over every <eos>-terminated sequence up to length L
// plus the mass of all length-L prefixes that have not ended must give 1.
TEST(SequenceLogprob, ChainIsNormalized) {
  const Model m = RandomModel(3, 3, 3, 4, true, 5, 1.0);
  const int v = m.vocab.target.size();
  const std::vector<int> src{5, kEoi};
  const int max_len = 3;
  double mass = 0;
  std::vector<std::vector<int>> prefixes{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& p : prefixes) {
      std::vector<int> ended = p;
      ended.push_back(kEos);
      mass += std::exp(ScoreTokens(m, src, ended));
      for (int t = 0; t < v; ++t) {
        if (t == kEos) continue;
        std::vector<int> q = p;
        q.push_back(t);
        next.push_back(q);
      }
    }
    prefixes = std::move(next);
  }
  for (const auto& p : prefixes) mass += std::exp(ScoreTokens(m, src, p));
  EXPECT_NEAR(mass, 1.0, 1e-6);
}

TEST(AttentionTrace, OnePerStepAndEmptyWhenOff) {
  const Model on = RandomModel(3, 3, 3, 4, true, 2);
  const std::vector<int> src{5, 6, kEoi};
  const auto trace = AttentionTrace(on, src, std::vector<int>{5, kEos});
  ASSERT_EQ(trace.size(), 2u);
  EXPECT_EQ(trace[0].size(), 3u);
  EXPECT_TRUE(AttentionTrace(RandomModel(3, 3, 3, 4, false, 2), src, std::vector<int>{5}).empty());
}

TEST(ModelIo, SaveLoadRoundTrip) {
  testing::TempDir dir;
  Model m = RandomModel(4, 5, 3, 4, false, 7);
  m.taxonomy = FixtureTaxonomy();
  SaveModel(dir / "m.ckpt", m);
  EXPECT_TRUE(std::filesystem::exists(SidecarPath(dir / "m.ckpt")));
  const Model back = LoadModel(dir / "m.ckpt");
  EXPECT_EQ(back.config, m.config);
  EXPECT_EQ(back.vocab, m.vocab);
  EXPECT_TRUE(back.params == m.params);
  EXPECT_EQ(back.taxonomy, m.taxonomy);
  SaveModel(dir / "again.ckpt", back);
  EXPECT_EQ(ReadFile(dir / "m.ckpt"), ReadFile(dir / "again.ckpt"));
}

TEST(ModelIo, MissingFileIsDataError) {
  testing::TempDir dir;
  EXPECT_THROW(LoadModel(dir / "none.ckpt"), DataError);
}

}  // namespace
}  // namespace stylecomp

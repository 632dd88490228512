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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "stylecomp/annotator.h"
#include "stylecomp/apriori.h"
#include "stylecomp/corpus.h"
#include "stylecomp/decoding.h"
#include "stylecomp/lstm.h"
#include "stylecomp/model.h"
#include "stylecomp/rng.h"
#include "stylecomp/synthgen.h"
#include "stylecomp/training.h"

namespace stylecomp {
namespace {

Vocabularies WordVocab(int words) {
  Vocabularies v;
  for (int i = 0; i < words; ++i) {
    v.source.Add("w" + std::to_string(i));
    v.target.Add("w" + std::to_string(i));
  }
  return v;
}

Model BenchModel(int hidden, bool attention) {
  ModelConfig c;
  c.embedding_dim = hidden / 2;
  c.hidden_dim = hidden;
  c.attention = attention;
  c.init_scale = 0.1;
  return MakeModel(c, WordVocab(100));
}

void BM_LstmStep(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  Tensor w({4 * n, n + n});
  for (double& x : w.values()) x = rng.Uniform(-0.1, 0.1);
  const Tensor b({4 * n});
  Tensor x({n});
  for (double& v : x.values()) v = rng.Uniform(-1, 1);
  LstmState s = LstmState::Zero(n);
  for (auto _ : state) {
    s = LstmCell(x, s, w, b);
    benchmark::DoNotOptimize(s.h.values().data());
  }
}
BENCHMARK(BM_LstmStep)->Arg(32)->Arg(64)->Arg(128);

void BM_TrainExample(benchmark::State& state) {
  Model m = BenchModel(static_cast<int>(state.range(0)), true);
  const TrainingExample ex{{5, 6, 7, kEoi, 8, 9, kEoi, 10, kEoi}, {kSos, 11, 12, kEos}};
  for (auto _ : state) {
    m.params.ZeroGrad();
    benchmark::DoNotOptimize(AccumulateGradients(m, ex, 1.0));
  }
}
BENCHMARK(BM_TrainExample)->Arg(32)->Arg(64);

void BM_BeamSearch(benchmark::State& state) {
  const Model m = BenchModel(64, true);
  const std::vector<int> src{5, 6, 7, kEoi, 8, 9, kEoi};
  const BeamOptions opts{.width = static_cast<int>(state.range(0)), .max_len = 4};
  for (auto _ : state) benchmark::DoNotOptimize(BeamSearch(m, src, opts));
}
BENCHMARK(BM_BeamSearch)->Arg(1)->Arg(5)->Arg(10);

void BM_MineFrequent(benchmark::State& state) {
  GenConfig gen;
  gen.n_posts = state.range(0);
  std::vector<StructuredPost> posts;
  for (const GeneratedPost& p : GenerateDetailed(FixtureRules(), gen)) {
    posts.push_back({p.post.id, p.items});
  }
  const auto transactions = ToTransactions(posts, Granularity::kFull);
  for (auto _ : state) benchmark::DoNotOptimize(MineFrequent(transactions, 2));
}
BENCHMARK(BM_MineFrequent)->Arg(500)->Arg(2000);

void BM_Annotate(benchmark::State& state) {
  const Taxonomy& t = FixtureTaxonomy();
  const std::string text =
      "today i wore a light blue polka dot maxi dress, black leather boots and a tan "
      "woven tote with a silver bracelet";
  for (auto _ : state) benchmark::DoNotOptimize(Annotate(text, t));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Annotate);

}  // namespace
}  // namespace stylecomp

BENCHMARK_MAIN();

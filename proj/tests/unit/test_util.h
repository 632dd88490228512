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

#ifndef STYLECOMP_TESTS_TEST_UTIL_H_
#define STYLECOMP_TESTS_TEST_UTIL_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unistd.h>

#include <set>
#include <vector>

#include "stylecomp/corpus.h"
#include "stylecomp/model.h"
#include "stylecomp/synthgen.h"

namespace stylecomp::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("stylecomp_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Vocabularies with `src` and `tgt` plain words ("s0".., "t0"..) after the
// reserved tokens.
inline Vocabularies TinyVocab(int src, int tgt) {
  Vocabularies v{Vocabulary(Vocabulary::Side::kSource),
                 Vocabulary(Vocabulary::Side::kTarget)};
  for (int i = 0; i < src; ++i) v.source.Add("s" + std::to_string(i));
  for (int i = 0; i < tgt; ++i) v.target.Add("t" + std::to_string(i));
  return v;
}

inline Model RandomModel(int src, int tgt, int emb, int hidden, bool attention,
                         std::uint64_t seed, double scale = 0.5, int max_len = 4) {
  ModelConfig cfg;
  cfg.embedding_dim = emb;
  cfg.hidden_dim = hidden;
  cfg.attention = attention;
  cfg.seed = seed;
  cfg.init_scale = scale;
  cfg.max_target_len = max_len;
  return MakeModel(cfg, TinyVocab(src, tgt));
}

// `n` leave-one-out examples from synthetic posts, one per post, with
// pairwise distinct sources so that a model can fit them exactly.
inline std::vector<LabeledExample> OverfitExamples(std::size_t n, std::uint64_t seed = 1) {
  GenConfig gen;
  gen.n_posts = static_cast<std::int64_t>(4 * n + 20);
  gen.max_items = 3;
  gen.seed = seed;
  std::vector<LabeledExample> out;
  std::set<std::vector<AttributedItem>> sources;
  for (const GeneratedPost& p : GenerateDetailed(FixtureRules(0.0), gen)) {
    if (out.size() == n) break;
    LabeledExample ex = MakeExamples(StructuredPost{p.post.id, p.items}).front();
    if (sources.insert(ex.inputs).second) out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace stylecomp::testing

#endif  // STYLECOMP_TESTS_TEST_UTIL_H_

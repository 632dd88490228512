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

#ifndef STYLECOMP_CORPUS_H_
#define STYLECOMP_CORPUS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "stylecomp/annotator.h"
#include "stylecomp/io.h"

namespace stylecomp {

struct SocialPost {
  std::string id;
  std::string text;
  std::int64_t votes = 0;
  std::int64_t likes = 0;
  std::int64_t comments = 0;

  bool operator==(const SocialPost&) const = default;
};

struct ScoreWeights {
  double votes = 1.0;
  double likes = 1.0;
  double comments = 1.0;

  // Throws InvalidArgument on a negative weight or all-zero weights.
  void Validate() const;
};

double FashionScore(const SocialPost& post, const ScoreWeights& w);

// Keeps the posts scoring at least the score of the ceil(p% * N)-th best
// post, so ties at the threshold survive. Input order is preserved.
std::vector<SocialPost> FilterTopPercentile(std::span<const SocialPost> posts,
                                            const ScoreWeights& w,
                                            double percent);

// Reserved vocabulary ids, fixed in both vocabularies.
enum ReservedId : int { kPad = 0, kSos = 1, kEos = 2, kEoi = 3, kUnk = 4 };
inline constexpr std::array<const char*, 5> kReservedTokens = {
    "<pad>", "<sos>", "<eos>", "<eoi>", "<unk>"};
inline constexpr int kNumReserved = 5;

class Vocabulary {
 public:
  enum class Side { kSource, kTarget };

  explicit Vocabulary(Side side = Side::kSource);

  Side side() const { return side_; }
  int size() const { return static_cast<int>(tokens_.size()); }

  // Returns the existing id or appends the token.
  int Add(const std::string& token);
  // kUnk for unknown tokens.
  int Id(const std::string& token) const;
  bool Contains(const std::string& token) const { return ids_.contains(token); }
  // Throws IndexError out of range.
  const std::string& Token(int id) const;

  std::vector<int> Encode(std::span<const std::string> tokens) const;
  std::vector<std::string> Decode(std::span<const int> ids) const;

  // Tokens in id order.
  const std::vector<std::string>& tokens() const { return tokens_; }
  Json ToJson() const;
  static Vocabulary FromJson(const Json& j, Side side);

  bool operator==(const Vocabulary& o) const {
    return side_ == o.side_ && tokens_ == o.tokens_;
  }

 private:
  Side side_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

// Id-level model input: source is the item words joined by <eoi> with a
// trailing <eoi>; target is <sos> words <eos>.
struct TrainingExample {
  std::vector<int> source_ids;
  std::vector<int> target_ids;

  bool operator==(const TrainingExample&) const = default;
};

// Item-level tuple: the held-out item and the remaining items of its post.
struct LabeledExample {
  std::string post_id;
  std::vector<AttributedItem> inputs;
  AttributedItem target;

  bool operator==(const LabeledExample&) const = default;
};

// Leave-one-out: one tuple per item, inputs in original order. Throws
// InvalidArgument for fewer than two items.
std::vector<LabeledExample> MakeExamples(const StructuredPost& post);

std::vector<std::string> SourceWords(std::span<const AttributedItem> items);
std::vector<std::string> TargetWords(const AttributedItem& item);

// Throws InvalidArgument on an empty item list.
std::vector<int> EncodeSource(std::span<const AttributedItem> items,
                              const Vocabulary& vocab);
std::vector<int> EncodeTarget(const AttributedItem& item,
                              const Vocabulary& vocab);
TrainingExample Encode(const LabeledExample& ex, const Vocabulary& source,
                       const Vocabulary& target);

struct Vocabularies {
  Vocabulary source{Vocabulary::Side::kSource};
  Vocabulary target{Vocabulary::Side::kTarget};

  bool operator==(const Vocabularies&) const = default;
};

// Tokens are added in first-seen order over the given examples.
Vocabularies BuildVocab(std::span<const LabeledExample> examples);

// Train, test, validate (the order of the published split table).
struct SplitRatios {
  double train = 0.7;
  double test = 0.2;
  double validate = 0.1;

  void Validate() const;
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t test = 0;
  std::size_t validate = 0;

  bool operator==(const SplitSizes&) const = default;
};

// train and test get floor(ratio * n); validate takes the remainder.
SplitSizes ComputeSplitSizes(std::size_t n, const SplitRatios& ratios);

struct Split {
  std::vector<StructuredPost> posts;
  std::vector<LabeledExample> examples;

  bool operator==(const Split&) const = default;
};

struct Corpus {
  Split train;
  Split test;
  Split validate;
  Vocabularies vocab;

  bool operator==(const Corpus&) const = default;
};

// Seeded post-level shuffle, split by ComputeSplitSizes, leave-one-out
// examples per split, vocabularies from the train split only. Throws
// DataError on an empty input.
Corpus SplitCorpus(std::vector<StructuredPost> posts, const SplitRatios& ratios,
                   std::uint64_t seed);

// JSON encodings; objects use sorted keys so dumps are canonical.
Json ItemToJson(const AttributedItem& item);
AttributedItem ItemFromJson(const Json& j);
Json PostToJson(const SocialPost& post);
SocialPost PostFromJson(const Json& j);
Json StructuredPostToJson(const StructuredPost& post);
StructuredPost StructuredPostFromJson(const Json& j);
Json ExampleToJson(const LabeledExample& ex);
LabeledExample ExampleFromJson(const Json& j);

std::vector<SocialPost> ReadPosts(const std::filesystem::path& path);
void WritePosts(const std::filesystem::path& path,
                std::span<const SocialPost> posts);
std::vector<StructuredPost> ReadStructuredPosts(const std::filesystem::path& path);
void WriteStructuredPosts(const std::filesystem::path& path,
                          std::span<const StructuredPost> posts);
std::vector<LabeledExample> ReadExamples(const std::filesystem::path& path);
void WriteExamples(const std::filesystem::path& path,
                   std::span<const LabeledExample> examples);

// Corpus directory: {train,test,validate}.posts.jsonl,
// {train,test,validate}.examples.jsonl and vocab.json.
void SaveCorpus(const std::filesystem::path& dir, const Corpus& corpus);
Corpus LoadCorpus(const std::filesystem::path& dir);
// Reads one split's examples from a corpus directory.
std::vector<LabeledExample> LoadSplitExamples(const std::filesystem::path& dir,
                                              const std::string& split);
std::vector<StructuredPost> LoadSplitPosts(const std::filesystem::path& dir,
                                           const std::string& split);

}  // namespace stylecomp

#endif  // STYLECOMP_CORPUS_H_

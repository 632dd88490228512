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

#include "stylecomp/corpus.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stylecomp/errors.h"
#include "stylecomp/rng.h"

namespace stylecomp {

void ScoreWeights::Validate() const {
  if (votes < 0 || likes < 0 || comments < 0) {
    throw InvalidArgument("score weights must be nonnegative");
  }
  if (votes == 0 && likes == 0 && comments == 0) {
    throw InvalidArgument("at least one score weight must be positive");
  }
}

double FashionScore(const SocialPost& post, const ScoreWeights& w) {
  return w.votes * static_cast<double>(post.votes) +
         w.likes * static_cast<double>(post.likes) +
         w.comments * static_cast<double>(post.comments);
}

std::vector<SocialPost> FilterTopPercentile(std::span<const SocialPost> posts,
                                            const ScoreWeights& w,
                                            double percent) {
  if (!(percent > 0.0 && percent <= 100.0)) {
    throw InvalidArgument("percentile must be in (0, 100], got " +
                          std::to_string(percent));
  }
  w.Validate();
  if (posts.empty()) return {};
  std::vector<double> scores;
  scores.reserve(posts.size());
  for (const SocialPost& p : posts) scores.push_back(FashionScore(p, w));

  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double n = static_cast<double>(posts.size());
  auto keep = static_cast<std::size_t>(std::ceil(percent * n / 100.0 - 1e-9));
  keep = std::clamp<std::size_t>(keep, 1, posts.size());
  const double threshold = sorted[keep - 1];

  std::vector<SocialPost> out;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (scores[i] >= threshold) out.push_back(posts[i]);
  }
  return out;
}

Vocabulary::Vocabulary(Side side) : side_(side) {
  for (const char* t : kReservedTokens) Add(t);
}

int Vocabulary::Add(const std::string& token) {
  auto [it, inserted] = ids_.emplace(token, size());
  if (inserted) tokens_.push_back(token);
  return it->second;
}

int Vocabulary::Id(const std::string& token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? kUnk : it->second;
}

const std::string& Vocabulary::Token(int id) const {
  if (id < 0 || id >= size()) {
    throw IndexError("vocabulary: id " + std::to_string(id) +
                     " out of range [0, " + std::to_string(size()) + ")");
  }
  return tokens_[id];
}

std::vector<int> Vocabulary::Encode(std::span<const std::string> tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const std::string& t : tokens) ids.push_back(Id(t));
  return ids;
}

std::vector<std::string> Vocabulary::Decode(std::span<const int> ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(Token(id));
  return out;
}

Json Vocabulary::ToJson() const { return tokens_; }

Vocabulary Vocabulary::FromJson(const Json& j, Side side) {
  Vocabulary v(side);
  const auto tokens = j.get<std::vector<std::string>>();
  if (tokens.size() < kNumReserved) {
    throw ParseError("vocabulary: missing reserved tokens");
  }
  for (int i = 0; i < kNumReserved; ++i) {
    if (tokens[i] != kReservedTokens[i]) {
      throw ParseError("vocabulary: reserved id " + std::to_string(i) +
                       " must be " + kReservedTokens[i]);
    }
  }
  for (std::size_t i = kNumReserved; i < tokens.size(); ++i) {
    if (v.Contains(tokens[i])) {
      throw ParseError("vocabulary: duplicate token '" + tokens[i] + "'");
    }
    v.Add(tokens[i]);
  }
  return v;
}

std::vector<LabeledExample> MakeExamples(const StructuredPost& post) {
  if (post.items.size() < 2) {
    throw InvalidArgument("make_examples: post '" + post.source_id +
                          "' has fewer than two items");
  }
  std::vector<LabeledExample> out;
  out.reserve(post.items.size());
  for (std::size_t held = 0; held < post.items.size(); ++held) {
    LabeledExample ex{post.source_id, {}, post.items[held]};
    for (std::size_t i = 0; i < post.items.size(); ++i) {
      if (i != held) ex.inputs.push_back(post.items[i]);
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<std::string> SourceWords(std::span<const AttributedItem> items) {
  std::vector<std::string> words;
  for (const AttributedItem& item : items) {
    for (std::string& w : item.Words()) words.push_back(std::move(w));
    words.push_back(kReservedTokens[kEoi]);
  }
  return words;
}

std::vector<std::string> TargetWords(const AttributedItem& item) {
  return item.Words();
}

std::vector<int> EncodeSource(std::span<const AttributedItem> items,
                              const Vocabulary& vocab) {
  if (items.empty()) throw InvalidArgument("encode_source: no items");
  return vocab.Encode(SourceWords(items));
}

std::vector<int> EncodeTarget(const AttributedItem& item,
                              const Vocabulary& vocab) {
  std::vector<int> ids{kSos};
  for (const std::string& w : TargetWords(item)) ids.push_back(vocab.Id(w));
  ids.push_back(kEos);
  return ids;
}

TrainingExample Encode(const LabeledExample& ex, const Vocabulary& source,
                       const Vocabulary& target) {
  return {EncodeSource(ex.inputs, source), EncodeTarget(ex.target, target)};
}

Vocabularies BuildVocab(std::span<const LabeledExample> examples) {
  Vocabularies v;
  for (const LabeledExample& ex : examples) {
    for (const AttributedItem& item : ex.inputs) {
      for (const std::string& w : item.Words()) v.source.Add(w);
    }
    for (const std::string& w : ex.target.Words()) v.target.Add(w);
  }
  return v;
}

void SplitRatios::Validate() const {
  if (train < 0 || test < 0 || validate < 0) {
    throw InvalidArgument("split ratios must be nonnegative");
  }
  if (std::abs(train + test + validate - 1.0) > 1e-9) {
    throw InvalidArgument("split ratios must sum to 1");
  }
}

SplitSizes ComputeSplitSizes(std::size_t n, const SplitRatios& ratios) {
  ratios.Validate();
  const double total = static_cast<double>(n);
  // The epsilon absorbs representation error in products like 0.7 * 10.
  auto floor_of = [total](double r) {
    return static_cast<std::size_t>(std::floor(r * total + 1e-9));
  };
  SplitSizes s;
  s.train = std::min(n, floor_of(ratios.train));
  s.test = std::min(n - s.train, floor_of(ratios.test));
  s.validate = n - s.train - s.test;
  return s;
}

Corpus SplitCorpus(std::vector<StructuredPost> posts, const SplitRatios& ratios,
                   std::uint64_t seed) {
  if (posts.empty()) throw DataError("split: empty corpus");
  const SplitSizes sizes = ComputeSplitSizes(posts.size(), ratios);
  Rng rng(seed);
  rng.Shuffle(std::span<StructuredPost>(posts));

  Corpus corpus;
  auto fill = [&posts](Split& split, std::size_t begin, std::size_t count) {
    for (std::size_t i = begin; i < begin + count; ++i) {
      for (LabeledExample& ex : MakeExamples(posts[i])) {
        split.examples.push_back(std::move(ex));
      }
      split.posts.push_back(std::move(posts[i]));
    }
  };
  fill(corpus.train, 0, sizes.train);
  fill(corpus.test, sizes.train, sizes.test);
  fill(corpus.validate, sizes.train + sizes.test, sizes.validate);
  corpus.vocab = BuildVocab(corpus.train.examples);
  return corpus;
}

Json ItemToJson(const AttributedItem& item) {
  Json j;
  j["apparel"] = item.apparel;
  j["color"] = item.color ? Json(*item.color) : Json(nullptr);
  j["pattern"] = item.pattern ? Json(*item.pattern) : Json(nullptr);
  j["tokens"] = item.Words();
  return j;
}

AttributedItem ItemFromJson(const Json& j) {
  AttributedItem item;
  item.apparel = j.at("apparel").get<std::string>();
  if (item.apparel.empty()) throw ParseError("item: empty apparel");
  if (j.contains("color") && !j.at("color").is_null()) {
    item.color = j.at("color").get<std::string>();
  }
  if (j.contains("pattern") && !j.at("pattern").is_null()) {
    item.pattern = j.at("pattern").get<std::string>();
  }
  return item;
}

Json PostToJson(const SocialPost& post) {
  return Json{{"comments", post.comments},
              {"id", post.id},
              {"likes", post.likes},
              {"text", post.text},
              {"votes", post.votes}};
}

SocialPost PostFromJson(const Json& j) {
  SocialPost p;
  const Json& id = j.at("id");
  p.id = id.is_string() ? id.get<std::string>() : id.dump();
  p.text = j.at("text").get<std::string>();
  p.votes = j.value("votes", std::int64_t{0});
  p.likes = j.value("likes", std::int64_t{0});
  p.comments = j.value("comments", std::int64_t{0});
  if (p.votes < 0 || p.likes < 0 || p.comments < 0) {
    throw ParseError("post '" + p.id + "': negative social count");
  }
  return p;
}

Json StructuredPostToJson(const StructuredPost& post) {
  Json items = Json::array();
  for (const AttributedItem& item : post.items) items.push_back(ItemToJson(item));
  return Json{{"id", post.source_id}, {"items", std::move(items)}};
}

StructuredPost StructuredPostFromJson(const Json& j) {
  StructuredPost post;
  post.source_id = j.at("id").get<std::string>();
  for (const Json& item : j.at("items")) post.items.push_back(ItemFromJson(item));
  return post;
}

Json ExampleToJson(const LabeledExample& ex) {
  Json inputs = Json::array();
  for (const AttributedItem& item : ex.inputs) inputs.push_back(ItemToJson(item));
  return Json{{"inputs", std::move(inputs)},
              {"post_id", ex.post_id},
              {"source_tokens", SourceWords(ex.inputs)},
              {"target", ItemToJson(ex.target)},
              {"target_tokens", TargetWords(ex.target)}};
}

LabeledExample ExampleFromJson(const Json& j) {
  LabeledExample ex;
  ex.post_id = j.at("post_id").get<std::string>();
  for (const Json& item : j.at("inputs")) ex.inputs.push_back(ItemFromJson(item));
  ex.target = ItemFromJson(j.at("target"));
  return ex;
}

namespace {

template <typename T, typename ToJson>
void WriteLines(const std::filesystem::path& path, std::span<const T> rows,
                ToJson to_json) {
  std::string out;
  for (const T& row : rows) out += DumpLine(to_json(row));
  WriteFile(path, out);
}

template <typename T, typename FromJson>
std::vector<T> ReadLines(const std::filesystem::path& path, FromJson from_json) {
  std::vector<T> out;
  ForEachJsonLine(path, [&](const Json& j, int) { out.push_back(from_json(j)); });
  return out;
}

constexpr const char* kSplitNames[] = {"train", "test", "validate"};

}  // namespace

std::vector<SocialPost> ReadPosts(const std::filesystem::path& path) {
  return ReadLines<SocialPost>(path, PostFromJson);
}

void WritePosts(const std::filesystem::path& path,
                std::span<const SocialPost> posts) {
  WriteLines(path, posts, PostToJson);
}

std::vector<StructuredPost> ReadStructuredPosts(const std::filesystem::path& path) {
  return ReadLines<StructuredPost>(path, StructuredPostFromJson);
}

void WriteStructuredPosts(const std::filesystem::path& path,
                          std::span<const StructuredPost> posts) {
  WriteLines(path, posts, StructuredPostToJson);
}

std::vector<LabeledExample> ReadExamples(const std::filesystem::path& path) {
  return ReadLines<LabeledExample>(path, ExampleFromJson);
}

void WriteExamples(const std::filesystem::path& path,
                   std::span<const LabeledExample> examples) {
  WriteLines(path, examples, ExampleToJson);
}

void SaveCorpus(const std::filesystem::path& dir, const Corpus& corpus) {
  std::filesystem::create_directories(dir);
  const Split* splits[] = {&corpus.train, &corpus.test, &corpus.validate};
  for (int i = 0; i < 3; ++i) {
    const std::string name = kSplitNames[i];
    WriteStructuredPosts(dir / (name + ".posts.jsonl"), splits[i]->posts);
    WriteExamples(dir / (name + ".examples.jsonl"), splits[i]->examples);
  }
  const Json vocab{{"source", corpus.vocab.source.ToJson()},
                   {"target", corpus.vocab.target.ToJson()}};
  WriteFile(dir / "vocab.json", vocab.dump(2) + "\n");
}

std::vector<LabeledExample> LoadSplitExamples(const std::filesystem::path& dir,
                                              const std::string& split) {
  return ReadExamples(dir / (split + ".examples.jsonl"));
}

std::vector<StructuredPost> LoadSplitPosts(const std::filesystem::path& dir,
                                           const std::string& split) {
  return ReadStructuredPosts(dir / (split + ".posts.jsonl"));
}

Corpus LoadCorpus(const std::filesystem::path& dir) {
  Corpus corpus;
  Split* splits[] = {&corpus.train, &corpus.test, &corpus.validate};
  for (int i = 0; i < 3; ++i) {
    splits[i]->posts = LoadSplitPosts(dir, kSplitNames[i]);
    splits[i]->examples = LoadSplitExamples(dir, kSplitNames[i]);
  }
  const Json vocab = ParseJson(ReadFile(dir / "vocab.json"), "vocab.json");
  corpus.vocab.source =
      Vocabulary::FromJson(vocab.at("source"), Vocabulary::Side::kSource);
  corpus.vocab.target =
      Vocabulary::FromJson(vocab.at("target"), Vocabulary::Side::kTarget);
  return corpus;
}

}  // namespace stylecomp

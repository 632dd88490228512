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

#ifndef STYLECOMP_SYNTHGEN_H_
#define STYLECOMP_SYNTHGEN_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stylecomp/annotator.h"
#include "stylecomp/corpus.h"
#include "stylecomp/io.h"

namespace stylecomp {

using ColorPair = std::pair<std::string, std::string>;

// Planted style rules. Apparel terms belong to groups (garment slots);
// color constraints are declared per unordered group pair under the key
// "a|b" with a <= b, each allowed pair listing the color of the `a` item
// first. A group pair without an entry is unconstrained.
struct StyleRuleSet {
  std::map<std::string, std::vector<std::string>> graph;  // apparel -> partners
  std::map<std::string, std::string> groups;              // apparel -> group
  std::map<std::string, std::vector<ColorPair>> color_map;
  // apparel -> (pattern or "" for none, weight)
  std::map<std::string, std::vector<std::pair<std::string, double>>> patterns;
  std::vector<std::string> colors;
  double noise = 0.15;

  // Throws ConfigError unless the graph is symmetric and irreflexive,
  // every apparel has a partner and a group, every color-map key names
  // known groups with known colors, and 0 <= noise < 0.5.
  void Validate() const;

  // Throws InvalidArgument for an apparel term outside the rules.
  bool Compatible(const std::string& a, const std::string& b) const;
  bool ColorsAllowed(const std::string& apparel_a, const std::string& color_a,
                     const std::string& apparel_b, const std::string& color_b) const;

  Json ToJson() const;
  static StyleRuleSet FromJson(const Json& j);
  std::string Serialize() const;

  bool operator==(const StyleRuleSet&) const = default;
};

// Rules over the fixture taxonomy. Slots combine freely except that a
// one-piece is not worn with a top or a bottom. Colors come in five
// palettes of four; items of a post share a palette, shoes match the bag
// exactly and a top differs in color from the bottom.
StyleRuleSet FixtureRules(double noise = 0.15);

StyleRuleSet LoadRules(const std::filesystem::path& path);
void SaveRules(const std::filesystem::path& path, const StyleRuleSet& rules);

struct GenConfig {
  std::int64_t n_posts = 2000;
  int min_items = 2;
  int max_items = 5;
  std::uint64_t seed = 1;
  double votes_mean = 20.0;
  double likes_mean = 40.0;
  double comments_mean = 8.0;
  // Social means of rule-violating posts are scaled by this factor.
  double violator_factor = 0.5;

  // Throws ConfigError.
  void Validate() const;
  Json ToJson() const;
  void Update(const Json& j);

  bool operator==(const GenConfig&) const = default;
};

struct GeneratedPost {
  SocialPost post;
  std::vector<AttributedItem> items;
  bool violating = false;
};

std::vector<GeneratedPost> GenerateDetailed(const StyleRuleSet& rules,
                                            const GenConfig& config);
// Posts only; deterministic in config.seed.
std::vector<SocialPost> GenerateCorpus(const StyleRuleSet& rules,
                                       const GenConfig& config);

// True iff the candidate's apparel is compatible with every query apparel
// and its color is allowed against each colored query item. Throws
// InvalidArgument for apparel outside the rules.
bool OracleValid(const StyleRuleSet& rules, std::span<const AttributedItem> query,
                 const AttributedItem& candidate);

// Every pair of items is compatible and color-consistent.
bool IsClean(const StyleRuleSet& rules, std::span<const AttributedItem> items);

}  // namespace stylecomp

#endif  // STYLECOMP_SYNTHGEN_H_

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

#ifndef STYLECOMP_APRIORI_H_
#define STYLECOMP_APRIORI_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stylecomp/annotator.h"
#include "stylecomp/io.h"

namespace stylecomp {

// Attribute slots kept when rendering an item for mining or scoring.
enum class Granularity { kFull, kColorApparel, kPatternApparel, kApparelOnly };

inline constexpr Granularity kAllGranularities[] = {
    Granularity::kFull, Granularity::kColorApparel,
    Granularity::kPatternApparel, Granularity::kApparelOnly};

// "full", "color", "pattern", "apparel".
std::string_view GranularityName(Granularity g);
// Throws InvalidArgument for an unknown name.
Granularity ParseGranularity(std::string_view name);

AttributedItem ProjectItem(const AttributedItem& item, Granularity g);
// Rendered in color, pattern, apparel order, e.g. "red dress".
std::string Project(const AttributedItem& item, Granularity g);

using Transaction = std::vector<std::string>;

struct FrequentItemset {
  std::vector<std::string> items;  // sorted, distinct
  std::int64_t support = 0;

  auto operator<=>(const FrequentItemset&) const = default;
};

// Level-wise apriori: frequent k-itemsets are joined on their shared
// (k-1)-prefix, candidates with an infrequent (k-1)-subset are pruned, and
// survivors are counted by a scan. Items repeated within a transaction
// count once. Output is sorted by size, then lexicographically. Throws
// InvalidArgument when min_support < 1.
std::vector<FrequentItemset> MineFrequent(std::span<const Transaction> transactions,
                                          std::int64_t min_support);

// Projected item strings of each post.
std::vector<Transaction> ToTransactions(std::span<const StructuredPost> posts,
                                        Granularity g);

struct CoItem {
  std::string item;
  std::int64_t support = 0;

  bool operator==(const CoItem&) const = default;
};

struct StyleRuleLexicon {
  Granularity granularity = Granularity::kFull;
  std::int64_t min_support = 1;
  // item -> co-items by descending support, ties lexicographic.
  std::map<std::string, std::vector<CoItem>> entries;

  Json ToJson() const;
  static StyleRuleLexicon FromJson(const Json& j);
  // Sorted-key JSON with a trailing newline.
  std::string Serialize() const;

  bool operator==(const StyleRuleLexicon&) const = default;
};

// Co-occurrence entries from the frequent pairs. A pair's support bounds
// every larger itemset holding both items, so pairs carry the lexicon.
StyleRuleLexicon BuildLexicon(std::span<const FrequentItemset> frequent,
                              Granularity granularity, std::int64_t min_support);

StyleRuleLexicon LoadLexicon(const std::filesystem::path& path);
void SaveLexicon(const std::filesystem::path& path, const StyleRuleLexicon& lexicon);

// Sums co-item supports across the query items, drops items already in the
// query and returns the top k (ties lexicographic). Empty means no rule
// fires for this query.
std::vector<CoItem> Recommend(const StyleRuleLexicon& lexicon,
                              std::span<const std::string> query, int k);

}  // namespace stylecomp

#endif  // STYLECOMP_APRIORI_H_

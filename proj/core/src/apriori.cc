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

#include "stylecomp/apriori.h"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "stylecomp/errors.h"

namespace stylecomp {

std::string_view GranularityName(Granularity g) {
  switch (g) {
    case Granularity::kFull:
      return "full";
    case Granularity::kColorApparel:
      return "color";
    case Granularity::kPatternApparel:
      return "pattern";
    case Granularity::kApparelOnly:
      return "apparel";
  }
  return "full";
}

Granularity ParseGranularity(std::string_view name) {
  for (Granularity g : kAllGranularities) {
    if (GranularityName(g) == name) return g;
  }
  throw InvalidArgument("unknown granularity '" + std::string(name) +
                        "' (expected full, color, pattern or apparel)");
}

AttributedItem ProjectItem(const AttributedItem& item, Granularity g) {
  AttributedItem out{item.apparel, std::nullopt, std::nullopt};
  if (g == Granularity::kFull || g == Granularity::kColorApparel) {
    out.color = item.color;
  }
  if (g == Granularity::kFull || g == Granularity::kPatternApparel) {
    out.pattern = item.pattern;
  }
  return out;
}

std::string Project(const AttributedItem& item, Granularity g) {
  return ProjectItem(item, g).ToString();
}

namespace {

using ItemIds = std::vector<int>;

// Every (k-1)-subset of a sorted k-candidate must be frequent.
bool AllSubsetsFrequent(const ItemIds& candidate,
                        const std::set<ItemIds>& previous) {
  ItemIds subset(candidate.size() - 1);
  for (std::size_t skip = 0; skip < candidate.size(); ++skip) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
      if (i != skip) subset[w++] = candidate[i];
    }
    if (!previous.contains(subset)) return false;
  }
  return true;
}

// C(n, k), saturating well above any candidate count.
std::size_t Binomial(std::size_t n, std::size_t k) {
  constexpr std::size_t kCap = std::size_t{1} << 40;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kCap) return kCap;
  }
  return r;
}

// Calls `fn` with every sorted k-subset of the sorted vector `items`.
template <typename Fn>
void ForEachSubset(const ItemIds& items, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  ItemIds subset(k);
  const std::size_t n = items.size();
  while (true) {
    for (std::size_t i = 0; i < k; ++i) subset[i] = items[pick[i]];
    fn(subset);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

std::vector<FrequentItemset> MineFrequent(std::span<const Transaction> transactions,
                                          std::int64_t min_support) {
  if (min_support < 1) throw InvalidArgument("apriori: min_support must be >= 1");

  // Items get ids in lexicographic order so sorted id vectors are sorted
  // string vectors.
  std::set<std::string> universe;
  for (const Transaction& t : transactions) universe.insert(t.begin(), t.end());
  const std::vector<std::string> names(universe.begin(), universe.end());
  std::unordered_map<std::string, int> id_of;
  for (std::size_t i = 0; i < names.size(); ++i) id_of[names[i]] = static_cast<int>(i);

  std::vector<ItemIds> db;
  db.reserve(transactions.size());
  for (const Transaction& t : transactions) {
    ItemIds ids;
    for (const std::string& s : t) ids.push_back(id_of.at(s));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    db.push_back(std::move(ids));
  }

  std::vector<FrequentItemset> out;
  auto emit = [&](const ItemIds& ids, std::int64_t support) {
    FrequentItemset f;
    for (int id : ids) f.items.push_back(names[id]);
    f.support = support;
    out.push_back(std::move(f));
  };

  // Level 1.
  std::vector<std::int64_t> singles(names.size(), 0);
  for (const ItemIds& t : db) {
    for (int id : t) ++singles[id];
  }
  std::vector<ItemIds> level;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (singles[i] >= min_support) {
      level.push_back({static_cast<int>(i)});
      emit(level.back(), singles[i]);
    }
  }

  while (level.size() > 1) {
    const std::set<ItemIds> previous(level.begin(), level.end());
    std::vector<ItemIds> candidates;
    // `level` is sorted, so itemsets sharing a prefix are contiguous.
    for (std::size_t a = 0; a < level.size(); ++a) {
      for (std::size_t b = a + 1; b < level.size(); ++b) {
        if (!std::equal(level[a].begin(), level[a].end() - 1, level[b].begin())) {
          break;
        }
        ItemIds joined = level[a];
        joined.push_back(level[b].back());
        if (AllSubsetsFrequent(joined, previous)) {
          candidates.push_back(std::move(joined));
        }
      }
    }
    std::vector<std::int64_t> counts(candidates.size(), 0);
    const std::size_t k = candidates.empty() ? 0 : candidates.front().size();
    std::map<ItemIds, std::size_t> index;
    for (std::size_t c = 0; c < candidates.size(); ++c) index.emplace(candidates[c], c);
    for (const ItemIds& t : db) {
      if (k == 0 || t.size() < k) continue;
      if (Binomial(t.size(), k) <= candidates.size()) {
        // Short transaction: look up each of its k-subsets.
        ForEachSubset(t, k, [&](const ItemIds& subset) {
          const auto it = index.find(subset);
          if (it != index.end()) ++counts[it->second];
        });
        continue;
      }
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (std::includes(t.begin(), t.end(), candidates[c].begin(),
                          candidates[c].end())) {
          ++counts[c];
        }
      }
    }
    std::vector<ItemIds> next;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (counts[c] >= min_support) {
        emit(candidates[c], counts[c]);
        next.push_back(std::move(candidates[c]));
      }
    }
    level = std::move(next);
  }

  std::sort(out.begin(), out.end(),
            [](const FrequentItemset& a, const FrequentItemset& b) {
              if (a.items.size() != b.items.size()) {
                return a.items.size() < b.items.size();
              }
              return a.items < b.items;
            });
  return out;
}

std::vector<Transaction> ToTransactions(std::span<const StructuredPost> posts,
                                        Granularity g) {
  std::vector<Transaction> out;
  out.reserve(posts.size());
  for (const StructuredPost& p : posts) {
    Transaction t;
    for (const AttributedItem& item : p.items) t.push_back(Project(item, g));
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

bool ByScoreThenName(const CoItem& a, const CoItem& b) {
  if (a.support != b.support) return a.support > b.support;
  return a.item < b.item;
}

}  // namespace

StyleRuleLexicon BuildLexicon(std::span<const FrequentItemset> frequent,
                              Granularity granularity, std::int64_t min_support) {
  StyleRuleLexicon lex;
  lex.granularity = granularity;
  lex.min_support = min_support;
  for (const FrequentItemset& f : frequent) {
    if (f.items.size() != 2) continue;
    lex.entries[f.items[0]].push_back({f.items[1], f.support});
    lex.entries[f.items[1]].push_back({f.items[0], f.support});
  }
  for (auto& [item, co] : lex.entries) {
    std::sort(co.begin(), co.end(), ByScoreThenName);
  }
  return lex;
}

Json StyleRuleLexicon::ToJson() const {
  Json j_entries = Json::object();
  for (const auto& [item, co] : entries) {
    Json list = Json::array();
    for (const CoItem& c : co) list.push_back(Json::array({c.item, c.support}));
    j_entries[item] = std::move(list);
  }
  return Json{{"entries", std::move(j_entries)},
              {"granularity", std::string(GranularityName(granularity))},
              {"min_support", min_support}};
}

StyleRuleLexicon StyleRuleLexicon::FromJson(const Json& j) {
  StyleRuleLexicon lex;
  try {
    lex.granularity = ParseGranularity(j.at("granularity").get<std::string>());
    lex.min_support = j.at("min_support").get<std::int64_t>();
    for (const auto& [item, list] : j.at("entries").items()) {
      auto& co = lex.entries[item];
      for (const Json& pair : list) {
        co.push_back({pair.at(0).get<std::string>(), pair.at(1).get<std::int64_t>()});
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("lexicon: ") + e.what());
  }
  return lex;
}

std::string StyleRuleLexicon::Serialize() const { return ToJson().dump(2) + "\n"; }

StyleRuleLexicon LoadLexicon(const std::filesystem::path& path) {
  return StyleRuleLexicon::FromJson(ParseJson(ReadFile(path), path.string()));
}

void SaveLexicon(const std::filesystem::path& path, const StyleRuleLexicon& lexicon) {
  WriteFile(path, lexicon.Serialize());
}

std::vector<CoItem> Recommend(const StyleRuleLexicon& lexicon,
                              std::span<const std::string> query, int k) {
  const std::set<std::string> in_query(query.begin(), query.end());
  std::map<std::string, std::int64_t> totals;
  for (const std::string& q : in_query) {
    auto it = lexicon.entries.find(q);
    if (it == lexicon.entries.end()) continue;
    for (const CoItem& c : it->second) {
      if (!in_query.contains(c.item)) totals[c.item] += c.support;
    }
  }
  std::vector<CoItem> ranked;
  for (auto& [item, support] : totals) ranked.push_back({item, support});
  std::sort(ranked.begin(), ranked.end(), ByScoreThenName);
  if (k >= 0 && ranked.size() > static_cast<std::size_t>(k)) ranked.resize(k);
  return ranked;
}

}  // namespace stylecomp

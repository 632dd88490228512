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

#include "stylecomp/synthgen.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "stylecomp/errors.h"
#include "stylecomp/fixtures.h"
#include "stylecomp/rng.h"

namespace stylecomp {

namespace {

std::string PairKey(const std::string& a, const std::string& b) {
  return a <= b ? a + "|" + b : b + "|" + a;
}

const std::string& GroupOf(const StyleRuleSet& rules, const std::string& apparel) {
  auto it = rules.groups.find(apparel);
  if (it == rules.groups.end() || !rules.graph.contains(apparel)) {
    throw InvalidArgument("style rules: unknown apparel '" + apparel + "'");
  }
  return it->second;
}

}  // namespace

void StyleRuleSet::Validate() const {
  if (!(noise >= 0.0 && noise < 0.5)) {
    throw ConfigError("style rules: noise must be in [0, 0.5), got " +
                      std::to_string(noise));
  }
  if (graph.empty()) throw ConfigError("style rules: empty apparel graph");
  const std::set<std::string> color_set(colors.begin(), colors.end());
  if (color_set.size() != colors.size() || colors.empty()) {
    throw ConfigError("style rules: colors must be non-empty and distinct");
  }
  std::set<std::string> group_names;
  for (const auto& [apparel, partners] : graph) {
    if (partners.empty()) {
      throw ConfigError("style rules: apparel '" + apparel + "' has no partner");
    }
    if (!groups.contains(apparel)) {
      throw ConfigError("style rules: apparel '" + apparel + "' has no group");
    }
    group_names.insert(groups.at(apparel));
    for (const std::string& p : partners) {
      if (p == apparel) {
        throw ConfigError("style rules: '" + apparel + "' is its own partner");
      }
      auto back = graph.find(p);
      if (back == graph.end() ||
          std::find(back->second.begin(), back->second.end(), apparel) ==
              back->second.end()) {
        throw ConfigError("style rules: graph is not symmetric for '" + apparel +
                          "' and '" + p + "'");
      }
    }
  }
  for (const auto& [key, pairs] : color_map) {
    const std::size_t bar = key.find('|');
    if (bar == std::string::npos) {
      throw ConfigError("style rules: color map key '" + key + "' is not 'a|b'");
    }
    const std::string a = key.substr(0, bar);
    const std::string b = key.substr(bar + 1);
    if (a > b || !group_names.contains(a) || !group_names.contains(b)) {
      throw ConfigError("style rules: color map key '" + key +
                        "' must name two known groups in sorted order");
    }
    for (const ColorPair& cp : pairs) {
      if (!color_set.contains(cp.first) || !color_set.contains(cp.second)) {
        throw ConfigError("style rules: color map '" + key + "' uses an unknown color");
      }
    }
  }
  for (const auto& [apparel, dist] : patterns) {
    double total = 0.0;
    for (const auto& [pattern, weight] : dist) {
      if (!(weight >= 0.0)) {
        throw ConfigError("style rules: negative pattern weight for '" + apparel + "'");
      }
      total += weight;
    }
    if (!(total > 0.0)) {
      throw ConfigError("style rules: pattern weights for '" + apparel + "' sum to 0");
    }
  }
}

bool StyleRuleSet::Compatible(const std::string& a, const std::string& b) const {
  GroupOf(*this, a);
  GroupOf(*this, b);
  const std::vector<std::string>& partners = graph.at(a);
  return std::find(partners.begin(), partners.end(), b) != partners.end();
}

bool StyleRuleSet::ColorsAllowed(const std::string& apparel_a,
                                 const std::string& color_a,
                                 const std::string& apparel_b,
                                 const std::string& color_b) const {
  const std::string& ga = GroupOf(*this, apparel_a);
  const std::string& gb = GroupOf(*this, apparel_b);
  auto it = color_map.find(PairKey(ga, gb));
  if (it == color_map.end()) return true;
  const ColorPair forward{color_a, color_b};
  const ColorPair backward{color_b, color_a};
  for (const ColorPair& cp : it->second) {
    if (ga < gb && cp == forward) return true;
    if (ga > gb && cp == backward) return true;
    if (ga == gb && (cp == forward || cp == backward)) return true;
  }
  return false;
}

Json StyleRuleSet::ToJson() const {
  Json j_colors = Json::object();
  for (const auto& [key, pairs] : color_map) {
    Json list = Json::array();
    for (const ColorPair& cp : pairs) list.push_back(Json::array({cp.first, cp.second}));
    j_colors[key] = std::move(list);
  }
  Json j_patterns = Json::object();
  for (const auto& [apparel, dist] : patterns) {
    Json list = Json::array();
    for (const auto& [pattern, weight] : dist) list.push_back(Json::array({pattern, weight}));
    j_patterns[apparel] = std::move(list);
  }
  return Json{{"color_map", std::move(j_colors)},
              {"colors", colors},
              {"graph", graph},
              {"groups", groups},
              {"noise", noise},
              {"patterns", std::move(j_patterns)}};
}

StyleRuleSet StyleRuleSet::FromJson(const Json& j) {
  StyleRuleSet rules;
  try {
    rules.graph = j.at("graph").get<std::map<std::string, std::vector<std::string>>>();
    rules.groups = j.at("groups").get<std::map<std::string, std::string>>();
    rules.colors = j.at("colors").get<std::vector<std::string>>();
    rules.noise = j.at("noise").get<double>();
    for (const auto& [key, list] : j.at("color_map").items()) {
      auto& pairs = rules.color_map[key];
      for (const Json& cp : list) {
        pairs.emplace_back(cp.at(0).get<std::string>(), cp.at(1).get<std::string>());
      }
    }
    if (j.contains("patterns")) {
      for (const auto& [apparel, list] : j.at("patterns").items()) {
        auto& dist = rules.patterns[apparel];
        for (const Json& pw : list) {
          dist.emplace_back(pw.at(0).get<std::string>(), pw.at(1).get<double>());
        }
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("style rules: ") + e.what());
  }
  for (auto& [apparel, partners] : rules.graph) std::sort(partners.begin(), partners.end());
  rules.Validate();
  return rules;
}

std::string StyleRuleSet::Serialize() const { return ToJson().dump(2) + "\n"; }

StyleRuleSet LoadRules(const std::filesystem::path& path) {
  return StyleRuleSet::FromJson(ParseJson(ReadFile(path), path.string()));
}

void SaveRules(const std::filesystem::path& path, const StyleRuleSet& rules) {
  WriteFile(path, rules.Serialize());
}

StyleRuleSet FixtureRules(double noise) {
  static const std::vector<std::vector<std::string>> kPalettes = {
      {"black", "grey", "navy", "silver"},
      {"white", "ivory", "beige", "light blue"},
      {"red", "maroon", "pink", "gold"},
      {"brown", "tan", "mustard", "olive"},
      {"blue", "yellow", "green", "purple"},
  };
  static const std::map<std::string, std::vector<std::pair<std::string, double>>>
      kGroupPatterns = {
          {"top",
           {{"", 0.30}, {"floral", 0.15}, {"printed", 0.15}, {"striped", 0.15},
            {"solid", 0.10}, {"lace", 0.10}, {"knit", 0.05}}},
          {"bottom",
           {{"", 0.45}, {"solid", 0.15}, {"checked", 0.15}, {"plaid", 0.10},
            {"printed", 0.15}}},
          {"onepiece",
           {{"", 0.30}, {"floral", 0.30}, {"printed", 0.15}, {"sequin", 0.10},
            {"lace", 0.10}, {"polka dot", 0.05}}},
          {"outerwear",
           {{"", 0.45}, {"leather", 0.30}, {"plaid", 0.10}, {"checked", 0.15}}},
          {"shoes", {{"", 0.55}, {"leather", 0.25}, {"strappy", 0.20}}},
          {"bag", {{"", 0.45}, {"leather", 0.35}, {"woven", 0.20}}},
          {"accessory", {{"", 0.85}, {"leather", 0.15}}},
      };

  StyleRuleSet rules;
  rules.noise = noise;
  rules.colors = FixtureColors();
  const std::vector<ApparelGroup>& groups = FixtureApparelGroups();
  auto excluded = [](const std::string& a, const std::string& b) {
    auto one = [](const std::string& x, const std::string& y) {
      return x == "onepiece" && (y == "top" || y == "bottom");
    };
    return a == b || one(a, b) || one(b, a);
  };
  for (const ApparelGroup& ga : groups) {
    for (const std::string& a : ga.members) {
      rules.groups[a] = ga.name;
      rules.patterns[a] = kGroupPatterns.at(ga.name);
      std::vector<std::string>& partners = rules.graph[a];
      for (const ApparelGroup& gb : groups) {
        if (excluded(ga.name, gb.name)) continue;
        partners.insert(partners.end(), gb.members.begin(), gb.members.end());
      }
      std::sort(partners.begin(), partners.end());
    }
  }
  for (const ApparelGroup& ga : groups) {
    for (const ApparelGroup& gb : groups) {
      if (!(ga.name < gb.name) || excluded(ga.name, gb.name)) continue;
      const std::string key = ga.name + "|" + gb.name;
      std::vector<ColorPair>& pairs = rules.color_map[key];
      for (const auto& palette : kPalettes) {
        for (const std::string& ca : palette) {
          for (const std::string& cb : palette) {
            if (key == "bag|shoes" && ca != cb) continue;
            if (key == "bottom|top" && ca == cb) continue;
            pairs.emplace_back(ca, cb);
          }
        }
      }
    }
  }
  rules.Validate();
  return rules;
}

void GenConfig::Validate() const {
  if (n_posts < 1) throw ConfigError("gen: n_posts must be >= 1");
  if (min_items < 2 || max_items < min_items) {
    throw ConfigError("gen: need 2 <= min_items <= max_items");
  }
  if (!(votes_mean >= 0 && likes_mean >= 0 && comments_mean >= 0)) {
    throw ConfigError("gen: social means must be non-negative");
  }
  if (!(violator_factor >= 0.0 && violator_factor <= 1.0)) {
    throw ConfigError("gen: violator_factor must be in [0, 1]");
  }
}

Json GenConfig::ToJson() const {
  return Json{{"comments_mean", comments_mean}, {"likes_mean", likes_mean},
              {"max_items", max_items},         {"min_items", min_items},
              {"n_posts", n_posts},             {"seed", seed},
              {"violator_factor", violator_factor}, {"votes_mean", votes_mean}};
}

void GenConfig::Update(const Json& j) {
  try {
    if (j.contains("n_posts")) n_posts = j.at("n_posts").get<std::int64_t>();
    if (j.contains("min_items")) min_items = j.at("min_items").get<int>();
    if (j.contains("max_items")) max_items = j.at("max_items").get<int>();
    if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("votes_mean")) votes_mean = j.at("votes_mean").get<double>();
    if (j.contains("likes_mean")) likes_mean = j.at("likes_mean").get<double>();
    if (j.contains("comments_mean")) comments_mean = j.at("comments_mean").get<double>();
    if (j.contains("violator_factor")) {
      violator_factor = j.at("violator_factor").get<double>();
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("gen config: ") + e.what());
  }
}

namespace {

template <typename T>
const T& Pick(Rng& rng, const std::vector<T>& items) {
  return items[rng.Below(items.size())];
}

std::vector<std::string> SampleClique(const StyleRuleSet& rules,
                                      const std::vector<std::string>& apparel,
                                      int n, Rng& rng) {
  std::vector<std::string> chosen;
  while (static_cast<int>(chosen.size()) < n) {
    std::map<std::string, std::vector<std::string>> by_group;
    for (const std::string& a : apparel) {
      bool ok = true;
      for (const std::string& c : chosen) {
        if (c == a || !rules.Compatible(a, c)) {
          ok = false;
          break;
        }
      }
      if (ok) by_group[rules.groups.at(a)].push_back(a);
    }
    if (by_group.empty()) break;
    auto g = by_group.begin();
    std::advance(g, rng.Below(by_group.size()));
    chosen.push_back(Pick(rng, g->second));
  }
  return chosen;
}

bool AssignColors(const StyleRuleSet& rules, const std::vector<std::string>& apparel,
                  std::vector<std::string>& colors, std::size_t i, Rng& rng) {
  if (i == apparel.size()) return true;
  std::vector<std::string> order = rules.colors;
  rng.Shuffle(std::span<std::string>(order));
  for (const std::string& c : order) {
    bool ok = true;
    for (std::size_t j = 0; j < i && ok; ++j) {
      ok = rules.ColorsAllowed(apparel[j], colors[j], apparel[i], c);
    }
    if (!ok) continue;
    colors[i] = c;
    if (AssignColors(rules, apparel, colors, i + 1, rng)) return true;
  }
  return false;
}

std::string SamplePattern(const StyleRuleSet& rules, const std::string& apparel,
                          Rng& rng) {
  auto it = rules.patterns.find(apparel);
  if (it == rules.patterns.end()) return "";
  double total = 0.0;
  for (const auto& [p, w] : it->second) total += w;
  double u = rng.Uniform() * total;
  for (const auto& [p, w] : it->second) {
    if (u < w) return p;
    u -= w;
  }
  return it->second.back().first;
}

const std::vector<std::string>& Prefixes() {
  static const std::vector<std::string> kPrefixes = {
      "", "", "ootd: ", "wearing ", "today i wore ", "my look: "};
  return kPrefixes;
}

}  // namespace

std::vector<GeneratedPost> GenerateDetailed(const StyleRuleSet& rules,
                                            const GenConfig& config) {
  rules.Validate();
  config.Validate();
  Rng rng(config.seed);
  std::vector<std::string> apparel;
  for (const auto& [a, partners] : rules.graph) apparel.push_back(a);

  std::vector<GeneratedPost> out;
  out.reserve(static_cast<std::size_t>(config.n_posts));
  for (std::int64_t p = 0; p < config.n_posts; ++p) {
    const int n = config.min_items +
                  static_cast<int>(rng.Below(config.max_items - config.min_items + 1));
    const std::vector<std::string> clique = SampleClique(rules, apparel, n, rng);
    std::vector<std::string> colors(clique.size());
    if (!AssignColors(rules, clique, colors, 0, rng)) {
      throw ConfigError("gen: style rules admit no color assignment for a post");
    }

    GeneratedPost gp;
    for (std::size_t i = 0; i < clique.size(); ++i) {
      if (rng.Bernoulli(rules.noise)) {
        std::vector<std::string> bad;
        for (const std::string& c : rules.colors) {
          for (std::size_t j = 0; j < clique.size(); ++j) {
            if (j != i && !rules.ColorsAllowed(clique[j], colors[j], clique[i], c)) {
              bad.push_back(c);
              break;
            }
          }
        }
        if (!bad.empty()) {
          colors[i] = Pick(rng, bad);
          gp.violating = true;
        }
      }
    }
    std::string text = Pick(rng, Prefixes());
    for (std::size_t i = 0; i < clique.size(); ++i) {
      AttributedItem item{clique[i], colors[i], std::nullopt};
      const std::string pattern = SamplePattern(rules, clique[i], rng);
      if (!pattern.empty()) item.pattern = pattern;
      if (i > 0) text += ", ";
      text += item.ToString();
      gp.items.push_back(std::move(item));
    }
    // Colors fixed after the noise pass can still clash between two noisy
    // items, so the label comes from the final itemset.
    gp.violating = !IsClean(rules, gp.items);

    const double scale = gp.violating ? config.violator_factor : 1.0;
    char id[32];
    std::snprintf(id, sizeof id, "p%06lld", static_cast<long long>(p + 1));
    gp.post.id = id;
    gp.post.text = std::move(text);
    gp.post.votes = static_cast<std::int64_t>(rng.Poisson(config.votes_mean * scale));
    gp.post.likes = static_cast<std::int64_t>(rng.Poisson(config.likes_mean * scale));
    gp.post.comments =
        static_cast<std::int64_t>(rng.Poisson(config.comments_mean * scale));
    out.push_back(std::move(gp));
  }
  return out;
}

std::vector<SocialPost> GenerateCorpus(const StyleRuleSet& rules,
                                       const GenConfig& config) {
  std::vector<SocialPost> out;
  for (GeneratedPost& gp : GenerateDetailed(rules, config)) {
    out.push_back(std::move(gp.post));
  }
  return out;
}

bool OracleValid(const StyleRuleSet& rules, std::span<const AttributedItem> query,
                 const AttributedItem& candidate) {
  GroupOf(rules, candidate.apparel);
  for (const AttributedItem& q : query) {
    if (!rules.Compatible(q.apparel, candidate.apparel)) return false;
    if (q.color && candidate.color &&
        !rules.ColorsAllowed(q.apparel, *q.color, candidate.apparel, *candidate.color)) {
      return false;
    }
  }
  return true;
}

bool IsClean(const StyleRuleSet& rules, std::span<const AttributedItem> items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!OracleValid(rules, items.first(i), items[i])) return false;
  }
  return true;
}

}  // namespace stylecomp

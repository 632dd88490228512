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

#include "stylecomp/fixtures.h"
#include "stylecomp/taxonomy.h"

namespace stylecomp {

const std::vector<ApparelGroup>& FixtureApparelGroups() {
  static const std::vector<ApparelGroup> groups = {
      {"top",
       {"top", "t-shirt", "blouse", "shirt", "camisole top", "crop top",
        "tank top", "sweater", "cardigan", "kurta", "tunic"}},
      {"bottom",
       {"jeans", "trousers", "skirt", "shorts", "leggings", "joggers", "pants",
        "culottes"}},
      {"onepiece", {"dress", "maxi dress", "jumpsuit", "gown"}},
      {"outerwear", {"jacket", "coat", "trench coat", "blazer", "parka", "vest"}},
      {"shoes",
       {"heels", "sandals", "sneakers", "boots", "pumps", "flats", "loafers",
        "running shoes", "stilettos", "wedges", "ankle boots", "shoes"}},
      {"bag", {"bag", "clutch", "tote", "backpack", "satchel", "purse"}},
      {"accessory",
       {"bracelet", "necklace", "earrings", "watch", "sunglasses", "scarf",
        "belt", "hat", "gloves", "tights"}},
  };
  return groups;
}

const std::vector<std::string>& FixtureColors() {
  static const std::vector<std::string> colors = {
      "black",  "white", "red",   "blue",   "navy",       "grey",
      "brown",  "maroon", "ivory", "yellow", "mustard",    "pink",
      "green",  "beige", "silver", "gold",  "light blue", "olive",
      "purple", "tan"};
  return colors;
}

const std::vector<std::string>& FixturePatterns() {
  static const std::vector<std::string> patterns = {
      "floral", "printed", "print",  "polka dot", "striped",
      "solid",  "leather", "lace",   "woven",     "checked",
      "plaid",  "sequin",  "knit",   "strappy",   "animal print"};
  return patterns;
}

const Taxonomy& FixtureTaxonomy() {
  static const Taxonomy taxonomy = [] {
    std::set<std::string> apparel;
    for (const ApparelGroup& g : FixtureApparelGroups()) {
      apparel.insert(g.members.begin(), g.members.end());
    }
    const auto& colors = FixtureColors();
    const auto& patterns = FixturePatterns();
    return Taxonomy(std::move(apparel), {colors.begin(), colors.end()},
                    {patterns.begin(), patterns.end()},
                    {{"denims", "jeans"},
                     {"tee", "t-shirt"},
                     {"trainers", "sneakers"},
                     {"handbag", "bag"},
                     {"gray", "grey"},
                     {"polka dots", "polka dot"},
                     {"stripes", "striped"},
                     {"prints", "print"},
                     {"camisole", "camisole top"}});
  }();
  return taxonomy;
}

}  // namespace stylecomp

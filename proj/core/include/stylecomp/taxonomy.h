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

#ifndef STYLECOMP_TAXONOMY_H_
#define STYLECOMP_TAXONOMY_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace stylecomp {

// Longest taxonomy term, in words. Also the annotator's widest n-gram.
inline constexpr int kMaxTermWords = 3;

enum class TermClass { kNone, kApparel, kColor, kPattern };

std::string_view TermClassName(TermClass c);

struct LookupResult {
  TermClass term_class = TermClass::kNone;
  std::string canonical;

  bool operator==(const LookupResult&) const = default;
};

// Lowercases, trims and collapses internal whitespace.
std::string Canonicalize(std::string_view text);

// Flat fashion vocabulary: three disjoint term classes plus a synonym map
// whose targets are members of exactly one class. Immutable after load.
class Taxonomy {
 public:
  Taxonomy() = default;

  // Validates the class invariants; throws ConflictError or ParseError.
  Taxonomy(std::set<std::string> apparel, std::set<std::string> colors,
           std::set<std::string> patterns,
           std::map<std::string, std::string> synonyms);

  const std::set<std::string>& apparel_terms() const { return apparel_; }
  const std::set<std::string>& color_terms() const { return colors_; }
  const std::set<std::string>& pattern_terms() const { return patterns_; }
  const std::map<std::string, std::string>& synonyms() const {
    return synonyms_;
  }

  // Classifies an n-gram of 1..kMaxTermWords words. Throws InvalidArgument
  // for longer input.
  LookupResult Lookup(std::string_view ngram) const;

  // Class of an already-canonical term (no synonym indirection, no checks).
  TermClass ClassOf(const std::string& canonical) const;

  // Sorted-key JSON, two-space indent, trailing newline.
  std::string Serialize() const;

  bool operator==(const Taxonomy&) const = default;

 private:
  std::set<std::string> apparel_;
  std::set<std::string> colors_;
  std::set<std::string> patterns_;
  std::map<std::string, std::string> synonyms_;
};

// Parses taxonomy JSON text. Errors carry the offending line number.
Taxonomy ParseTaxonomy(std::string_view json_text);
Taxonomy LoadTaxonomy(const std::filesystem::path& path);

// Built-in taxonomy drawn from common womenswear vocabulary, used by tests
// and the synthetic generator.
const Taxonomy& FixtureTaxonomy();

}  // namespace stylecomp

#endif  // STYLECOMP_TAXONOMY_H_

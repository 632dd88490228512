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

#ifndef STYLECOMP_ANNOTATOR_H_
#define STYLECOMP_ANNOTATOR_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stylecomp/taxonomy.h"

namespace stylecomp {

struct SocialPost;

// An apparel term with optional color and pattern, all canonical taxonomy
// terms.
struct AttributedItem {
  std::string apparel;
  std::optional<std::string> color;
  std::optional<std::string> pattern;

  // Words in color, pattern, apparel order.
  std::vector<std::string> Words() const;
  // Words joined by single spaces, e.g. "red floral dress".
  std::string ToString() const;

  auto operator<=>(const AttributedItem&) const = default;
};

struct StructuredPost {
  std::string source_id;
  std::vector<AttributedItem> items;

  bool operator==(const StructuredPost&) const = default;
};

// Lowercased words of `text`; punctuation other than intra-word '-' and
// '\'' splits words and is dropped. Clause breaks (sentence punctuation,
// commas, the word "and") are reported as empty strings.
std::vector<std::string> TokenizeWithBreaks(std::string_view text);

// Greedy longest-match (3, 2, then 1 words) scan over the taxonomy. A color
// or pattern attaches to the first apparel that starts within
// kAttachWindow words after it in the same clause; when several compete
// for one slot the nearest wins. Exact duplicate items are dropped. Never
// fails: text without fashion terms yields an empty list.
std::vector<AttributedItem> Annotate(std::string_view text,
                                     const Taxonomy& taxonomy);

inline constexpr int kAttachWindow = 4;

// Posts annotating to fewer than two items are skipped (nullopt).
std::optional<StructuredPost> AnnotatePost(const SocialPost& post,
                                           const Taxonomy& taxonomy);

}  // namespace stylecomp

#endif  // STYLECOMP_ANNOTATOR_H_

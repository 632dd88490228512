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

#include "stylecomp/annotator.h"

#include <algorithm>
#include <cctype>

#include "stylecomp/corpus.h"

namespace stylecomp {
namespace {

bool IsClauseBreak(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '(': case ')': case '[': case ']': case '\n': case '&': case '|':
      return true;
    default:
      return false;
  }
}

bool IsWordByte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

struct Match {
  TermClass cls;
  std::string term;
  int begin;  // word index
  int end;    // one past the last word
};

}  // namespace

std::vector<std::string> AttributedItem::Words() const {
  std::vector<std::string> words;
  auto split_into = [&words](const std::string& term) {
    std::size_t start = 0;
    while (start <= term.size()) {
      const std::size_t space = term.find(' ', start);
      const std::size_t stop = space == std::string::npos ? term.size() : space;
      if (stop > start) words.push_back(term.substr(start, stop - start));
      if (space == std::string::npos) break;
      start = space + 1;
    }
  };
  if (color) split_into(*color);
  if (pattern) split_into(*pattern);
  split_into(apparel);
  return words;
}

std::string AttributedItem::ToString() const {
  std::string out;
  for (const std::string& w : Words()) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

std::vector<std::string> TokenizeWithBreaks(std::string_view text) {
  std::vector<std::string> tokens;
  std::string word;
  auto flush = [&] {
    // Intra-word joiners never start or end a word.
    while (!word.empty() && (word.back() == '-' || word.back() == '\'')) {
      word.pop_back();
    }
    if (word == "and") {
      tokens.emplace_back();
    } else if (!word.empty()) {
      tokens.push_back(word);
    }
    word.clear();
  };
  for (unsigned char c : text) {
    if (IsWordByte(c)) {
      word.push_back(static_cast<char>(std::tolower(c)));
    } else if ((c == '-' || c == '\'') && !word.empty()) {
      word.push_back(static_cast<char>(c));
    } else {
      flush();
      if (IsClauseBreak(static_cast<char>(c)) &&
          (tokens.empty() || !tokens.back().empty())) {
        tokens.emplace_back();
      }
    }
  }
  flush();
  return tokens;
}

std::vector<AttributedItem> Annotate(std::string_view text,
                                     const Taxonomy& taxonomy) {
  const std::vector<std::string> tokens = TokenizeWithBreaks(text);
  const int n_tokens = static_cast<int>(tokens.size());

  std::vector<AttributedItem> items;
  std::vector<Match> pending;  // attributes awaiting an apparel
  int i = 0;
  while (i < n_tokens) {
    if (tokens[i].empty()) {
      pending.clear();
      ++i;
      continue;
    }
    std::optional<Match> match;
    for (int n = kMaxTermWords; n >= 1 && !match; --n) {
      if (i + n > n_tokens) continue;
      std::string ngram = tokens[i];
      bool crosses_break = false;
      for (int k = 1; k < n; ++k) {
        if (tokens[i + k].empty()) {
          crosses_break = true;
          break;
        }
        ngram += ' ';
        ngram += tokens[i + k];
      }
      if (crosses_break) continue;
      LookupResult hit = taxonomy.Lookup(ngram);
      if (hit.term_class != TermClass::kNone) {
        match = Match{hit.term_class, std::move(hit.canonical), i, i + n};
      }
    }
    if (!match) {
      ++i;
      continue;
    }
    i = match->end;
    if (match->cls != TermClass::kApparel) {
      pending.push_back(std::move(*match));
      continue;
    }
    AttributedItem item{match->term, std::nullopt, std::nullopt};
    int color_end = -1;
    int pattern_end = -1;
    for (const Match& attr : pending) {
      if (match->begin - attr.end >= kAttachWindow) continue;
      if (attr.cls == TermClass::kColor && attr.end > color_end) {
        item.color = attr.term;
        color_end = attr.end;
      } else if (attr.cls == TermClass::kPattern && attr.end > pattern_end) {
        item.pattern = attr.term;
        pattern_end = attr.end;
      }
    }
    // Anything left behind is farther from every later apparel.
    pending.clear();
    if (std::find(items.begin(), items.end(), item) == items.end()) {
      items.push_back(std::move(item));
    }
  }
  return items;
}

std::optional<StructuredPost> AnnotatePost(const SocialPost& post,
                                           const Taxonomy& taxonomy) {
  std::vector<AttributedItem> items = Annotate(post.text, taxonomy);
  if (items.size() < 2) return std::nullopt;
  return StructuredPost{post.id, std::move(items)};
}

}  // namespace stylecomp

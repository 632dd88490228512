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

#include "stylecomp/taxonomy.h"

#include <cctype>
#include <sstream>
#include <vector>

#include "stylecomp/errors.h"
#include "stylecomp/io.h"

namespace stylecomp {
namespace {

int WordCount(std::string_view canonical) {
  if (canonical.empty()) return 0;
  int words = 1;
  for (char c : canonical) words += (c == ' ');
  return words;
}

// Line of the first occurrence of `"key"` in the raw text, for schema errors.
int LineOfKey(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 1 : LineOfOffset(text, pos);
}

std::set<std::string> ReadTermArray(const Json& root, std::string_view text,
                                    const char* key) {
  std::set<std::string> out;
  if (!root.contains(key)) return out;
  const Json& arr = root.at(key);
  if (!arr.is_array()) {
    throw ParseError("taxonomy: line " + std::to_string(LineOfKey(text, key)) +
                     ": '" + key + "' must be an array of strings");
  }
  for (const Json& v : arr) {
    if (!v.is_string()) {
      throw ParseError("taxonomy: line " +
                       std::to_string(LineOfKey(text, key)) + ": '" + key +
                       "' holds a non-string entry");
    }
    out.insert(Canonicalize(v.get<std::string>()));
  }
  return out;
}

}  // namespace

std::string_view TermClassName(TermClass c) {
  switch (c) {
    case TermClass::kApparel:
      return "apparel";
    case TermClass::kColor:
      return "color";
    case TermClass::kPattern:
      return "pattern";
    case TermClass::kNone:
      break;
  }
  return "none";
}

std::string Canonicalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

Taxonomy::Taxonomy(std::set<std::string> apparel, std::set<std::string> colors,
                   std::set<std::string> patterns,
                   std::map<std::string, std::string> synonyms)
    : apparel_(std::move(apparel)),
      colors_(std::move(colors)),
      patterns_(std::move(patterns)) {
  const std::pair<const std::set<std::string>*, TermClass> classes[] = {
      {&apparel_, TermClass::kApparel},
      {&colors_, TermClass::kColor},
      {&patterns_, TermClass::kPattern}};
  std::map<std::string, TermClass> seen;
  for (const auto& [terms, cls] : classes) {
    for (const std::string& t : *terms) {
      if (t.empty() || t != Canonicalize(t) || WordCount(t) > kMaxTermWords) {
        throw ParseError("taxonomy: invalid term '" + t + "'");
      }
      auto [it, inserted] = seen.emplace(t, cls);
      if (!inserted) {
        throw ConflictError("taxonomy: term '" + t + "' listed as both " +
                            std::string(TermClassName(it->second)) + " and " +
                            std::string(TermClassName(cls)));
      }
    }
  }
  for (auto& [from, to] : synonyms) {
    const std::string key = Canonicalize(from);
    const std::string target = Canonicalize(to);
    if (key.empty() || WordCount(key) > kMaxTermWords) {
      throw ParseError("taxonomy: invalid synonym '" + from + "'");
    }
    if (!seen.contains(target)) {
      throw ConflictError("taxonomy: synonym '" + key + "' targets unknown term '" +
                          target + "'");
    }
    if (auto it = seen.find(key); it != seen.end() && key != target) {
      throw ConflictError("taxonomy: synonym '" + key +
                          "' is already a " +
                          std::string(TermClassName(it->second)) + " term");
    }
    synonyms_[key] = target;
  }
}

TermClass Taxonomy::ClassOf(const std::string& canonical) const {
  if (apparel_.contains(canonical)) return TermClass::kApparel;
  if (colors_.contains(canonical)) return TermClass::kColor;
  if (patterns_.contains(canonical)) return TermClass::kPattern;
  return TermClass::kNone;
}

LookupResult Taxonomy::Lookup(std::string_view ngram) const {
  std::string key = Canonicalize(ngram);
  if (WordCount(key) > kMaxTermWords) {
    throw InvalidArgument("lookup: n-gram '" + key + "' exceeds " +
                          std::to_string(kMaxTermWords) + " words");
  }
  if (auto it = synonyms_.find(key); it != synonyms_.end()) key = it->second;
  const TermClass cls = ClassOf(key);
  if (cls == TermClass::kNone) return {};
  return {cls, std::move(key)};
}

std::string Taxonomy::Serialize() const {
  Json j;
  j["apparel"] = apparel_;
  j["colors"] = colors_;
  j["patterns"] = patterns_;
  j["synonyms"] = synonyms_;
  return j.dump(2) + "\n";
}

Taxonomy ParseTaxonomy(std::string_view json_text) {
  const Json root = ParseJson(json_text, "taxonomy");
  if (!root.is_object()) {
    throw ParseError("taxonomy: line 1: top level must be an object");
  }
  std::map<std::string, std::string> synonyms;
  if (root.contains("synonyms")) {
    const Json& syn = root.at("synonyms");
    if (!syn.is_object()) {
      throw ParseError("taxonomy: line " +
                       std::to_string(LineOfKey(json_text, "synonyms")) +
                       ": 'synonyms' must be an object");
    }
    for (const auto& [k, v] : syn.items()) {
      if (!v.is_string()) {
        throw ParseError("taxonomy: line " +
                         std::to_string(LineOfKey(json_text, k)) +
                         ": synonym '" + k + "' must map to a string");
      }
      synonyms[k] = v.get<std::string>();
    }
  }
  return Taxonomy(ReadTermArray(root, json_text, "apparel"),
                  ReadTermArray(root, json_text, "colors"),
                  ReadTermArray(root, json_text, "patterns"),
                  std::move(synonyms));
}

Taxonomy LoadTaxonomy(const std::filesystem::path& path) {
  return ParseTaxonomy(ReadFile(path));
}

}  // namespace stylecomp

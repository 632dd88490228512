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

#include <gtest/gtest.h>

#include "stylecomp/errors.h"
#include "stylecomp/fixtures.h"
#include "test_util.h"

namespace stylecomp {
namespace {

TEST(Taxonomy, LoadsSmallFile) {
  const Taxonomy t = ParseTaxonomy(R"({"apparel": ["dress", "jeans"], "colors": ["red"],
      "patterns": ["floral"], "synonyms": {}})");
  EXPECT_EQ(t.apparel_terms().size(), 2u);
  EXPECT_EQ(t.color_terms().size(), 1u);
  EXPECT_EQ(t.pattern_terms().size(), 1u);
}

TEST(Taxonomy, SynonymResolvesToCanonical) {
  const Taxonomy t = ParseTaxonomy(R"({"apparel": ["jeans"], "colors": [], "patterns": [],
      "synonyms": {"denims": "jeans"}})");
  EXPECT_EQ(t.Lookup("denims"), (LookupResult{TermClass::kApparel, "jeans"}));
}

TEST(Taxonomy, TermInTwoClassesIsConflictNamingTheTerm) {
  try {
    ParseTaxonomy(R"({"apparel": [], "colors": ["red"], "patterns": ["red"], "synonyms": {}})");
    FAIL() << "expected ConflictError";
  } catch (const ConflictError& e) {
    EXPECT_NE(std::string(e.what()).find("red"), std::string::npos);
  }
}

TEST(Taxonomy, SynonymToUnknownTermIsConflict) {
  EXPECT_THROW(ParseTaxonomy(R"({"apparel": ["jeans"], "colors": [], "patterns": [],
      "synonyms": {"denims": "trousers"}})"),
               ConflictError);
}

TEST(Taxonomy, MalformedFileReportsLine) {
  try {
    ParseTaxonomy("{\n  \"apparel\": [\"dress\",\n  oops\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Taxonomy, DuplicatesAreMerged) {
  const Taxonomy t = ParseTaxonomy(R"({"apparel": ["dress", "Dress", " dress "],
      "colors": [], "patterns": [], "synonyms": {}})");
  EXPECT_EQ(t.apparel_terms().size(), 1u);
}

TEST(Taxonomy, LookupExamples) {
  const Taxonomy& t = FixtureTaxonomy();
  EXPECT_EQ(t.Lookup("polka dot"), (LookupResult{TermClass::kPattern, "polka dot"}));
  EXPECT_EQ(t.Lookup("xyzzy").term_class, TermClass::kNone);
  EXPECT_EQ(t.Lookup("JEANS "), (LookupResult{TermClass::kApparel, "jeans"}));
  EXPECT_EQ(t.Lookup("  light   Blue"), (LookupResult{TermClass::kColor, "light blue"}));
}

TEST(Taxonomy, LookupRejectsLongNgrams) {
  EXPECT_THROW(FixtureTaxonomy().Lookup("a b c d"), InvalidArgument);
}

TEST(Taxonomy, EveryTermLooksUpToItsClass) {
  const Taxonomy& t = FixtureTaxonomy();
  for (const auto& term : t.apparel_terms()) EXPECT_EQ(t.Lookup(term).term_class, TermClass::kApparel);
  for (const auto& term : t.color_terms()) EXPECT_EQ(t.Lookup(term).term_class, TermClass::kColor);
  for (const auto& term : t.pattern_terms()) EXPECT_EQ(t.Lookup(term).term_class, TermClass::kPattern);
}

TEST(Taxonomy, SerializeRoundTripIsBitExact) {
  const Taxonomy& t = FixtureTaxonomy();
  const std::string text = t.Serialize();
  const Taxonomy again = ParseTaxonomy(text);
  EXPECT_EQ(again, t);
  EXPECT_EQ(again.Serialize(), text);

  testing::TempDir dir;
  WriteFile(dir / "t.json", text);
  EXPECT_EQ(LoadTaxonomy(dir / "t.json"), t);
}

TEST(Taxonomy, FixtureSizes) {
  const Taxonomy& t = FixtureTaxonomy();
  EXPECT_EQ(t.apparel_terms().size(), 57u);
  EXPECT_EQ(t.color_terms().size(), 20u);
  EXPECT_EQ(t.pattern_terms().size(), 15u);
  std::size_t grouped = 0;
  for (const auto& g : FixtureApparelGroups()) grouped += g.members.size();
  EXPECT_EQ(grouped, t.apparel_terms().size());
}

TEST(Taxonomy, CanonicalizeCollapsesWhitespaceAndCase) {
  EXPECT_EQ(Canonicalize("  Polka\t DOT "), "polka dot");
  EXPECT_EQ(Canonicalize(""), "");
}

}  // namespace
}  // namespace stylecomp

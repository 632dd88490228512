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

#ifndef STYLECOMP_FIXTURES_H_
#define STYLECOMP_FIXTURES_H_

#include <string>
#include <vector>

namespace stylecomp {

// A garment slot: at most one member of a group is worn at a time.
struct ApparelGroup {
  std::string name;
  std::vector<std::string> members;
};

// Vocabulary behind FixtureTaxonomy(): 57 apparel terms in 7 slots, 20
// colors, 15 patterns.
const std::vector<ApparelGroup>& FixtureApparelGroups();
const std::vector<std::string>& FixtureColors();
const std::vector<std::string>& FixturePatterns();

}  // namespace stylecomp

#endif  // STYLECOMP_FIXTURES_H_

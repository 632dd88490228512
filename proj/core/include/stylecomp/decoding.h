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

#ifndef STYLECOMP_DECODING_H_
#define STYLECOMP_DECODING_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylecomp/annotator.h"
#include "stylecomp/model.h"

namespace stylecomp {

struct Hypothesis {
  std::vector<int> tokens;  // after <sos>; ends in <eos> unless force-finished
  double logprob = 0.0;
  bool finished = false;

  bool EndsWithEos() const;
  // Tokens without the trailing <eos>.
  std::span<const int> Content() const;

  bool operator==(const Hypothesis&) const = default;
};

struct BeamOptions {
  int width = 10;
  int max_len = 8;
  // Rank finished hypotheses by logprob / length instead of raw logprob.
  bool length_normalize = false;
};

// Decoding never emits <pad>, <sos>, <eoi> or <unk>, and <eos> is not
// allowed as the first token (an item has at least one word).
bool IsDecodableToken(int id, int step);

// Word-level beam search. At each step every live hypothesis is expanded
// over the decodable tokens and the `width` best expansions survive; those
// ending in <eos> join the finished pool. Search stops once `width`
// hypotheses have finished, when nothing is live, or after `max_len`
// tokens, where survivors are force-finished. Equal scores are ordered by
// the lower newest token id, then by the better-ranked parent. Returns at
// most `width` finished hypotheses, best first. Throws InvalidArgument on
// an empty source or a non-positive width/max_len.
std::vector<Hypothesis> BeamSearch(const Model& model,
                                   std::span<const int> source_ids,
                                   const BeamOptions& options);

// Argmax token at each step (lowest id on ties) until <eos> or max_len.
Hypothesis GreedyDecode(const Model& model, std::span<const int> source_ids,
                        int max_len);

struct Candidate {
  std::vector<std::string> words;      // without <eos>
  std::optional<AttributedItem> item;  // set when the words parse as one item
  bool raw = false;                    // words do not form a color?/pattern?/apparel item
  double logprob = 0.0;
  double score = 0.0;  // exp(logprob) renormalized over the returned list
  std::vector<int> tokens;

  std::string Text() const;
};

struct Completion {
  std::vector<Candidate> candidates;
  std::vector<int> source_ids;
  std::vector<std::string> unknown_words;  // query words mapped to <unk>
};

// Encodes the itemset, beam-searches with width k and parses each output
// back into an AttributedItem against `taxonomy`. Throws DataError when no
// query word is in the model's source vocabulary.
Completion CompleteItemset(std::span<const AttributedItem> items,
                           const Model& model, const Taxonomy& taxonomy, int k);

}  // namespace stylecomp

#endif  // STYLECOMP_DECODING_H_

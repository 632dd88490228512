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

#include "stylecomp/decoding.h"

#include <algorithm>
#include <cmath>

#include "stylecomp/errors.h"

namespace stylecomp {

bool Hypothesis::EndsWithEos() const {
  return !tokens.empty() && tokens.back() == kEos;
}

std::span<const int> Hypothesis::Content() const {
  std::span<const int> all(tokens);
  return EndsWithEos() ? all.first(all.size() - 1) : all;
}

bool IsDecodableToken(int id, int step) {
  switch (id) {
    case kPad:
    case kSos:
    case kEoi:
    case kUnk:
      return false;
    case kEos:
      return step > 1;
    default:
      return true;
  }
}

namespace {

struct LiveHyp {
  Hypothesis hyp;
  LstmState state;
};

struct Expansion {
  double score;
  int token;
  std::size_t parent;
};

double RankScore(const Hypothesis& h, bool length_normalize) {
  if (!length_normalize || h.tokens.empty()) return h.logprob;
  return h.logprob / static_cast<double>(h.tokens.size());
}

}  // namespace

std::vector<Hypothesis> BeamSearch(const Model& model,
                                   std::span<const int> source_ids,
                                   const BeamOptions& options) {
  if (options.width < 1) throw InvalidArgument("beam_search: width must be >= 1");
  if (options.max_len < 1) throw InvalidArgument("beam_search: max_len must be >= 1");
  if (source_ids.empty()) throw InvalidArgument("beam_search: empty source");

  const EncoderStates enc = Encode(model, source_ids);
  const auto width = static_cast<std::size_t>(options.width);
  std::vector<LiveHyp> live;
  live.push_back({Hypothesis{}, enc.Final()});
  std::vector<Hypothesis> finished;

  for (int step = 1; step <= options.max_len && !live.empty(); ++step) {
    std::vector<StepResult> results;
    results.reserve(live.size());
    std::vector<Expansion> expansions;
    for (std::size_t p = 0; p < live.size(); ++p) {
      const int prev = live[p].hyp.tokens.empty() ? kSos : live[p].hyp.tokens.back();
      results.push_back(DecodeStep(model, prev, live[p].state, enc));
      const Tensor& lp = results.back().log_probs;
      for (std::size_t t = 0; t < lp.size(); ++t) {
        if (!IsDecodableToken(static_cast<int>(t), step)) continue;
        expansions.push_back({live[p].hyp.logprob + lp[t], static_cast<int>(t), p});
      }
    }
    const std::size_t keep = std::min(width, expansions.size());
    std::partial_sort(expansions.begin(), expansions.begin() + keep,
                      expansions.end(), [](const Expansion& a, const Expansion& b) {
                        if (a.score != b.score) return a.score > b.score;
                        if (a.token != b.token) return a.token < b.token;
                        return a.parent < b.parent;
                      });
    std::vector<LiveHyp> next;
    for (std::size_t k = 0; k < keep; ++k) {
      const Expansion& e = expansions[k];
      Hypothesis h = live[e.parent].hyp;
      h.tokens.push_back(e.token);
      h.logprob = e.score;
      if (e.token == kEos) {
        h.finished = true;
        finished.push_back(std::move(h));
      } else {
        next.push_back({std::move(h), results[e.parent].state});
      }
    }
    live = std::move(next);
    if (finished.size() >= width) break;
  }
  for (LiveHyp& l : live) {
    l.hyp.finished = true;
    finished.push_back(std::move(l.hyp));
  }

  std::stable_sort(finished.begin(), finished.end(),
                   [&options](const Hypothesis& a, const Hypothesis& b) {
                     const double sa = RankScore(a, options.length_normalize);
                     const double sb = RankScore(b, options.length_normalize);
                     if (sa != sb) return sa > sb;
                     return a.tokens < b.tokens;
                   });
  if (finished.size() > width) finished.resize(width);
  return finished;
}

Hypothesis GreedyDecode(const Model& model, std::span<const int> source_ids,
                        int max_len) {
  const EncoderStates enc = Encode(model, source_ids);
  LstmState state = enc.Final();
  Hypothesis h;
  int prev = kSos;
  for (int step = 1; step <= max_len; ++step) {
    StepResult r = DecodeStep(model, prev, state, enc);
    int best = -1;
    for (std::size_t t = 0; t < r.log_probs.size(); ++t) {
      if (!IsDecodableToken(static_cast<int>(t), step)) continue;
      if (best < 0 || r.log_probs[t] > r.log_probs[best]) best = static_cast<int>(t);
    }
    h.tokens.push_back(best);
    h.logprob += r.log_probs[best];
    if (best == kEos) break;
    state = std::move(r.state);
    prev = best;
  }
  h.finished = true;
  return h;
}

std::string Candidate::Text() const {
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

Completion CompleteItemset(std::span<const AttributedItem> items,
                           const Model& model, const Taxonomy& taxonomy, int k) {
  if (items.empty()) throw InvalidArgument("complete: empty itemset");
  Completion out;
  const std::vector<std::string> words = SourceWords(items);
  out.source_ids = model.vocab.source.Encode(words);
  bool any_known = false;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (out.source_ids[i] == kEoi) continue;
    if (out.source_ids[i] == kUnk) {
      out.unknown_words.push_back(words[i]);
    } else {
      any_known = true;
    }
  }
  if (!any_known) {
    throw DataError(
        "complete: no query word is in the model vocabulary; check that the "
        "taxonomy matches the one the model was trained with");
  }

  BeamOptions options;
  options.width = k;
  options.max_len = model.config.max_target_len;
  const std::vector<Hypothesis> hyps = BeamSearch(model, out.source_ids, options);

  double max_lp = -INFINITY;
  for (const Hypothesis& h : hyps) max_lp = std::max(max_lp, h.logprob);
  double total = 0.0;
  for (const Hypothesis& h : hyps) total += std::exp(h.logprob - max_lp);

  for (const Hypothesis& h : hyps) {
    Candidate c;
    c.tokens = h.tokens;
    c.logprob = h.logprob;
    c.score = std::exp(h.logprob - max_lp) / total;
    const auto content = h.Content();
    c.words = model.vocab.target.Decode(content);
    const std::vector<AttributedItem> parsed = Annotate(c.Text(), taxonomy);
    if (parsed.size() == 1 && parsed.front().Words() == c.words) {
      c.item = parsed.front();
    } else {
      c.raw = true;
    }
    out.candidates.push_back(std::move(c));
  }
  return out;
}

}  // namespace stylecomp

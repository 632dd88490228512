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

#ifndef STYLECOMP_MODEL_H_
#define STYLECOMP_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "stylecomp/autodiff.h"
#include "stylecomp/corpus.h"
#include "stylecomp/io.h"
#include "stylecomp/lstm.h"
#include "stylecomp/taxonomy.h"

namespace stylecomp {

struct ModelConfig {
  int embedding_dim = 64;
  int hidden_dim = 128;
  bool attention = true;
  int max_target_len = 8;
  double init_scale = 0.08;
  std::uint64_t seed = 1;

  // Throws ConfigError.
  void Validate() const;
  Json ToJson() const;
  // Missing keys keep their current values.
  void Update(const Json& j);

  bool operator==(const ModelConfig&) const = default;
};

// Encoder-decoder weights. The output matrix is [|V_T|, 2n] with attention
// (applied to [q; h_dec]) and [|V_T|, n] without; there is no output bias.
struct ModelParams {
  Parameter source_embedding;
  Parameter target_embedding;
  Parameter encoder_weight;
  Parameter encoder_bias;
  Parameter decoder_weight;
  Parameter decoder_bias;
  Parameter output_weight;

  std::vector<Parameter*> All();
  std::vector<const Parameter*> All() const;
  void ZeroGrad();
  NamedTensors ToNamedTensors() const;
  static ModelParams FromNamedTensors(const NamedTensors& tensors);

  bool operator==(const ModelParams& o) const;
};

// Every weight uniform on [-init_scale, init_scale], drawn in parameter
// order from Rng(config.seed).
ModelParams InitParams(const ModelConfig& config, const Vocabularies& vocab);

struct Model {
  ModelConfig config;
  Vocabularies vocab;
  ModelParams params;
  // Taxonomy the training corpus was annotated with, carried in the
  // sidecar so queries and outputs can be parsed without extra files.
  std::optional<Taxonomy> taxonomy;

  std::size_t hidden() const { return static_cast<std::size_t>(config.hidden_dim); }
};

Model MakeModel(const ModelConfig& config, const Vocabularies& vocab);

// Checkpoint at `path` plus a JSON sidecar at `path` + ".json" holding the
// config, both vocabularies and the taxonomy when present.
void SaveModel(const std::filesystem::path& path, const Model& model);
Model LoadModel(const std::filesystem::path& path);
std::filesystem::path SidecarPath(const std::filesystem::path& checkpoint);

struct EncoderStates {
  std::vector<Tensor> hidden;
  std::vector<Tensor> cell;

  std::size_t size() const { return hidden.size(); }
  LstmState Final() const { return {hidden.back(), cell.back()}; }
};

struct AttentionResult {
  Tensor weights;  // one per encoder position; a probability vector
  Tensor query;    // weighted average of encoder hidden states
};

// Runs the encoder from a zero state. Throws InvalidArgument on empty
// input and IndexError for ids outside the source vocabulary.
EncoderStates Encode(const Model& model, std::span<const int> source_ids);

// Dot-product attention of a decoder state over the encoder states.
AttentionResult Attend(const Tensor& decoder_hidden, const EncoderStates& enc);

struct StepResult {
  Tensor log_probs;  // over the target vocabulary
  LstmState state;
  std::optional<AttentionResult> attention;

  Tensor Probabilities() const;
};

// Advances the decoder on `prev_token` and predicts the next token.
// Throws ConfigError if the output matrix width contradicts the attention
// flag.
StepResult DecodeStep(const Model& model, int prev_token,
                      const LstmState& state, const EncoderStates& enc);

// Sum of log p(token_j | <sos>, token_<j, source) over `tokens`, which
// exclude the leading <sos> and may or may not end in <eos>.
double ScoreTokens(const Model& model, std::span<const int> source_ids,
                   std::span<const int> tokens);

// Teacher-forced log p(target | source) for a <sos> ... <eos> framed
// target. Throws InvalidArgument when the target has no interior tokens.
double SequenceLogprob(const Model& model, std::span<const int> source_ids,
                       std::span<const int> target_ids);

// Attention weights at every decoding step of a teacher-forced pass over
// `tokens` (empty when attention is off).
std::vector<Tensor> AttentionTrace(const Model& model,
                                   std::span<const int> source_ids,
                                   std::span<const int> tokens);

// Differentiable -log p(target | source) summed over target positions,
// built against `params` so Backward() fills their grad slots.
Var BuildNll(Graph& g, ModelParams& params, const ModelConfig& config,
             const TrainingExample& example);

}  // namespace stylecomp

#endif  // STYLECOMP_MODEL_H_

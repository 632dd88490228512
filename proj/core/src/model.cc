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

#include "stylecomp/model.h"

#include <cmath>

#include "stylecomp/errors.h"
#include "stylecomp/rng.h"

namespace stylecomp {

void ModelConfig::Validate() const {
  if (embedding_dim < 1 || hidden_dim < 1) {
    throw ConfigError("model: dimensions must be >= 1");
  }
  if (max_target_len < 2) throw ConfigError("model: max_target_len must be >= 2");
  if (!(init_scale >= 0.0)) throw ConfigError("model: init_scale must be >= 0");
}

Json ModelConfig::ToJson() const {
  return Json{{"attention", attention},
              {"embedding_dim", embedding_dim},
              {"hidden_dim", hidden_dim},
              {"init_scale", init_scale},
              {"max_target_len", max_target_len},
              {"seed", seed}};
}

void ModelConfig::Update(const Json& j) {
  embedding_dim = j.value("embedding_dim", embedding_dim);
  hidden_dim = j.value("hidden_dim", hidden_dim);
  attention = j.value("attention", attention);
  max_target_len = j.value("max_target_len", max_target_len);
  init_scale = j.value("init_scale", init_scale);
  seed = j.value("seed", seed);
}

std::vector<Parameter*> ModelParams::All() {
  return {&source_embedding, &target_embedding, &encoder_weight, &encoder_bias,
          &decoder_weight,   &decoder_bias,     &output_weight};
}

std::vector<const Parameter*> ModelParams::All() const {
  return {&source_embedding, &target_embedding, &encoder_weight, &encoder_bias,
          &decoder_weight,   &decoder_bias,     &output_weight};
}

void ModelParams::ZeroGrad() {
  for (Parameter* p : All()) p->ZeroGrad();
}

NamedTensors ModelParams::ToNamedTensors() const {
  NamedTensors out;
  for (const Parameter* p : All()) out.emplace_back(p->name, p->value);
  return out;
}

ModelParams ModelParams::FromNamedTensors(const NamedTensors& tensors) {
  ModelParams params;
  auto slots = params.All();
  const char* names[] = {"source_embedding", "target_embedding",
                         "encoder.weight",   "encoder.bias",
                         "decoder.weight",   "decoder.bias",
                         "output.weight"};
  if (tensors.size() != slots.size()) {
    throw ParseError("checkpoint: expected " + std::to_string(slots.size()) +
                     " tensors, found " + std::to_string(tensors.size()));
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (tensors[i].first != names[i]) {
      throw ParseError("checkpoint: expected tensor '" + std::string(names[i]) +
                       "', found '" + tensors[i].first + "'");
    }
    *slots[i] = Parameter(names[i], tensors[i].second);
  }
  return params;
}

bool ModelParams::operator==(const ModelParams& o) const {
  const auto a = All();
  const auto b = o.All();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i]->name != b[i]->name || a[i]->value != b[i]->value) return false;
  }
  return true;
}

ModelParams InitParams(const ModelConfig& config, const Vocabularies& vocab) {
  config.Validate();
  const std::size_t e = config.embedding_dim;
  const std::size_t n = config.hidden_dim;
  const std::size_t vs = vocab.source.size();
  const std::size_t vt = vocab.target.size();
  const std::size_t out_width = config.attention ? 2 * n : n;

  ModelParams p;
  p.source_embedding = Parameter("source_embedding", Tensor({vs, e}));
  p.target_embedding = Parameter("target_embedding", Tensor({vt, e}));
  p.encoder_weight = Parameter("encoder.weight", Tensor({4 * n, e + n}));
  p.encoder_bias = Parameter("encoder.bias", Tensor({4 * n}));
  p.decoder_weight = Parameter("decoder.weight", Tensor({4 * n, e + n}));
  p.decoder_bias = Parameter("decoder.bias", Tensor({4 * n}));
  p.output_weight = Parameter("output.weight", Tensor({vt, out_width}));

  Rng rng(config.seed);
  for (Parameter* param : p.All()) {
    for (double& v : param->value.values()) {
      v = rng.Uniform(-config.init_scale, config.init_scale);
    }
  }
  return p;
}

Model MakeModel(const ModelConfig& config, const Vocabularies& vocab) {
  return Model{config, vocab, InitParams(config, vocab)};
}

std::filesystem::path SidecarPath(const std::filesystem::path& checkpoint) {
  return std::filesystem::path(checkpoint.string() + ".json");
}

void SaveModel(const std::filesystem::path& path, const Model& model) {
  SaveCheckpoint(path, model.params.ToNamedTensors());
  Json sidecar{{"config", model.config.ToJson()},
               {"source_vocab", model.vocab.source.ToJson()},
               {"target_vocab", model.vocab.target.ToJson()}};
  if (model.taxonomy) sidecar["taxonomy"] = Json::parse(model.taxonomy->Serialize());
  WriteFile(SidecarPath(path), sidecar.dump(2) + "\n");
}

Model LoadModel(const std::filesystem::path& path) {
  Model model;
  const auto sidecar_path = SidecarPath(path);
  const Json sidecar = ParseJson(ReadFile(sidecar_path), sidecar_path.string());
  try {
    model.config.Update(sidecar.at("config"));
    model.vocab.source = Vocabulary::FromJson(sidecar.at("source_vocab"),
                                              Vocabulary::Side::kSource);
    model.vocab.target = Vocabulary::FromJson(sidecar.at("target_vocab"),
                                              Vocabulary::Side::kTarget);
    if (sidecar.contains("taxonomy")) {
      model.taxonomy = ParseTaxonomy(sidecar.at("taxonomy").dump());
    }
  } catch (const Json::exception& e) {
    throw ParseError(sidecar_path.string() + ": " + e.what());
  }
  model.config.Validate();
  model.params = ModelParams::FromNamedTensors(LoadCheckpoint(path));

  const ModelParams expected = InitParams(
      ModelConfig{model.config.embedding_dim, model.config.hidden_dim,
                  model.config.attention, model.config.max_target_len, 0.0, 0},
      model.vocab);
  const auto want = expected.All();
  const auto got = model.params.All();
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (want[i]->value.shape() != got[i]->value.shape()) {
      throw ConfigError("checkpoint tensor '" + got[i]->name + "' has shape " +
                        ShapeString(got[i]->value.shape()) + ", config implies " +
                        ShapeString(want[i]->value.shape()));
    }
  }
  return model;
}

namespace {

void CheckOutputWidth(const Model& model) {
  const std::size_t n = model.hidden();
  const std::size_t want = model.config.attention ? 2 * n : n;
  const Tensor& w = model.params.output_weight.value;
  if (w.rank() != 2 || w.cols() != want) {
    throw ConfigError("output weight " + ShapeString(w.shape()) +
                      " does not match attention=" +
                      (model.config.attention ? "on" : "off") +
                      " (expected width " + std::to_string(want) + ")");
  }
}

}  // namespace

EncoderStates Encode(const Model& model, std::span<const int> source_ids) {
  if (source_ids.empty()) throw InvalidArgument("encode: empty source");
  const ModelParams& p = model.params;
  EncoderStates enc;
  LstmState state = LstmState::Zero(model.hidden());
  for (int id : source_ids) {
    if (id < 0) throw IndexError("encode: negative id");
    const Tensor x = kernels::Row(p.source_embedding.value, id);
    state = LstmCell(x, state, p.encoder_weight.value, p.encoder_bias.value);
    enc.hidden.push_back(state.h);
    enc.cell.push_back(state.c);
  }
  return enc;
}

AttentionResult Attend(const Tensor& decoder_hidden, const EncoderStates& enc) {
  if (enc.size() == 0) throw InvalidArgument("attend: no encoder states");
  const Tensor keys = kernels::Stack(enc.hidden);
  AttentionResult r;
  r.weights = kernels::Softmax(kernels::MatVec(keys, decoder_hidden));
  r.query = kernels::MatTVec(keys, r.weights);
  return r;
}

Tensor StepResult::Probabilities() const {
  Tensor p(log_probs.shape());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(log_probs[i]);
  return p;
}

StepResult DecodeStep(const Model& model, int prev_token,
                      const LstmState& state, const EncoderStates& enc) {
  CheckOutputWidth(model);
  const ModelParams& p = model.params;
  if (prev_token < 0) throw IndexError("decode_step: negative token id");
  const Tensor x = kernels::Row(p.target_embedding.value, prev_token);
  StepResult r;
  r.state = LstmCell(x, state, p.decoder_weight.value, p.decoder_bias.value);
  Tensor features;
  if (model.config.attention) {
    r.attention = Attend(r.state.h, enc);
    features = kernels::Concat(r.attention->query, r.state.h);
  } else {
    features = r.state.h;
  }
  r.log_probs = kernels::LogSoftmax(kernels::MatVec(p.output_weight.value, features));
  return r;
}

double ScoreTokens(const Model& model, std::span<const int> source_ids,
                   std::span<const int> tokens) {
  const EncoderStates enc = Encode(model, source_ids);
  LstmState state = enc.Final();
  int prev = kSos;
  double total = 0.0;
  for (int token : tokens) {
    StepResult step = DecodeStep(model, prev, state, enc);
    if (token < 0 || static_cast<std::size_t>(token) >= step.log_probs.size()) {
      throw IndexError("score: token " + std::to_string(token) +
                       " outside target vocabulary");
    }
    total += step.log_probs[token];
    state = std::move(step.state);
    prev = token;
  }
  return total;
}

double SequenceLogprob(const Model& model, std::span<const int> source_ids,
                       std::span<const int> target_ids) {
  if (target_ids.size() < 3 || target_ids.front() != kSos ||
      target_ids.back() != kEos) {
    throw InvalidArgument(
        "sequence_logprob: target must be <sos> w1..wt <eos> with t >= 1");
  }
  return ScoreTokens(model, source_ids, target_ids.subspan(1));
}

std::vector<Tensor> AttentionTrace(const Model& model,
                                   std::span<const int> source_ids,
                                   std::span<const int> tokens) {
  std::vector<Tensor> trace;
  if (!model.config.attention) return trace;
  const EncoderStates enc = Encode(model, source_ids);
  LstmState state = enc.Final();
  int prev = kSos;
  for (int token : tokens) {
    StepResult step = DecodeStep(model, prev, state, enc);
    trace.push_back(step.attention->weights);
    state = std::move(step.state);
    prev = token;
  }
  return trace;
}

Var BuildNll(Graph& g, ModelParams& params, const ModelConfig& config,
             const TrainingExample& example) {
  if (example.source_ids.empty()) throw InvalidArgument("nll: empty source");
  if (example.target_ids.size() < 3) throw InvalidArgument("nll: short target");
  const std::size_t n = config.hidden_dim;
  const std::size_t want = config.attention ? 2 * n : n;
  if (params.output_weight.value.cols() != want) {
    throw ConfigError("nll: output weight " +
                      ShapeString(params.output_weight.value.shape()) +
                      " does not match the attention flag");
  }

  const Var enc_w = g.Param(params.encoder_weight);
  const Var enc_b = g.Param(params.encoder_bias);
  const Var dec_w = g.Param(params.decoder_weight);
  const Var dec_b = g.Param(params.decoder_bias);
  const Var out_w = g.Param(params.output_weight);

  const Var zero = g.Constant(Tensor({n}));
  LstmVars state{zero, zero};
  std::vector<Var> enc_hidden;
  for (int id : example.source_ids) {
    const Var x = g.Embed(params.source_embedding, id);
    state = LstmCell(g, x, state, enc_w, enc_b);
    enc_hidden.push_back(state.h);
  }
  const Var keys = config.attention ? g.Stack(enc_hidden) : Var{};

  std::vector<Var> losses;
  for (std::size_t j = 1; j < example.target_ids.size(); ++j) {
    const Var x = g.Embed(params.target_embedding, example.target_ids[j - 1]);
    state = LstmCell(g, x, state, dec_w, dec_b);
    Var features = state.h;
    if (config.attention) {
      const Var weights = g.Softmax(g.Linear(state.h, keys));
      const Var query = g.LinearT(weights, keys);
      features = g.Concat(query, state.h);
    }
    const Var dist = g.Softmax(g.Linear(features, out_w));
    losses.push_back(g.CrossEntropy(dist, example.target_ids[j]));
  }
  return g.Sum(losses);
}

}  // namespace stylecomp

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

#include "stylecomp/training.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "stylecomp/errors.h"
#include "stylecomp/rng.h"

namespace stylecomp {

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("train: learning_rate must be > 0");
  if (!(lr_decay > 0.0 && lr_decay <= 1.0)) {
    throw ConfigError("train: lr_decay must be in (0, 1]");
  }
  if (epochs < 1) throw ConfigError("train: epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("train: batch_size must be >= 1");
  if (early_stop_patience < 1) throw ConfigError("train: patience must be >= 1");
}

Json TrainConfig::ToJson() const {
  return Json{{"batch_size", batch_size},
              {"clip_norm", clip_norm},
              {"early_stop_patience", early_stop_patience},
              {"epochs", epochs},
              {"learning_rate", learning_rate},
              {"lr_decay", lr_decay},
              {"per_token_loss", per_token_loss},
              {"seed", seed}};
}

void TrainConfig::Update(const Json& j) {
  learning_rate = j.value("learning_rate", learning_rate);
  lr_decay = j.value("lr_decay", lr_decay);
  epochs = j.value("epochs", epochs);
  batch_size = j.value("batch_size", batch_size);
  clip_norm = j.value("clip_norm", clip_norm);
  seed = j.value("seed", seed);
  early_stop_patience = j.value("early_stop_patience", early_stop_patience);
  per_token_loss = j.value("per_token_loss", per_token_loss);
}

Json EpochRecord::ToJson() const {
  return Json{{"epoch", epoch},
              {"learning_rate", learning_rate},
              {"train_nll", train_nll},
              {"validate_nll", validate_nll}};
}

std::string TrainReport::ToJsonLines() const {
  std::string out;
  for (const EpochRecord& e : epochs) {
    Json j = e.ToJson();
    j["best_epoch"] = best_epoch;
    out += DumpLine(j);
  }
  return out;
}

namespace {

double ScoredTokens(const TrainingExample& ex) {
  return static_cast<double>(ex.target_ids.size() - 1);
}

}  // namespace

double BatchNll(const Model& model, std::span<const TrainingExample> examples,
                bool per_token) {
  if (examples.empty()) throw InvalidArgument("batch_nll: no examples");
  double total = 0.0;
  for (const TrainingExample& ex : examples) {
    const double nll = -SequenceLogprob(model, ex.source_ids, ex.target_ids);
    total += per_token ? nll / ScoredTokens(ex) : nll;
  }
  return total / static_cast<double>(examples.size());
}

double SgdStep(std::span<Parameter* const> params, double learning_rate,
               double clip_norm) {
  double sq = 0.0;
  for (const Parameter* p : params) {
    for (double g : p->grad.values()) sq += g * g;
  }
  const double norm = std::sqrt(sq);
  if (!std::isfinite(norm)) throw NumericError("sgd_step: non-finite gradient");
  double scale = learning_rate;
  if (clip_norm > 0.0 && norm > clip_norm) scale *= clip_norm / norm;
  for (Parameter* p : params) {
    if (p->grad.size() != p->value.size()) continue;  // never touched
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      p->value[i] -= scale * p->grad[i];
    }
  }
  return norm;
}

double AccumulateGradients(Model& model, const TrainingExample& example,
                           double weight) {
  Graph g;
  const Var nll = BuildNll(g, model.params, model.config, example);
  const double value = g.scalar(nll);
  g.Backward(g.Scale(nll, weight));
  return value;
}

std::vector<TrainingExample> EncodeAll(std::span<const LabeledExample> examples,
                                       const Vocabularies& vocab) {
  std::vector<TrainingExample> out;
  out.reserve(examples.size());
  for (const LabeledExample& ex : examples) {
    out.push_back(Encode(ex, vocab.source, vocab.target));
  }
  return out;
}

TrainResult TrainModel(Model model, std::span<const TrainingExample> train,
                       std::span<const TrainingExample> validate,
                       const TrainConfig& config, const EpochCallback& on_epoch) {
  config.Validate();
  if (train.empty()) throw DataError("train: empty train split");
  if (validate.empty()) throw DataError("train: empty validate split");

  TrainReport report;
  report.initial_train_nll = BatchNll(model, train);
  report.initial_validate_nll = BatchNll(model, validate);
  const double limit = 1e3 * std::max(report.initial_train_nll,
                                      report.initial_validate_nll);

  const std::vector<Parameter*> params = model.params.All();
  Rng rng(config.seed);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  ModelParams best = model.params;
  double best_nll = report.initial_validate_nll;
  double lr = config.learning_rate;
  int stale = 0;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.Shuffle(std::span<std::size_t>(order));
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size) {
      const std::size_t stop =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      const double batch_weight = 1.0 / static_cast<double>(stop - start);
      model.params.ZeroGrad();
      for (std::size_t k = start; k < stop; ++k) {
        const TrainingExample& ex = train[order[k]];
        const double tokens = ScoredTokens(ex);
        const double weight =
            batch_weight * (config.per_token_loss ? 1.0 / tokens : 1.0);
        epoch_loss += AccumulateGradients(model, ex, weight) / tokens;
      }
      SgdStep(params, lr, config.clip_norm);
    }

    EpochRecord record;
    record.epoch = epoch;
    record.learning_rate = lr;
    record.train_nll = epoch_loss / static_cast<double>(train.size());
    record.validate_nll = BatchNll(model, validate);
    report.epochs.push_back(record);
    if (on_epoch) on_epoch(record);

    if (!std::isfinite(record.train_nll) || !std::isfinite(record.validate_nll) ||
        record.train_nll > limit || record.validate_nll > limit) {
      std::ostringstream msg;
      msg << "train: diverged at epoch " << epoch << " (train nll "
          << record.train_nll << ", validate nll " << record.validate_nll
          << ", initial " << report.initial_train_nll << ", lr " << lr << ")";
      throw NumericError(msg.str());
    }

    if (record.validate_nll < best_nll) {
      best_nll = record.validate_nll;
      best = model.params;
      report.best_epoch = epoch;
      stale = 0;
    } else {
      lr *= config.lr_decay;
      if (++stale >= config.early_stop_patience) break;
    }
  }

  model.params = std::move(best);
  return TrainResult{std::move(model), std::move(report)};
}

TrainResult Train(const Corpus& corpus, const ModelConfig& model_config,
                  const TrainConfig& train_config, const EpochCallback& on_epoch) {
  const auto train = EncodeAll(corpus.train.examples, corpus.vocab);
  const auto validate = EncodeAll(corpus.validate.examples, corpus.vocab);
  return TrainModel(MakeModel(model_config, corpus.vocab), train, validate,
                    train_config, on_epoch);
}

}  // namespace stylecomp

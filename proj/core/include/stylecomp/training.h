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

#ifndef STYLECOMP_TRAINING_H_
#define STYLECOMP_TRAINING_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stylecomp/corpus.h"
#include "stylecomp/model.h"

namespace stylecomp {

struct TrainConfig {
  double learning_rate = 0.5;
  // Applied whenever validation NLL fails to improve.
  double lr_decay = 0.5;
  int epochs = 100;
  int batch_size = 16;
  double clip_norm = 5.0;
  std::uint64_t seed = 1;
  int early_stop_patience = 10;
  // Divide each example's NLL by its scored target length. Off gives the
  // plain summed NLL.
  bool per_token_loss = true;

  void Validate() const;
  Json ToJson() const;
  void Update(const Json& j);

  bool operator==(const TrainConfig&) const = default;
};

struct EpochRecord {
  int epoch = 0;
  double train_nll = 0.0;
  double validate_nll = 0.0;
  double learning_rate = 0.0;

  Json ToJson() const;
  bool operator==(const EpochRecord&) const = default;
};

struct TrainReport {
  double initial_train_nll = 0.0;
  double initial_validate_nll = 0.0;
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;

  // One JSON object per epoch.
  std::string ToJsonLines() const;
  bool operator==(const TrainReport&) const = default;
};

// Mean over examples of -log p(y|x), divided per example by the number of
// scored target tokens when `per_token` is set.
double BatchNll(const Model& model, std::span<const TrainingExample> examples,
                bool per_token = true);

// Clips the global gradient L2 norm to `clip_norm` (if positive), then
// steps θ -= lr * g. Returns the pre-clip norm. Throws NumericError on a
// non-finite gradient, leaving parameters untouched.
double SgdStep(std::span<Parameter* const> params, double learning_rate,
               double clip_norm);

// Accumulates d(loss)/dθ for one example into the parameters' grad slots,
// with the loss scaled by `weight`. Returns the unscaled NLL.
double AccumulateGradients(Model& model, const TrainingExample& example,
                           double weight);

struct TrainResult {
  Model model;  // parameters from the best validation epoch
  TrainReport report;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

// Minibatch SGD with a seeded per-epoch shuffle. Keeps the best-validation
// parameters, decays the learning rate on non-improving epochs and stops
// after `early_stop_patience` of them. Throws DataError on empty splits
// and NumericError on divergence (NLL above 1e3 times its initial value).
TrainResult Train(const Corpus& corpus, const ModelConfig& model_config,
                  const TrainConfig& train_config,
                  const EpochCallback& on_epoch = {});

// Same loop over pre-encoded examples and a given starting model.
TrainResult TrainModel(Model model, std::span<const TrainingExample> train,
                       std::span<const TrainingExample> validate,
                       const TrainConfig& config,
                       const EpochCallback& on_epoch = {});

std::vector<TrainingExample> EncodeAll(std::span<const LabeledExample> examples,
                                       const Vocabularies& vocab);

}  // namespace stylecomp

#endif  // STYLECOMP_TRAINING_H_

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

#ifndef STYLECOMP_AUTODIFF_H_
#define STYLECOMP_AUTODIFF_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "stylecomp/tensor.h"

namespace stylecomp {

// A trainable tensor and its accumulated gradient.
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;

  Parameter() = default;
  Parameter(std::string n, Tensor v)
      : name(std::move(n)), value(std::move(v)), grad(value.shape()) {}

  void ZeroGrad() { grad = Tensor(value.shape()); }
};

class Graph;

// Handle to a node in a Graph.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

// Tape of primitive applications for one forward/backward pass. Nodes are
// appended after their inputs, so index order is a topological order and
// Backward() walks it in reverse exactly once. Not thread-safe; confine a
// Graph to one worker.
class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  // Leaves.
  Var Constant(Tensor value);
  // One leaf per Parameter per graph; repeated calls return the same node.
  Var Param(Parameter& p);

  // Row `id` of an embedding parameter; gradients go straight to that row.
  Var Embed(Parameter& table, std::size_t id);
  // w [m, n] x [n] + b [m]; `b` may be invalid for no bias.
  Var Linear(Var x, Var w, Var b = {});
  // w [m, n] transposed times x [m] -> [n].
  Var LinearT(Var x, Var w);
  Var Sigmoid(Var x);
  Var Tanh(Var x);
  Var Softmax(Var x);
  Var Concat(Var a, Var b);
  Var Slice(Var x, std::size_t begin, std::size_t length);
  Var Add(Var a, Var b);
  Var Mul(Var a, Var b);
  Var Scale(Var x, double factor);
  // Vectors of equal length stacked into a [count, n] matrix.
  Var Stack(std::span<const Var> rows);
  // Scalar -log(dist[target]). When `dist` is a Softmax node the value and
  // gradient are taken from its logits so tiny probabilities stay exact.
  Var CrossEntropy(Var dist, std::size_t target);
  // Scalar sum of scalars.
  Var Sum(std::span<const Var> scalars);

  const Tensor& value(Var v) const {
    (void)nodes_.at(v.id);
    return ValueOf(v.id);
  }
  double scalar(Var v) const;
  std::size_t size() const { return nodes_.size(); }

  // Seeds d(loss)/d(loss) = 1, propagates, then adds leaf gradients into
  // their Parameters' grad slots.
  void Backward(Var loss);

 private:
  enum class Op {
    kConstant, kParam, kEmbed, kLinear, kLinearT, kSigmoid, kTanh, kSoftmax,
    kConcat, kSlice, kAdd, kMul, kScale, kStack, kCrossEntropy, kSum,
  };

  struct Node {
    Op op;
    Tensor value;
    Tensor grad;  // empty until something flows in
    std::vector<int> inputs;
    Parameter* param = nullptr;
    std::size_t index = 0;  // embed row, slice begin, CE target
    double factor = 0.0;
  };

  Var Push(Node node);
  const Tensor& ValueOf(int id) const;
  Tensor& GradOf(int id);
  void BackwardNode(Node& node);

  std::vector<Node> nodes_;
  std::unordered_map<Parameter*, int> param_nodes_;
};

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  std::size_t worst_index = 0;
  std::size_t checked = 0;
};

// Builds the scalar loss into the supplied graph.
using LossBuilder = std::function<Var(Graph&)>;

// Compares analytic gradients with central differences
// (L(θ+ε) - L(θ-ε)) / 2ε for every scalar of every parameter. The relative
// error is |a - n| / max(|a|, |n|, abs_floor); the floor keeps gradients
// that are zero up to truncation error from dividing by noise. Parameters
// are restored and their grad slots hold the analytic gradient on return.
// Throws NumericError on a non-finite loss.
GradCheckResult GradCheck(const LossBuilder& build,
                          std::span<Parameter* const> params, double step,
                          double abs_floor = 1e-4);

}  // namespace stylecomp

#endif  // STYLECOMP_AUTODIFF_H_

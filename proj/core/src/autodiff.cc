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

#include "stylecomp/autodiff.h"

#include <algorithm>
#include <cmath>

#include "stylecomp/errors.h"

namespace stylecomp {

Var Graph::Push(Node node) {
  nodes_.push_back(std::move(node));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

const Tensor& Graph::ValueOf(int id) const {
  const Node& n = nodes_[id];
  return n.op == Op::kParam ? n.param->value : n.value;
}

Tensor& Graph::GradOf(int id) {
  Node& n = nodes_[id];
  if (n.op == Op::kParam) {
    // Parameter leaves accumulate straight into the parameter.
    if (n.param->grad.shape() != n.param->value.shape()) n.param->ZeroGrad();
    return n.param->grad;
  }
  if (n.grad.size() != n.value.size() || n.grad.shape() != n.value.shape()) {
    n.grad = Tensor(n.value.shape());
  }
  return n.grad;
}

double Graph::scalar(Var v) const {
  const Tensor& t = value(v);
  if (t.size() != 1) {
    throw DimensionError("scalar: node has shape " + ShapeString(t.shape()));
  }
  return t[0];
}

Var Graph::Constant(Tensor value) {
  return Push(Node{Op::kConstant, std::move(value), {}, {}});
}

Var Graph::Param(Parameter& p) {
  if (auto it = param_nodes_.find(&p); it != param_nodes_.end()) {
    return Var{it->second};
  }
  Node n{Op::kParam, Tensor(), {}, {}};
  n.param = &p;
  const Var v = Push(std::move(n));
  param_nodes_[&p] = v.id;
  return v;
}

Var Graph::Embed(Parameter& table, std::size_t id) {
  Node n{Op::kEmbed, kernels::Row(table.value, id), {}, {}};
  n.param = &table;
  n.index = id;
  return Push(std::move(n));
}

Var Graph::Linear(Var x, Var w, Var b) {
  const Tensor* bias = b.valid() ? &value(b) : nullptr;
  Tensor out = kernels::MatVec(value(w), value(x), bias);
  std::vector<int> inputs{x.id, w.id};
  if (b.valid()) inputs.push_back(b.id);
  return Push(Node{Op::kLinear, std::move(out), {}, std::move(inputs)});
}

Var Graph::LinearT(Var x, Var w) {
  Tensor out = kernels::MatTVec(value(w), value(x));
  return Push(Node{Op::kLinearT, std::move(out), {}, {x.id, w.id}});
}

Var Graph::Sigmoid(Var x) {
  return Push(Node{Op::kSigmoid, kernels::Sigmoid(value(x)), {}, {x.id}});
}

Var Graph::Tanh(Var x) {
  return Push(Node{Op::kTanh, kernels::Tanh(value(x)), {}, {x.id}});
}

Var Graph::Softmax(Var x) {
  return Push(Node{Op::kSoftmax, kernels::Softmax(value(x)), {}, {x.id}});
}

Var Graph::Concat(Var a, Var b) {
  return Push(
      Node{Op::kConcat, kernels::Concat(value(a), value(b)), {}, {a.id, b.id}});
}

Var Graph::Slice(Var x, std::size_t begin, std::size_t length) {
  Node n{Op::kSlice, kernels::Slice(value(x), begin, length), {}, {x.id}};
  n.index = begin;
  return Push(std::move(n));
}

Var Graph::Add(Var a, Var b) {
  return Push(Node{Op::kAdd, kernels::Add(value(a), value(b)), {}, {a.id, b.id}});
}

Var Graph::Mul(Var a, Var b) {
  return Push(Node{Op::kMul, kernels::Mul(value(a), value(b)), {}, {a.id, b.id}});
}

Var Graph::Scale(Var x, double factor) {
  Tensor out = value(x);
  for (double& v : out.values()) v *= factor;
  Node n{Op::kScale, std::move(out), {}, {x.id}};
  n.factor = factor;
  return Push(std::move(n));
}

Var Graph::Stack(std::span<const Var> rows) {
  std::vector<Tensor> values;
  std::vector<int> inputs;
  values.reserve(rows.size());
  for (Var r : rows) {
    values.push_back(value(r));
    inputs.push_back(r.id);
  }
  return Push(Node{Op::kStack, kernels::Stack(values), {}, std::move(inputs)});
}

Var Graph::CrossEntropy(Var dist, std::size_t target) {
  const Node& d = nodes_.at(dist.id);
  if (d.value.rank() != 1 || target >= d.value.size()) {
    throw IndexError("cross_entropy: target " + std::to_string(target) +
                     " outside distribution " + ShapeString(d.value.shape()));
  }
  double loss;
  if (d.op == Op::kSoftmax) {
    loss = -kernels::LogSoftmax(ValueOf(d.inputs[0]))[target];
  } else {
    loss = -std::log(d.value[target]);
  }
  Node n{Op::kCrossEntropy, Tensor({1}, loss), {}, {dist.id}};
  n.index = target;
  return Push(std::move(n));
}

Var Graph::Sum(std::span<const Var> scalars) {
  double total = 0.0;
  std::vector<int> inputs;
  for (Var s : scalars) {
    total += scalar(s);
    inputs.push_back(s.id);
  }
  return Push(Node{Op::kSum, Tensor({1}, total), {}, std::move(inputs)});
}

void Graph::Backward(Var loss) {
  if (value(loss).size() != 1) {
    throw DimensionError("backward: loss must be scalar, got " +
                         ShapeString(value(loss).shape()));
  }
  for (Node& n : nodes_) n.grad = Tensor();
  GradOf(loss.id)[0] = 1.0;
  for (int id = loss.id; id >= 0; --id) {
    if (nodes_[id].grad.size() == 0) continue;
    BackwardNode(nodes_[id]);
  }
}

void Graph::BackwardNode(Node& node) {
  // Note: GradOf may reallocate another node's grad but never resizes
  // nodes_, so `node` stays valid.
  const Tensor& g = node.grad;
  switch (node.op) {
    case Op::kConstant:
    case Op::kParam:
      break;
    case Op::kEmbed: {
      Parameter& table = *node.param;
      if (table.grad.shape() != table.value.shape()) table.ZeroGrad();
      auto row = table.grad.row(node.index);
      for (std::size_t i = 0; i < g.size(); ++i) row[i] += g[i];
      break;
    }
    case Op::kLinear: {
      const Tensor& x = ValueOf(node.inputs[0]);
      const Tensor& w = ValueOf(node.inputs[1]);
      Tensor& gx = GradOf(node.inputs[0]);
      Tensor& gw = GradOf(node.inputs[1]);
      const std::size_t n = x.size();
      double* __restrict gxv = gx.values().data();
      const double* __restrict xv = x.values().data();
      for (std::size_t r = 0; r < w.rows(); ++r) {
        const double gr = g[r];
        if (gr == 0.0) continue;
        const double* __restrict wrow = w.values().data() + r * n;
        double* __restrict gwrow = gw.values().data() + r * n;
        for (std::size_t c = 0; c < n; ++c) gxv[c] += gr * wrow[c];
        for (std::size_t c = 0; c < n; ++c) gwrow[c] += gr * xv[c];
      }
      if (node.inputs.size() > 2) {
        Tensor& gb = GradOf(node.inputs[2]);
        for (std::size_t r = 0; r < g.size(); ++r) gb[r] += g[r];
      }
      break;
    }
    case Op::kLinearT: {
      // out[c] = sum_r w[r, c] x[r]
      const Tensor& x = ValueOf(node.inputs[0]);
      const Tensor& w = ValueOf(node.inputs[1]);
      Tensor& gx = GradOf(node.inputs[0]);
      Tensor& gw = GradOf(node.inputs[1]);
      for (std::size_t r = 0; r < w.rows(); ++r) {
        const auto wrow = w.row(r);
        auto gwrow = gw.row(r);
        gx[r] += kernels::Dot(wrow, g.values());
        for (std::size_t c = 0; c < w.cols(); ++c) gwrow[c] += x[r] * g[c];
      }
      break;
    }
    case Op::kSigmoid: {
      Tensor& gx = GradOf(node.inputs[0]);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double s = node.value[i];
        gx[i] += g[i] * s * (1.0 - s);
      }
      break;
    }
    case Op::kTanh: {
      Tensor& gx = GradOf(node.inputs[0]);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double t = node.value[i];
        gx[i] += g[i] * (1.0 - t * t);
      }
      break;
    }
    case Op::kSoftmax: {
      const Tensor& p = node.value;
      const double gp = kernels::Dot(g.values(), p.values());
      Tensor& gx = GradOf(node.inputs[0]);
      for (std::size_t i = 0; i < g.size(); ++i) gx[i] += p[i] * (g[i] - gp);
      break;
    }
    case Op::kConcat: {
      Tensor& ga = GradOf(node.inputs[0]);
      const std::size_t na = ga.size();
      for (std::size_t i = 0; i < na; ++i) ga[i] += g[i];
      Tensor& gb = GradOf(node.inputs[1]);
      for (std::size_t i = 0; i < gb.size(); ++i) gb[i] += g[na + i];
      break;
    }
    case Op::kSlice: {
      Tensor& gx = GradOf(node.inputs[0]);
      for (std::size_t i = 0; i < g.size(); ++i) gx[node.index + i] += g[i];
      break;
    }
    case Op::kAdd: {
      Tensor& ga = GradOf(node.inputs[0]);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
      Tensor& gb = GradOf(node.inputs[1]);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i];
      break;
    }
    case Op::kMul: {
      const Tensor& a = ValueOf(node.inputs[0]);
      const Tensor& b = ValueOf(node.inputs[1]);
      Tensor& ga = GradOf(node.inputs[0]);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * b[i];
      Tensor& gb = GradOf(node.inputs[1]);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * a[i];
      break;
    }
    case Op::kScale: {
      Tensor& gx = GradOf(node.inputs[0]);
      for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i] * node.factor;
      break;
    }
    case Op::kStack: {
      const std::size_t n = node.value.cols();
      for (std::size_t r = 0; r < node.inputs.size(); ++r) {
        Tensor& gr = GradOf(node.inputs[r]);
        for (std::size_t c = 0; c < n; ++c) gr[c] += g[r * n + c];
      }
      break;
    }
    case Op::kCrossEntropy: {
      const int dist_id = node.inputs[0];
      const Node& dist = nodes_[dist_id];
      if (dist.op == Op::kSoftmax) {
        // d(-log p_t)/d logits = p - onehot(t)
        Tensor& gl = GradOf(dist.inputs[0]);
        const Tensor& p = ValueOf(dist_id);
        for (std::size_t i = 0; i < p.size(); ++i) {
          gl[i] += g[0] * (p[i] - (i == node.index ? 1.0 : 0.0));
        }
      } else {
        Tensor& gd = GradOf(dist_id);
        gd[node.index] += -g[0] / dist.value[node.index];
      }
      break;
    }
    case Op::kSum: {
      for (int in : node.inputs) GradOf(in)[0] += g[0];
      break;
    }
  }
}

GradCheckResult GradCheck(const LossBuilder& build,
                          std::span<Parameter* const> params, double step,
                          double abs_floor) {
  auto evaluate = [&build] {
    Graph g;
    const double loss = g.scalar(build(g));
    if (!std::isfinite(loss)) throw NumericError("grad_check: non-finite loss");
    return loss;
  };

  for (Parameter* p : params) p->ZeroGrad();
  {
    Graph g;
    const Var loss = build(g);
    if (!std::isfinite(g.scalar(loss))) {
      throw NumericError("grad_check: non-finite loss");
    }
    g.Backward(loss);
  }

  GradCheckResult result;
  for (Parameter* p : params) {
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      const double saved = p->value[i];
      p->value[i] = saved + step;
      const double plus = evaluate();
      p->value[i] = saved - step;
      const double minus = evaluate();
      p->value[i] = saved;

      const double numeric = (plus - minus) / (2.0 * step);
      const double analytic = p->grad[i];
      const double denom =
          std::max({std::abs(analytic), std::abs(numeric), abs_floor});
      const double rel = std::abs(analytic - numeric) / denom;
      ++result.checked;
      if (rel > result.max_relative_error) {
        result.max_relative_error = rel;
        result.worst_parameter = p->name;
        result.worst_index = i;
      }
    }
  }
  return result;
}

}  // namespace stylecomp

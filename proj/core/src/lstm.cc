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

#include "stylecomp/lstm.h"

#include <cmath>

#include "stylecomp/errors.h"

namespace stylecomp {
namespace {

void CheckLstmShapes(const Shape& x, const Shape& h, const Shape& c,
                     const Shape& w, const Shape& b) {
  if (x.size() != 1 || h.size() != 1 || c != h) {
    throw DimensionError("lstm_cell: input " + ShapeString(x) + ", state " +
                         ShapeString(h) + "/" + ShapeString(c));
  }
  const std::size_t n = h[0];
  const Shape expected_w{4 * n, x[0] + n};
  if (w != expected_w) {
    throw DimensionError("lstm_cell: weight " + ShapeString(w) + " vs " +
                         ShapeString(expected_w));
  }
  if (b != Shape{4 * n}) {
    throw DimensionError("lstm_cell: bias " + ShapeString(b) + " vs " +
                         ShapeString(Shape{4 * n}));
  }
}

double Sigm(double v) { return 1.0 / (1.0 + std::exp(-v)); }

}  // namespace

LstmState LstmCell(const Tensor& x, const LstmState& prev, const Tensor& weight,
                   const Tensor& bias) {
  CheckLstmShapes(x.shape(), prev.h.shape(), prev.c.shape(), weight.shape(),
                  bias.shape());
  const std::size_t n = prev.h.size();
  const Tensor z = kernels::MatVec(weight, kernels::Concat(x, prev.h), &bias);
  LstmState next{Tensor({n}), Tensor({n})};
  for (std::size_t k = 0; k < n; ++k) {
    const double i = Sigm(z[k]);
    const double f = Sigm(z[n + k]);
    const double o = Sigm(z[2 * n + k]);
    const double g = std::tanh(z[3 * n + k]);
    next.c[k] = f * prev.c[k] + i * g;
    next.h[k] = o * std::tanh(next.c[k]);
  }
  return next;
}

LstmVars LstmCell(Graph& g, Var x, LstmVars prev, Var weight, Var bias) {
  CheckLstmShapes(g.value(x).shape(), g.value(prev.h).shape(),
                  g.value(prev.c).shape(), g.value(weight).shape(),
                  g.value(bias).shape());
  const std::size_t n = g.value(prev.h).size();
  const Var z = g.Linear(g.Concat(x, prev.h), weight, bias);
  const Var i = g.Sigmoid(g.Slice(z, 0, n));
  const Var f = g.Sigmoid(g.Slice(z, n, n));
  const Var o = g.Sigmoid(g.Slice(z, 2 * n, n));
  const Var cand = g.Tanh(g.Slice(z, 3 * n, n));
  const Var c = g.Add(g.Mul(f, prev.c), g.Mul(i, cand));
  const Var h = g.Mul(o, g.Tanh(c));
  return {h, c};
}

}  // namespace stylecomp

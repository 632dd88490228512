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

#ifndef STYLECOMP_LSTM_H_
#define STYLECOMP_LSTM_H_

#include "stylecomp/autodiff.h"
#include "stylecomp/tensor.h"

namespace stylecomp {

// Gate rows of the fused weight [4n, input + n] are ordered input, forget,
// output, candidate:
//   z = W [x; h_prev] + b
//   i, f, o = sigmoid(z_i), sigmoid(z_f), sigmoid(z_o);  g = tanh(z_g)
//   c = f * c_prev + i * g;  h = o * tanh(c)
struct LstmState {
  Tensor h;
  Tensor c;

  static LstmState Zero(std::size_t hidden) {
    return {Tensor({hidden}), Tensor({hidden})};
  }
  bool operator==(const LstmState&) const = default;
};

// Throws DimensionError if the weight does not fit the input/state sizes.
LstmState LstmCell(const Tensor& x, const LstmState& prev, const Tensor& weight,
                   const Tensor& bias);

struct LstmVars {
  Var h;
  Var c;
};

// Differentiable version of LstmCell built from graph primitives.
LstmVars LstmCell(Graph& g, Var x, LstmVars prev, Var weight, Var bias);

}  // namespace stylecomp

#endif  // STYLECOMP_LSTM_H_

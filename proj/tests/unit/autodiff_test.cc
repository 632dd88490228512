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

#include <gtest/gtest.h>

#include <cmath>

#include "stylecomp/errors.h"
#include "stylecomp/lstm.h"
#include "stylecomp/rng.h"

namespace stylecomp {
namespace {

Parameter RandomParam(const std::string& name, Shape shape, Rng& rng) {
  Tensor t(std::move(shape));
  for (double& x : t.values()) x = rng.Uniform(-1, 1);
  return Parameter(name, t);
}

TEST(GradCheck, Quadratic) {
  Rng rng(1);
  Parameter p = RandomParam("p", {5}, rng);
  Parameter* params[] = {&p};
  // Σθ² from the primitives: the squares summed by a ones row.
  const auto check = GradCheck(
      [&](Graph& g) {
        const Var x = g.Param(p);
        const Var sq = g.Mul(x, x);
        return g.Linear(sq, g.Constant(Tensor({1, 5}, 1.0)));
      },
      params, 1e-5);
  EXPECT_LT(check.max_relative_error, 1e-8);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(p.grad[i], 2 * p.value[i], 1e-12);
}

TEST(GradCheck, ConstantLossHasZeroGradient) {
  Rng rng(2);
  Parameter p = RandomParam("p", {3}, rng);
  Parameter* params[] = {&p};
  const auto r = GradCheck([&](Graph& g) {
    g.Param(p);
    return g.Linear(g.Constant(Tensor::Vector({1, 2})), g.Constant(Tensor({1, 2}, 1.0)));
  }, params, 1e-5);
  EXPECT_EQ(r.max_relative_error, 0.0);
  for (double gv : p.grad.values()) EXPECT_EQ(gv, 0.0);
}

TEST(GradCheck, NonFiniteLossThrows) {
  Parameter p("p", Tensor::Vector({0.0}));
  Parameter* params[] = {&p};
  EXPECT_THROW(GradCheck([&](Graph& g) {
    return g.Scale(g.Param(p), std::numeric_limits<double>::infinity());
  }, params, 1e-5), NumericError);
}

TEST(Autodiff, CrossEntropyOfUniformIsLogV) {
  Graph g;
  const Var d = g.Softmax(g.Constant(Tensor({7}, 0.3)));
  EXPECT_NEAR(g.scalar(g.CrossEntropy(d, 4)), std::log(7.0), 1e-12);
}

TEST(Autodiff, ShapeMismatchNamesBothShapes) {
  Graph g;
  const Var a = g.Constant(Tensor({2}));
  const Var b = g.Constant(Tensor({4}));
  try {
    g.Add(a, b);
    FAIL();
  } catch (const DimensionError& e) {
    EXPECT_NE(std::string(e.what()).find("[2]"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("[4]"), std::string::npos);
  }
}

// Every primitive's backward against central differences on inputs in
// [-1, 1]; a fixed random linear read-out turns outputs into a scalar.
class PrimitiveGrad : public ::testing::TestWithParam<int> {};

TEST_P(PrimitiveGrad, MatchesFiniteDifferences) {
  Rng rng(100 + GetParam());
  Parameter x = RandomParam("x", {4}, rng);
  Parameter y = RandomParam("y", {4}, rng);
  Parameter w = RandomParam("w", {4, 4}, rng);
  Parameter b = RandomParam("b", {4}, rng);
  Parameter table = RandomParam("table", {3, 4}, rng);
  Tensor readout_w({1, 4});
  for (double& v : readout_w.values()) v = rng.Uniform(-1, 1);
  Tensor readout_w2({1, 2});
  for (double& v : readout_w2.values()) v = rng.Uniform(-1, 1);
  Tensor readout_m({1, 8});
  for (double& v : readout_m.values()) v = rng.Uniform(-1, 1);
  Parameter* params[] = {&x, &y, &w, &b, &table};

  const int op = GetParam();
  const auto r = GradCheck(
      [&](Graph& g) -> Var {
        const Var vx = g.Param(x), vy = g.Param(y), vw = g.Param(w), vb = g.Param(b);
        auto read = [&](Var v) { return g.Linear(v, g.Constant(readout_w)); };
        switch (op) {
          case 0: return read(g.Linear(vx, vw, vb));
          case 1: return read(g.LinearT(vx, vw));
          case 2: return read(g.Sigmoid(vx));
          case 3: return read(g.Tanh(vx));
          case 4: return read(g.Softmax(vx));
          case 5: return g.Linear(g.Concat(vx, vy), g.Constant(readout_m));
          case 6: return g.Linear(g.Slice(vx, 1, 2), g.Constant(readout_w2));
          case 7: return read(g.Add(vx, vy));
          case 8: return read(g.Mul(vx, vy));
          case 9: return read(g.Scale(vx, -1.7));
          case 10: {
            const std::vector<Var> rows{vx, vy};
            return read(g.LinearT(g.Constant(Tensor::Vector({0.3, -0.8})), g.Stack(rows)));
          }
          case 11: return g.CrossEntropy(g.Softmax(g.Linear(vx, vw, vb)), 2);
          case 12: return g.CrossEntropy(g.Sigmoid(vx), 1);
          case 13: return read(g.Add(g.Embed(table, 2), g.Embed(table, 2)));
          case 14: {
            const std::vector<Var> parts{read(vx), read(g.Tanh(vy))};
            return g.Sum(parts);
          }
          default: return read(vx);
        }
      },
      params, 1e-5);
  EXPECT_LT(r.max_relative_error, 1e-4) << "op " << op << " worst " << r.worst_parameter;
}

INSTANTIATE_TEST_SUITE_P(AllOps, PrimitiveGrad, ::testing::Range(0, 15));

TEST(Lstm, ZeroWeightsZeroState) {
  const LstmState s = LstmCell(Tensor::Vector({0.3, -2}), LstmState::Zero(3), Tensor({12, 5}), Tensor({12}));
  EXPECT_EQ(s, LstmState::Zero(3));
}

TEST(Lstm, ZeroWeightsHalveCell) {
  LstmState prev = LstmState::Zero(2);
  prev.c = Tensor::Vector({1.0, -3.0});
  const LstmState s = LstmCell(Tensor::Vector({5}), prev, Tensor({8, 3}), Tensor({8}));
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_DOUBLE_EQ(s.c[i], 0.5 * prev.c[i]);
    EXPECT_DOUBLE_EQ(s.h[i], 0.5 * std::tanh(0.5 * prev.c[i]));
  }
}

TEST(Lstm, RejectsBadWeightShape) {
  EXPECT_THROW(LstmCell(Tensor::Vector({1}), LstmState::Zero(2), Tensor({8, 4}), Tensor({8})),
               DimensionError);
}

TEST(Lstm, GraphCellMatchesKernelAndFiniteDifferences) {
  Rng rng(4);
  const std::size_t in = 3, n = 4;
  Parameter w = RandomParam("w", {4 * n, in + n}, rng);
  Parameter b = RandomParam("b", {4 * n}, rng);
  Parameter x = RandomParam("x", {in}, rng);
  Parameter h = RandomParam("h", {n}, rng);
  Parameter c = RandomParam("c", {n}, rng);
  for (double& v : w.value.values()) v *= 0.3;

  Graph g;
  const LstmVars out = LstmCell(g, g.Param(x), {g.Param(h), g.Param(c)}, g.Param(w), g.Param(b));
  const LstmState ref = LstmCell(x.value, {h.value, c.value}, w.value, b.value);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(g.value(out.h)[i], ref.h[i], 1e-15);
    EXPECT_NEAR(g.value(out.c)[i], ref.c[i], 1e-15);
  }

  Tensor rw({1, n});
  for (double& v : rw.values()) v = rng.Uniform(-1, 1);
  Parameter* params[] = {&w, &b, &x, &h, &c};
  const auto r = GradCheck([&](Graph& gg) {
    const LstmVars o = LstmCell(gg, gg.Param(x), {gg.Param(h), gg.Param(c)}, gg.Param(w), gg.Param(b));
    return gg.Add(gg.Linear(o.h, gg.Constant(rw)), gg.Linear(o.c, gg.Constant(rw)));
  }, params, 1e-4);
  EXPECT_LT(r.max_relative_error, 1e-4) << r.worst_parameter;
}

TEST(Autodiff, ForwardIsDeterministic) {
  Rng rng(6);
  Parameter w = RandomParam("w", {5, 5}, rng);
  auto run = [&] {
    Graph g;
    return g.value(g.Softmax(g.Linear(g.Constant(Tensor({5}, 0.1)), g.Param(w))));
  };
  EXPECT_EQ(run(), run());
}

}  // namespace
}  // namespace stylecomp

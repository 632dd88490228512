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

#include "stylecomp/tensor.h"

#include <gtest/gtest.h>

#include <cmath>

#include "stylecomp/errors.h"
#include "stylecomp/io.h"
#include "stylecomp/rng.h"
#include "test_util.h"

namespace stylecomp {
namespace {

using namespace kernels;

TEST(Tensor, ShapeChecks) {
  EXPECT_THROW(Tensor({2, 2}, std::vector<double>{1, 2, 3}), DimensionError);
  try {
    Add(Tensor({2}), Tensor({3}));
    FAIL();
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("[2]"), std::string::npos) << msg;
    EXPECT_NE(msg.find("[3]"), std::string::npos) << msg;
  }
  EXPECT_THROW(MatVec(Tensor({2, 3}), Tensor({2})), DimensionError);
}

TEST(Kernels, MatVecAndTranspose) {
  const Tensor w({2, 3}, {1, 2, 3, 4, 5, 6});
  const Tensor b = Tensor::Vector({10, 20});
  EXPECT_EQ(MatVec(w, Tensor::Vector({1, 0, -1}), &b).values()[0], 8.0);
  EXPECT_EQ(MatVec(w, Tensor::Vector({1, 0, -1}), &b).values()[1], 18.0);
  const Tensor t = MatTVec(w, Tensor::Vector({1, 1}));
  EXPECT_EQ(t, Tensor::Vector({5, 7, 9}));
}

TEST(Kernels, MatVecMatchesNaiveSum) {
  Rng rng(2);
  for (std::size_t m : {1u, 3u, 4u, 7u, 9u}) {
    Tensor w({m, 5});
    for (double& x : w.values()) x = rng.Uniform(-1, 1);
    Tensor x({5});
    for (double& v : x.values()) v = rng.Uniform(-1, 1);
    const Tensor y = MatVec(w, x);
    for (std::size_t r = 0; r < m; ++r) {
      double s = 0;
      for (std::size_t c = 0; c < 5; ++c) s += w.at(r, c) * x[c];
      EXPECT_EQ(y[r], s);
    }
  }
}

TEST(Kernels, Softmax) {
  EXPECT_EQ(Softmax(Tensor::Vector({0, 0})), Tensor::Vector({0.5, 0.5}));
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Tensor v({6});
    for (double& x : v.values()) x = rng.Uniform(-20, 20);
    const double c = rng.Uniform(-100, 100);
    Tensor shifted = v;
    for (double& x : shifted.values()) x += c;
    const Tensor p = Softmax(v), q = Softmax(shifted);
    double sum = 0;
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_GE(p[i], 0.0);
      EXPECT_NEAR(p[i], q[i], 1e-12);
      EXPECT_NEAR(std::log(p[i]), LogSoftmax(v)[i], 1e-9);
      sum += p[i];
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
  const Tensor big = Softmax(Tensor::Vector({1000, 0}));
  EXPECT_TRUE(big.AllFinite());
}

TEST(Kernels, ConcatSliceStack) {
  const Tensor a = Tensor::Vector({1, 2}), b = Tensor::Vector({3});
  EXPECT_EQ(Concat(a, b), Tensor::Vector({1, 2, 3}));
  EXPECT_EQ(Slice(Tensor::Vector({1, 2, 3, 4}), 1, 2), Tensor::Vector({2, 3}));
  EXPECT_THROW(Slice(a, 1, 2), DimensionError);
  const std::vector<Tensor> rows{a, Tensor::Vector({5, 6})};
  EXPECT_EQ(Stack(rows), Tensor({2, 2}, {1, 2, 5, 6}));
  EXPECT_EQ(Row(Stack(rows), 1), Tensor::Vector({5, 6}));
}

TEST(Checkpoint, ByteExactRoundTrip) {
  Rng rng(11);
  NamedTensors tensors;
  Tensor m({3, 4});
  for (double& x : m.values()) x = rng.Uniform(-1, 1);
  tensors.emplace_back("matrix", m);
  tensors.emplace_back("vector", Tensor::Vector({1e-300, -0.0, 3.5}));
  const std::string bytes = EncodeCheckpoint(tensors);
  EXPECT_EQ(bytes.substr(0, 8), "STYLCKPT");
  const NamedTensors back = DecodeCheckpoint(bytes);
  EXPECT_EQ(back, tensors);
  EXPECT_EQ(EncodeCheckpoint(back), bytes);

  testing::TempDir dir;
  SaveCheckpoint(dir / "c.bin", tensors);
  EXPECT_EQ(ReadFile(dir / "c.bin"), bytes);
  EXPECT_EQ(LoadCheckpoint(dir / "c.bin"), tensors);
}

TEST(Checkpoint, RejectsCorruptInput) {
  const std::string bytes = EncodeCheckpoint({{"v", Tensor::Vector({1, 2})}});
  EXPECT_THROW(DecodeCheckpoint("NOTACKPT"), ParseError);
  EXPECT_THROW(DecodeCheckpoint(bytes.substr(0, bytes.size() - 3)), ParseError);
  EXPECT_THROW(DecodeCheckpoint(bytes + "x"), ParseError);
}

}  // namespace
}  // namespace stylecomp

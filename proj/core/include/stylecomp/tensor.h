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

#ifndef STYLECOMP_TENSOR_H_
#define STYLECOMP_TENSOR_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stylecomp {

using Shape = std::vector<std::size_t>;

std::string ShapeString(const Shape& shape);

// Dense row-major float64 array of rank 1 or 2.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double fill = 0.0);
  Tensor(Shape shape, std::vector<double> values);

  static Tensor Vector(std::vector<double> values);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  std::size_t rank() const { return shape_.size(); }
  std::size_t rows() const { return shape_.at(0); }
  std::size_t cols() const { return shape_.size() > 1 ? shape_[1] : 1; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const {
    return data_[r * cols() + c];
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols(), cols());
  }
  std::span<double> row(std::size_t r) {
    return std::span<double>(data_).subspan(r * cols(), cols());
  }

  void Fill(double v);
  bool AllFinite() const;

  bool operator==(const Tensor&) const = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

// Throws DimensionError naming both shapes unless a == b.
void CheckSameShape(const Shape& a, const Shape& b, const char* op);

// Forward kernels shared by the differentiable graph and the inference path.
namespace kernels {

// W [m, n] times x [n] -> [m], plus optional bias [m].
Tensor MatVec(const Tensor& w, const Tensor& x, const Tensor* bias = nullptr);
// W [m, n] transposed times x [m] -> [n].
Tensor MatTVec(const Tensor& w, const Tensor& x);
Tensor Sigmoid(const Tensor& x);
Tensor Tanh(const Tensor& x);
// Max-subtracted for stability.
Tensor Softmax(const Tensor& x);
Tensor LogSoftmax(const Tensor& x);
Tensor Concat(const Tensor& a, const Tensor& b);
Tensor Slice(const Tensor& x, std::size_t begin, std::size_t length);
Tensor Add(const Tensor& a, const Tensor& b);
Tensor Mul(const Tensor& a, const Tensor& b);
double Dot(std::span<const double> a, std::span<const double> b);
// Row `id` of a [rows, cols] table as a vector.
Tensor Row(const Tensor& table, std::size_t id);
// Rows stacked into a [count, n] matrix.
Tensor Stack(std::span<const Tensor> rows);

}  // namespace kernels

// Binary checkpoint of named tensors: the magic bytes "STYLCKPT", a u32
// format version, a u32 tensor count, then per tensor a u32-length name,
// u32 rank, u64 dims and little-endian float64 values.
using NamedTensors = std::vector<std::pair<std::string, Tensor>>;

inline constexpr char kCheckpointMagic[8] = {'S', 'T', 'Y', 'L',
                                             'C', 'K', 'P', 'T'};
inline constexpr unsigned kCheckpointVersion = 1;

std::string EncodeCheckpoint(const NamedTensors& tensors);
NamedTensors DecodeCheckpoint(std::string_view bytes);
void SaveCheckpoint(const std::filesystem::path& path,
                    const NamedTensors& tensors);
NamedTensors LoadCheckpoint(const std::filesystem::path& path);

}  // namespace stylecomp

#endif  // STYLECOMP_TENSOR_H_

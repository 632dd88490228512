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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numeric>

#include "stylecomp/errors.h"
#include "stylecomp/io.h"

namespace stylecomp {

std::string ShapeString(const Shape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

namespace {

std::size_t Product(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

[[noreturn]] void ThrowShapes(const char* op, const Shape& a, const Shape& b) {
  throw DimensionError(std::string(op) + ": shape mismatch " + ShapeString(a) +
                       " vs " + ShapeString(b));
}

void CheckVector(const Tensor& t, const char* op) {
  if (t.rank() != 1) {
    throw DimensionError(std::string(op) + ": expected a vector, got " +
                         ShapeString(t.shape()));
  }
}

}  // namespace

Tensor::Tensor(Shape shape, double fill)
    : shape_(std::move(shape)), data_(Product(shape_), fill) {}

Tensor::Tensor(Shape shape, std::vector<double> values)
    : shape_(std::move(shape)), data_(std::move(values)) {
  if (data_.size() != Product(shape_)) {
    throw DimensionError("tensor: " + std::to_string(data_.size()) +
                         " values for shape " + ShapeString(shape_));
  }
}

Tensor Tensor::Vector(std::vector<double> values) {
  const std::size_t n = values.size();
  return Tensor({n}, std::move(values));
}

void Tensor::Fill(double v) { std::fill(data_.begin(), data_.end(), v); }

bool Tensor::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

void CheckSameShape(const Shape& a, const Shape& b, const char* op) {
  if (a != b) ThrowShapes(op, a, b);
}

namespace kernels {

Tensor MatVec(const Tensor& w, const Tensor& x, const Tensor* bias) {
  CheckVector(x, "matvec");
  if (w.rank() != 2 || w.cols() != x.size()) {
    ThrowShapes("matvec", w.shape(), x.shape());
  }
  const std::size_t m = w.rows();
  if (bias != nullptr && bias->shape() != Shape{m}) {
    ThrowShapes("matvec bias", bias->shape(), Shape{m});
  }
  Tensor out({m});
  const std::size_t n = x.size();
  const double* xv = x.values().data();
  const double* wv = w.values().data();
  // Four rows at a time for independent add chains; each row still sums
  // left to right, so results match Dot exactly.
  std::size_t r = 0;
  for (; r + 4 <= m; r += 4) {
    const double* w0 = wv + r * n;
    const double* w1 = w0 + n;
    const double* w2 = w1 + n;
    const double* w3 = w2 + n;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      const double xc = xv[c];
      s0 += w0[c] * xc;
      s1 += w1[c] * xc;
      s2 += w2[c] * xc;
      s3 += w3[c] * xc;
    }
    out[r] = s0;
    out[r + 1] = s1;
    out[r + 2] = s2;
    out[r + 3] = s3;
  }
  for (; r < m; ++r) out[r] = Dot(w.row(r), x.values());
  if (bias != nullptr) {
    for (std::size_t i = 0; i < m; ++i) out[i] += (*bias)[i];
  }
  return out;
}

Tensor MatTVec(const Tensor& w, const Tensor& x) {
  CheckVector(x, "mattvec");
  if (w.rank() != 2 || w.rows() != x.size()) {
    ThrowShapes("mattvec", w.shape(), x.shape());
  }
  const std::size_t n = w.cols();
  Tensor out({n});
  for (std::size_t r = 0; r < w.rows(); ++r) {
    const double scale = x[r];
    const auto row = w.row(r);
    for (std::size_t c = 0; c < n; ++c) out[c] += scale * row[c];
  }
  return out;
}

Tensor Sigmoid(const Tensor& x) {
  Tensor out(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = 1.0 / (1.0 + std::exp(-x[i]));
  }
  return out;
}

Tensor Tanh(const Tensor& x) {
  Tensor out(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::tanh(x[i]);
  return out;
}

Tensor Softmax(const Tensor& x) {
  CheckVector(x, "softmax");
  if (x.size() == 0) throw DimensionError("softmax: empty input");
  const double max = *std::max_element(x.values().begin(), x.values().end());
  Tensor out(x.shape());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp(x[i] - max);
    total += out[i];
  }
  for (std::size_t i = 0; i < x.size(); ++i) out[i] /= total;
  return out;
}

Tensor LogSoftmax(const Tensor& x) {
  CheckVector(x, "log_softmax");
  if (x.size() == 0) throw DimensionError("log_softmax: empty input");
  const double max = *std::max_element(x.values().begin(), x.values().end());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += std::exp(x[i] - max);
  const double log_z = max + std::log(total);
  Tensor out(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - log_z;
  return out;
}

Tensor Concat(const Tensor& a, const Tensor& b) {
  CheckVector(a, "concat");
  CheckVector(b, "concat");
  std::vector<double> v(a.values().begin(), a.values().end());
  v.insert(v.end(), b.values().begin(), b.values().end());
  return Tensor::Vector(std::move(v));
}

Tensor Slice(const Tensor& x, std::size_t begin, std::size_t length) {
  CheckVector(x, "slice");
  if (begin + length > x.size()) {
    throw DimensionError("slice: [" + std::to_string(begin) + ", " +
                         std::to_string(begin + length) + ") out of " +
                         ShapeString(x.shape()));
  }
  auto v = x.values().subspan(begin, length);
  return Tensor::Vector({v.begin(), v.end()});
}

Tensor Add(const Tensor& a, const Tensor& b) {
  CheckSameShape(a.shape(), b.shape(), "add");
  Tensor out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Tensor Mul(const Tensor& a, const Tensor& b) {
  CheckSameShape(a.shape(), b.shape(), "mul");
  Tensor out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Tensor Row(const Tensor& table, std::size_t id) {
  if (table.rank() != 2) {
    throw DimensionError("row: expected a matrix, got " +
                         ShapeString(table.shape()));
  }
  if (id >= table.rows()) {
    throw IndexError("row: id " + std::to_string(id) + " out of range " +
                     ShapeString(table.shape()));
  }
  auto r = table.row(id);
  return Tensor::Vector({r.begin(), r.end()});
}

Tensor Stack(std::span<const Tensor> rows) {
  if (rows.empty()) throw DimensionError("stack: no rows");
  const std::size_t n = rows.front().size();
  std::vector<double> v;
  v.reserve(rows.size() * n);
  for (const Tensor& r : rows) {
    CheckVector(r, "stack");
    CheckSameShape(r.shape(), rows.front().shape(), "stack");
    v.insert(v.end(), r.values().begin(), r.values().end());
  }
  return Tensor({rows.size(), n}, std::move(v));
}

}  // namespace kernels

namespace {

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t Uint(int width) {
    Need(width);
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += width;
    return v;
  }

  std::string Bytes(std::size_t n) {
    Need(n);
    std::string s(bytes_.substr(pos_, n));
    pos_ += n;
    return s;
  }

  bool AtEnd() const { return pos_ == bytes_.size(); }

 private:
  void Need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) {
      throw ParseError("checkpoint: truncated at byte " + std::to_string(pos_));
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string EncodeCheckpoint(const NamedTensors& tensors) {
  std::string out(kCheckpointMagic, sizeof(kCheckpointMagic));
  PutU32(out, kCheckpointVersion);
  PutU32(out, static_cast<std::uint32_t>(tensors.size()));
  for (const auto& [name, t] : tensors) {
    PutU32(out, static_cast<std::uint32_t>(name.size()));
    out += name;
    PutU32(out, static_cast<std::uint32_t>(t.rank()));
    for (std::size_t d : t.shape()) PutU64(out, d);
    for (double v : t.values()) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof(bits));
      PutU64(out, bits);
    }
  }
  return out;
}

NamedTensors DecodeCheckpoint(std::string_view bytes) {
  Reader in(bytes);
  if (in.Bytes(sizeof(kCheckpointMagic)) !=
      std::string_view(kCheckpointMagic, sizeof(kCheckpointMagic))) {
    throw ParseError("checkpoint: bad magic");
  }
  const auto version = in.Uint(4);
  if (version != kCheckpointVersion) {
    throw ParseError("checkpoint: unsupported version " +
                     std::to_string(version));
  }
  const auto count = in.Uint(4);
  NamedTensors out;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::string name = in.Bytes(in.Uint(4));
    const auto rank = in.Uint(4);
    Shape shape;
    for (std::uint64_t d = 0; d < rank; ++d) shape.push_back(in.Uint(8));
    Tensor t(shape);
    for (double& v : t.values()) {
      const std::uint64_t bits = in.Uint(8);
      std::memcpy(&v, &bits, sizeof(v));
    }
    out.emplace_back(std::move(name), std::move(t));
  }
  if (!in.AtEnd()) throw ParseError("checkpoint: trailing bytes");
  return out;
}

void SaveCheckpoint(const std::filesystem::path& path,
                    const NamedTensors& tensors) {
  WriteFile(path, EncodeCheckpoint(tensors));
}

NamedTensors LoadCheckpoint(const std::filesystem::path& path) {
  return DecodeCheckpoint(ReadFile(path));
}

}  // namespace stylecomp

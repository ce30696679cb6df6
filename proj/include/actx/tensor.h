// Copyright 2026 The actx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ACTX_TENSOR_H_
#define ACTX_TENSOR_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "actx/error.h"

namespace actx {

using Shape = std::vector<std::int64_t>;

std::string ShapeToString(const Shape& dims);

// Dense row-major float tensor of rank 1..4. The last index varies fastest.
//
// A default-constructed Tensor is an empty placeholder (rank 0, no data) and
// is only useful as an assignment target.
class Tensor {
 public:
  static constexpr std::size_t kMaxRank = 4;

  Tensor() = default;

  // All-zero tensor. Throws ShapeError on rank 0, rank > 4 or an extent < 1.
  static Tensor Zeros(const Shape& dims);
  static Tensor Full(const Shape& dims, float value);
  // Takes ownership of `data`; its length must equal the extent product.
  static Tensor FromData(const Shape& dims, std::vector<float> data);

  std::size_t rank() const { return dims_.size(); }
  const Shape& dims() const { return dims_; }
  std::int64_t dim(std::size_t axis) const;
  std::size_t numel() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }
  float* raw() { return data_.data(); }
  const float* raw() const { return data_.data(); }

  float& operator[](std::size_t flat) { return data_[flat]; }
  float operator[](std::size_t flat) const { return data_[flat]; }

  // Bounds-checked element access; the number of indices must equal rank().
  template <typename... Index>
  float& at(Index... index) {
    return data_[Offset({static_cast<std::int64_t>(index)...})];
  }
  template <typename... Index>
  float at(Index... index) const {
    return data_[Offset({static_cast<std::int64_t>(index)...})];
  }

  std::size_t Offset(std::initializer_list<std::int64_t> index) const;

  // Elementwise in-place accumulate; shapes must match exactly.
  Tensor& operator+=(const Tensor& other);
  void Fill(float value);

  bool operator==(const Tensor& other) const = default;

 private:
  Tensor(Shape dims, std::vector<float> data)
      : dims_(std::move(dims)), data_(std::move(data)) {}

  Shape dims_;
  std::vector<float> data_;
};

// Stacks rank-3 parts of identical shape D x ph x pw along the channel axis.
// Part i occupies channels [i*D, (i+1)*D).
Tensor ConcatChannels(std::span<const Tensor> parts);

// Channels [begin, begin + count) of a rank-3 tensor.
Tensor SliceChannels(const Tensor& t, std::int64_t begin, std::int64_t count);

// Stacks tensors of identical shape along a new leading axis. The result rank
// must not exceed 4.
Tensor Stack(std::span<const Tensor> parts);

// FTEN v1: an ASCII header line "FTEN <rank> <d0> ... <dk>\n" followed by
// product(dims) little-endian IEEE-754 binary32 values.
void WriteFten(std::ostream& out, const Tensor& t);
Tensor ReadFten(std::istream& in);
void SaveFten(const std::filesystem::path& path, const Tensor& t);
Tensor LoadFten(const std::filesystem::path& path);

}  // namespace actx

#endif  // ACTX_TENSOR_H_

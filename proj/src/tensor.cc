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

#include "actx/tensor.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace actx {
namespace {

void ValidateShape(const Shape& dims) {
  if (dims.empty() || dims.size() > Tensor::kMaxRank) {
    throw ShapeError("rank must be in [1, 4], got " +
                     std::to_string(dims.size()));
  }
  for (std::int64_t d : dims) {
    if (d < 1) throw ShapeError("extent < 1 in " + ShapeToString(dims));
  }
}

std::size_t Product(const Shape& dims) {
  std::size_t n = 1;
  for (std::int64_t d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

std::uint32_t ByteSwap32(std::uint32_t v) {
  return ((v & 0xFFu) << 24) | ((v & 0xFF00u) << 8) | ((v >> 8) & 0xFF00u) |
         (v >> 24);
}

}  // namespace

std::string ShapeToString(const Shape& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(dims[i]);
  }
  return s + "]";
}

Tensor Tensor::Zeros(const Shape& dims) { return Full(dims, 0.0f); }

Tensor Tensor::Full(const Shape& dims, float value) {
  ValidateShape(dims);
  return Tensor(dims, std::vector<float>(Product(dims), value));
}

Tensor Tensor::FromData(const Shape& dims, std::vector<float> data) {
  ValidateShape(dims);
  if (data.size() != Product(dims)) {
    throw ShapeError("data length " + std::to_string(data.size()) +
                     " does not match " + ShapeToString(dims));
  }
  return Tensor(dims, std::move(data));
}

std::int64_t Tensor::dim(std::size_t axis) const {
  if (axis >= dims_.size()) {
    throw ShapeError("axis " + std::to_string(axis) + " out of range for " +
                     ShapeToString(dims_));
  }
  return dims_[axis];
}

std::size_t Tensor::Offset(std::initializer_list<std::int64_t> index) const {
  if (index.size() != dims_.size()) {
    throw ShapeError("expected " + std::to_string(dims_.size()) +
                     " indices, got " + std::to_string(index.size()));
  }
  std::size_t flat = 0;
  std::size_t axis = 0;
  for (std::int64_t i : index) {
    if (i < 0 || i >= dims_[axis]) {
      throw ShapeError("index " + std::to_string(i) + " out of range on axis " +
                       std::to_string(axis) + " of " + ShapeToString(dims_));
    }
    flat = flat * static_cast<std::size_t>(dims_[axis]) +
           static_cast<std::size_t>(i);
    ++axis;
  }
  return flat;
}

Tensor& Tensor::operator+=(const Tensor& other) {
  if (dims_ != other.dims_) {
    throw ShapeError("accumulate " + ShapeToString(other.dims_) + " into " +
                     ShapeToString(dims_));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

void Tensor::Fill(float value) { std::fill(data_.begin(), data_.end(), value); }

Tensor ConcatChannels(std::span<const Tensor> parts) {
  if (parts.empty()) throw ShapeError("concat of an empty list");
  const Shape& first = parts.front().dims();
  if (first.size() != 3) {
    throw ShapeError("concat expects rank-3 parts, got " +
                     ShapeToString(first));
  }
  for (const Tensor& p : parts) {
    if (p.dims() != first) {
      throw ShapeError("concat part " + ShapeToString(p.dims()) +
                       " differs from " + ShapeToString(first));
    }
  }
  std::vector<float> out;
  out.reserve(parts.size() * parts.front().numel());
  for (const Tensor& p : parts) {
    out.insert(out.end(), p.data().begin(), p.data().end());
  }
  return Tensor::FromData(
      {first[0] * static_cast<std::int64_t>(parts.size()), first[1], first[2]},
      std::move(out));
}

Tensor SliceChannels(const Tensor& t, std::int64_t begin, std::int64_t count) {
  if (t.rank() != 3) throw ShapeError("slice expects a rank-3 tensor");
  if (begin < 0 || count < 1 || begin + count > t.dim(0)) {
    throw ShapeError("channel slice [" + std::to_string(begin) + ", " +
                     std::to_string(begin + count) + ") out of range for " +
                     ShapeToString(t.dims()));
  }
  const std::size_t plane = static_cast<std::size_t>(t.dim(1) * t.dim(2));
  auto first = t.data().begin() + static_cast<std::ptrdiff_t>(begin * plane);
  std::vector<float> out(first,
                         first + static_cast<std::ptrdiff_t>(count * plane));
  return Tensor::FromData({count, t.dim(1), t.dim(2)}, std::move(out));
}

Tensor Stack(std::span<const Tensor> parts) {
  if (parts.empty()) throw ShapeError("stack of an empty list");
  const Shape& first = parts.front().dims();
  if (first.size() + 1 > Tensor::kMaxRank) {
    throw ShapeError("stack result would exceed rank 4");
  }
  std::vector<float> out;
  out.reserve(parts.size() * parts.front().numel());
  for (const Tensor& p : parts) {
    if (p.dims() != first) {
      throw ShapeError("stack part " + ShapeToString(p.dims()) +
                       " differs from " + ShapeToString(first));
    }
    out.insert(out.end(), p.data().begin(), p.data().end());
  }
  Shape dims{static_cast<std::int64_t>(parts.size())};
  dims.insert(dims.end(), first.begin(), first.end());
  return Tensor::FromData(dims, std::move(out));
}

void WriteFten(std::ostream& out, const Tensor& t) {
  if (t.rank() == 0) throw ShapeError("cannot serialize an empty tensor");
  std::string header = "FTEN " + std::to_string(t.rank());
  for (std::int64_t d : t.dims()) header += " " + std::to_string(d);
  header += "\n";
  out.write(header.data(), static_cast<std::streamsize>(header.size()));

  std::vector<std::uint32_t> words(t.numel());
  std::memcpy(words.data(), t.raw(), t.numel() * sizeof(float));
  if constexpr (std::endian::native == std::endian::big) {
    for (auto& w : words) w = ByteSwap32(w);
  }
  out.write(reinterpret_cast<const char*>(words.data()),
            static_cast<std::streamsize>(words.size() * sizeof(std::uint32_t)));
  if (!out) throw IoError("failed writing FTEN payload");
}

Tensor ReadFten(std::istream& in) {
  constexpr std::size_t kMaxHeader = 256;
  std::string header;
  char c = 0;
  while (in.get(c) && c != '\n') {
    header.push_back(c);
    if (header.size() > kMaxHeader) throw FormatError("FTEN header too long");
  }
  if (c != '\n') throw FormatError("FTEN header is not newline-terminated");

  std::istringstream fields(header);
  std::string magic;
  fields >> magic;
  if (magic != "FTEN") throw FormatError("missing FTEN magic");
  long long rank = 0;
  if (!(fields >> rank) || rank < 1 || rank > 4) {
    throw FormatError("FTEN rank must be in [1, 4]");
  }
  Shape dims;
  for (long long i = 0; i < rank; ++i) {
    long long d = 0;
    if (!(fields >> d) || d < 1) {
      throw FormatError("FTEN extent " + std::to_string(i) +
                        " missing or not positive");
    }
    dims.push_back(d);
  }
  std::string extra;
  if (fields >> extra) throw FormatError("FTEN header has extra fields");

  std::size_t n = 1;
  for (std::int64_t d : dims) n *= static_cast<std::size_t>(d);
  std::vector<std::uint32_t> words(n);
  in.read(reinterpret_cast<char*>(words.data()),
          static_cast<std::streamsize>(n * sizeof(std::uint32_t)));
  if (static_cast<std::size_t>(in.gcount()) != n * sizeof(std::uint32_t)) {
    throw FormatError("FTEN payload truncated: expected " +
                      std::to_string(n * 4) + " bytes");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("FTEN payload has trailing bytes");
  }
  if constexpr (std::endian::native == std::endian::big) {
    for (auto& w : words) w = ByteSwap32(w);
  }
  std::vector<float> data(n);
  std::memcpy(data.data(), words.data(), n * sizeof(float));
  return Tensor::FromData(dims, std::move(data));
}

void SaveFten(const std::filesystem::path& path, const Tensor& t) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  WriteFten(out, t);
}

Tensor LoadFten(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return ReadFten(in);
  } catch (const FormatError& e) {
    const std::string msg = e.what();
    throw FormatError(path.string() + ": " + msg.substr(msg.find(": ") + 2));
  }
}

}  // namespace actx

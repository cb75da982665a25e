// Copyright 2026 The fgbg Authors.
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

#include "fgbg/tensor_store.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

#include "fgbg/error.h"
#include "fgbg/image_io.h"

namespace fgbg {
namespace {

constexpr std::size_t kHeaderBytes = 12;
constexpr std::size_t kMaxRank = 8;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const Tensor& t) {
  if (t.rank() == 0 || shape_size(t.dims()) == 0) {
    throw Error(ErrorCode::kInvalidShape, "cannot write a tensor with empty shape");
  }
  if (t.rank() > 255) throw Error(ErrorCode::kInvalidShape, "rank exceeds 255");
  if (t.size() != shape_size(t.dims())) {
    throw Error(ErrorCode::kInvalidShape, "payload length does not match dims");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + 8 * t.rank() + 4 * t.size());
  out.insert(out.end(), kTensorMagic, kTensorMagic + 4);
  put_u32(out, kTensorVersion);
  out.push_back(kDtypeFloat32);
  out.push_back(std::uint8_t(t.rank()));
  out.push_back(0);
  out.push_back(0);
  for (std::size_t d : t.dims()) put_u64(out, d);
  for (float v : t.values()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteValue, "tensor contains NaN or Inf");
    }
    put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

Tensor decode_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kTensorMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "missing FGBG magic");
  }
  if (bytes.size() < kHeaderBytes) {
    throw Error(ErrorCode::kTruncatedPayload, "header is truncated");
  }
  const std::uint8_t* p = bytes.data();
  const std::uint32_t version = get_u32(p + 4);
  if (version != kTensorVersion) {
    throw Error(ErrorCode::kDtypeUnsupported,
                "unsupported container version " + std::to_string(version));
  }
  if (p[8] != kDtypeFloat32) {
    throw Error(ErrorCode::kDtypeUnsupported, "dtype code " + std::to_string(p[8]));
  }
  const std::size_t rank = p[9];
  if (rank == 0 || rank > kMaxRank) {
    throw Error(ErrorCode::kInvalidShape, "rank " + std::to_string(rank));
  }
  if (bytes.size() < kHeaderBytes + 8 * rank) {
    throw Error(ErrorCode::kTruncatedPayload, "dims are truncated");
  }
  std::vector<std::size_t> dims(rank);
  std::size_t count = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    const std::uint64_t d = get_u64(p + kHeaderBytes + 8 * i);
    if (d == 0) throw Error(ErrorCode::kInvalidShape, "zero dim");
    if (count > std::numeric_limits<std::size_t>::max() / 4 / d) {
      throw Error(ErrorCode::kInvalidShape, "dims overflow");
    }
    dims[i] = std::size_t(d);
    count *= dims[i];
  }
  const std::size_t payload_at = kHeaderBytes + 8 * rank;
  if (bytes.size() - payload_at < 4 * count) {
    throw Error(ErrorCode::kTruncatedPayload,
                "expected " + std::to_string(4 * count) + " payload bytes, found " +
                    std::to_string(bytes.size() - payload_at));
  }
  std::vector<float> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    values[i] = std::bit_cast<float>(get_u32(p + payload_at + 4 * i));
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::kNonFiniteValue,
                  "non-finite value at flat index " + std::to_string(i));
    }
  }
  return Tensor(std::move(dims), std::move(values));
}

Tensor read_tensor(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file_bytes(path);
  try {
    return decode_tensor(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_tensor(const std::filesystem::path& path, const Tensor& t) {
  write_file_bytes(path, encode_tensor(t));
}

LabelMask read_label_mask(const std::filesystem::path& path, int num_classes) {
  const PngImage png = read_png(path);
  if (png.channels != 1) {
    throw Error(ErrorCode::kDecodeFailure, path.string() + ": label mask must be single-channel");
  }
  LabelMask mask(png.width, png.height);
  for (std::size_t i = 0; i < png.pixels.size(); ++i) {
    const std::uint8_t v = png.pixels[i];
    if (v != LabelMask::kIgnore && v >= num_classes) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  path.string() + ": label " + std::to_string(v) + " >= " +
                      std::to_string(num_classes));
    }
    mask.labels[i] = v;
  }
  return mask;
}

LabelMask read_binary_mask(const std::filesystem::path& path) {
  const PngImage png = read_png(path);
  if (png.channels != 1) {
    throw Error(ErrorCode::kDecodeFailure, path.string() + ": mask must be single-channel");
  }
  LabelMask mask(png.width, png.height);
  for (std::size_t i = 0; i < png.pixels.size(); ++i) mask.labels[i] = png.pixels[i] != 0;
  return mask;
}

void write_binary_mask(const std::filesystem::path& path, const LabelMask& mask) {
  PngImage png{mask.width, mask.height, 1, {}};
  png.pixels.resize(mask.labels.size());
  for (std::size_t i = 0; i < mask.labels.size(); ++i) {
    png.pixels[i] = mask.labels[i] ? 255 : 0;
  }
  write_png(path, png);
}

void write_label_mask(const std::filesystem::path& path, const LabelMask& mask) {
  write_png(path, PngImage{mask.width, mask.height, 1, mask.labels});
}

}  // namespace fgbg

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

// Binary tensor container and label-mask ingestion.
//
// Tensor file layout (little-endian):
//
//   offset  size        field
//   0       4           magic "FGBG"
//   4       4  u32      version = 1
//   8       1  u8       dtype = 0 (float32)
//   9       1  u8       rank
//   10      2  u16      reserved = 0
//   12      8 * rank    dims, u64 each
//   ...     4 * prod    payload, row-major float32
//
// Label masks are 8-bit single-channel PNGs.

#ifndef FGBG_TENSOR_STORE_H_
#define FGBG_TENSOR_STORE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fgbg/image.h"
#include "fgbg/tensor.h"

namespace fgbg {

inline constexpr char kTensorMagic[4] = {'F', 'G', 'B', 'G'};
inline constexpr std::uint32_t kTensorVersion = 1;
inline constexpr std::uint8_t kDtypeFloat32 = 0;

// Errors: kIoFailure, kBadMagic, kDtypeUnsupported, kTruncatedPayload,
// kNonFiniteValue, kInvalidShape.
Tensor read_tensor(const std::filesystem::path& path);
Tensor decode_tensor(std::span<const std::uint8_t> bytes);

// Errors: kInvalidShape (empty or zero dims, size mismatch), kNonFiniteValue,
// kIoFailure. Overwrites an existing file.
void write_tensor(const std::filesystem::path& path, const Tensor& t);
std::vector<std::uint8_t> encode_tensor(const Tensor& t);

// PASCAL convention: pixel value 255 becomes LabelMask::kIgnore, any other
// value >= num_classes raises kLabelOutOfRange.
LabelMask read_label_mask(const std::filesystem::path& path, int num_classes);

// Binary fg/bg mask: 0 -> background (0), any other value -> foreground (1).
LabelMask read_binary_mask(const std::filesystem::path& path);

// Writes a binary mask as 0/255 grayscale PNG.
void write_binary_mask(const std::filesystem::path& path, const LabelMask& mask);

// Writes label values verbatim as an 8-bit grayscale PNG.
void write_label_mask(const std::filesystem::path& path, const LabelMask& mask);

}  // namespace fgbg

#endif  // FGBG_TENSOR_STORE_H_

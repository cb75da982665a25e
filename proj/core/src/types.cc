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

#include <string>
#include <utility>

#include "fgbg/error.h"
#include "fgbg/image.h"
#include "fgbg/tensor.h"

namespace fgbg {

std::size_t shape_size(std::span<const std::size_t> dims) {
  if (dims.empty()) return 0;
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

namespace {

void check_dims(const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw Error(ErrorCode::kInvalidShape, "tensor has no dims");
  for (std::size_t d : dims) {
    if (d == 0) throw Error(ErrorCode::kInvalidShape, "tensor has a zero dim");
  }
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> dims, float fill) : dims_(std::move(dims)) {
  check_dims(dims_);
  values_.assign(shape_size(dims_), fill);
}

Tensor::Tensor(std::vector<std::size_t> dims, std::vector<float> values)
    : dims_(std::move(dims)), values_(std::move(values)) {
  check_dims(dims_);
  if (values_.size() != shape_size(dims_)) {
    throw Error(ErrorCode::kInvalidShape,
                "payload has " + std::to_string(values_.size()) +
                    " values, dims require " + std::to_string(shape_size(dims_)));
  }
}

RgbImage RgbImage::from_gray(int w, int h, const std::vector<std::uint8_t>& gray) {
  RgbImage out(w, h);
  for (std::size_t i = 0; i < out.num_pixels(); ++i) {
    out.rgb[3 * i] = out.rgb[3 * i + 1] = out.rgb[3 * i + 2] = gray[i];
  }
  return out;
}

std::size_t hamming_distance(const LabelMask& a, const LabelMask& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorCode::kShapeMismatch, "hamming_distance on masks of different size");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.labels.size(); ++i) d += a.labels[i] != b.labels[i];
  return d;
}

}  // namespace fgbg

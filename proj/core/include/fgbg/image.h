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

#ifndef FGBG_IMAGE_H_
#define FGBG_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fgbg {

// Interleaved 8-bit RGB image, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 * width * height

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), rgb(3 * std::size_t(w) * h, 0) {}

  std::size_t num_pixels() const { return std::size_t(width) * height; }
  const std::uint8_t* pixel(std::size_t i) const { return &rgb[3 * i]; }
  std::uint8_t* pixel(std::size_t i) { return &rgb[3 * i]; }

  // Replicates a single intensity channel into R, G and B.
  static RgbImage from_gray(int w, int h, const std::vector<std::uint8_t>& gray);
};

// Per-pixel discrete labeling. Binary fg/bg masks use 0 = background and
// 1 = foreground; N-class segmentations use 0..N-1 with kIgnore for void.
struct LabelMask {
  static constexpr std::uint8_t kIgnore = 255;

  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> labels;

  LabelMask() = default;
  LabelMask(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), labels(std::size_t(w) * h, fill) {}

  std::size_t num_pixels() const { return labels.size(); }
  std::uint8_t& at(int x, int y) { return labels[std::size_t(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return labels[std::size_t(y) * width + x]; }

  friend bool operator==(const LabelMask&, const LabelMask&) = default;
};

// Per-pixel foreground probability in [0, 1], row-major.
struct HeatMap {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  HeatMap() = default;
  HeatMap(int w, int h, float fill = 0.0f)
      : width(w), height(h), values(std::size_t(w) * h, fill) {}

  std::size_t num_pixels() const { return values.size(); }
  float at(int x, int y) const { return values[std::size_t(y) * width + x]; }
};

// Hamming distance between two equally sized masks.
std::size_t hamming_distance(const LabelMask& a, const LabelMask& b);

}  // namespace fgbg

#endif  // FGBG_IMAGE_H_

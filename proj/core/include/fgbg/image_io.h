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

#ifndef FGBG_IMAGE_IO_H_
#define FGBG_IMAGE_IO_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "fgbg/image.h"

namespace fgbg {

// Decoded 8-bit PNG. channels is 1 (gray) or 3 (RGB); alpha is dropped and
// palettes are expanded.
struct PngImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;
};

// Errors: kIoFailure when the file cannot be opened, kDecodeFailure for
// anything that is not an 8-bit PNG.
PngImage read_png(const std::filesystem::path& path);

// Reads only the header. Errors as read_png.
void read_png_size(const std::filesystem::path& path, int* width, int* height);

// channels must be 1 or 3. Output is deterministic for identical input.
void write_png(const std::filesystem::path& path, const PngImage& image);

// Gray images are replicated into three channels.
RgbImage read_rgb_image(const std::filesystem::path& path);
void write_rgb_image(const std::filesystem::path& path, const RgbImage& image);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path,
                      const std::vector<std::uint8_t>& bytes);

}  // namespace fgbg

#endif  // FGBG_IMAGE_IO_H_

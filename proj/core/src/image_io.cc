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

#include "fgbg/image_io.h"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

#include "fgbg/error.h"

namespace fgbg {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  return f;
}

void silent_warning(png_structp, png_const_charp) {}

// Decodes into `out`. Returns an empty string on success, otherwise a
// description. Palette images keep their raw indices (label masks) unless
// expand_palette is set. Kept free of non-trivial locals so that longjmp out
// of libpng is well defined.
std::string decode_png(std::FILE* fp, bool expand_palette, bool header_only,
                       PngImage* out) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                           silent_warning);
  if (!png) return "png_create_read_struct failed";
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return "png_create_info_struct failed";
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return "corrupt or unsupported PNG";
  }
  png_byte sig[8];
  if (std::fread(sig, 1, 8, fp) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    return "not a PNG file";
  }
  png_init_io(png, fp);
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (bit_depth != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    return "only 8-bit PNGs are supported (bit depth " + std::to_string(bit_depth) + ")";
  }
  out->width = int(width);
  out->height = int(height);
  if (header_only) {
    png_destroy_read_struct(&png, &info, nullptr);
    return {};
  }

  int channels = 1;
  switch (color_type) {
    case PNG_COLOR_TYPE_GRAY:
      break;
    case PNG_COLOR_TYPE_GRAY_ALPHA:
      png_set_strip_alpha(png);
      break;
    case PNG_COLOR_TYPE_PALETTE:
      if (expand_palette) {
        png_set_palette_to_rgb(png);
        if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
        channels = 3;
      }
      break;
    case PNG_COLOR_TYPE_RGB:
      channels = 3;
      break;
    case PNG_COLOR_TYPE_RGB_ALPHA:
      png_set_strip_alpha(png);
      channels = 3;
      break;
    default:
      png_destroy_read_struct(&png, &info, nullptr);
      return "unsupported color type";
  }
  png_read_update_info(png, info);
  if (png_get_rowbytes(png, info) != png_size_t(width) * channels) {
    png_destroy_read_struct(&png, &info, nullptr);
    return "unexpected row layout";
  }
  out->channels = channels;
  out->pixels.resize(std::size_t(width) * height * channels);
  for (png_uint_32 y = 0; y < height; ++y) {
    png_read_row(png, out->pixels.data() + std::size_t(y) * width * channels, nullptr);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return {};
}

PngImage read_png_impl(const std::filesystem::path& path, bool expand_palette,
                       bool header_only) {
  FilePtr f = open_file(path, "rb");
  PngImage image;
  const std::string err = decode_png(f.get(), expand_palette, header_only, &image);
  if (!err.empty()) throw Error(ErrorCode::kDecodeFailure, path.string() + ": " + err);
  return image;
}

std::string encode_png(std::FILE* fp, const PngImage& image) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                            silent_warning);
  if (!png) return "png_create_write_struct failed";
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    return "png_create_info_struct failed";
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return "libpng write failure";
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, png_uint_32(image.width), png_uint_32(image.height), 8,
               image.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = std::size_t(image.width) * image.channels;
  for (int y = 0; y < image.height; ++y) {
    png_write_row(png, image.pixels.data() + std::size_t(y) * stride);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return {};
}

}  // namespace

PngImage read_png(const std::filesystem::path& path) {
  return read_png_impl(path, /*expand_palette=*/false, /*header_only=*/false);
}

void read_png_size(const std::filesystem::path& path, int* width, int* height) {
  const PngImage header = read_png_impl(path, false, /*header_only=*/true);
  *width = header.width;
  *height = header.height;
}

void write_png(const std::filesystem::path& path, const PngImage& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw Error(ErrorCode::kInvalidArgument, "PNG writer supports 1 or 3 channels");
  }
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() != std::size_t(image.width) * image.height * image.channels) {
    throw Error(ErrorCode::kInvalidShape, "PNG pixel buffer does not match its size");
  }
  FilePtr f = open_file(path, "wb");
  const std::string err = encode_png(f.get(), image);
  if (!err.empty()) throw Error(ErrorCode::kIoFailure, path.string() + ": " + err);
  if (std::fflush(f.get()) != 0) {
    throw Error(ErrorCode::kIoFailure, "flush failed for " + path.string());
  }
}

RgbImage read_rgb_image(const std::filesystem::path& path) {
  PngImage png = read_png_impl(path, /*expand_palette=*/true, false);
  if (png.channels == 1) return RgbImage::from_gray(png.width, png.height, png.pixels);
  RgbImage out;
  out.width = png.width;
  out.height = png.height;
  out.rgb = std::move(png.pixels);
  return out;
}

void write_rgb_image(const std::filesystem::path& path, const RgbImage& image) {
  write_png(path, PngImage{image.width, image.height, 3, image.rgb});
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "read failed for " + path.string());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path,
                      const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path.string());
}

}  // namespace fgbg

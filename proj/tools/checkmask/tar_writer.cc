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

#include "tar_writer.h"

#include <cstdio>
#include <cstring>

#include "fgbg/error.h"

namespace fgbg::checkmask {
namespace {

constexpr std::size_t kBlock = 512;

void put(char* field, std::size_t width, const std::string& s) {
  std::memcpy(field, s.data(), std::min(width, s.size()));
}

// Zero-padded octal with a trailing NUL.
void put_octal(char* field, std::size_t width, std::uint64_t v) {
  std::snprintf(field, width, "%0*llo", int(width - 1), static_cast<unsigned long long>(v));
}

}  // namespace

void TarWriter::add_file(const std::string& name, std::span<const std::uint8_t> data) {
  std::string prefix, base = name;
  if (name.empty() || name.front() == '/') {
    throw Error(ErrorCode::kInvalidArgument, "tar member name must be relative: " + name);
  }
  if (name.size() > 100) {
    const auto cut = name.rfind('/', 155);
    if (cut == std::string::npos || name.size() - cut - 1 > 100) {
      throw Error(ErrorCode::kInvalidArgument, "tar member name too long: " + name);
    }
    prefix = name.substr(0, cut);
    base = name.substr(cut + 1);
  }

  char h[kBlock] = {};
  put(h + 0, 100, base);
  put_octal(h + 100, 8, 0644);
  put_octal(h + 108, 8, 0);
  put_octal(h + 116, 8, 0);
  put_octal(h + 124, 12, data.size());
  put_octal(h + 136, 12, 0);
  std::memset(h + 148, ' ', 8);
  h[156] = '0';
  std::memcpy(h + 257, "ustar", 6);
  std::memcpy(h + 263, "00", 2);
  put(h + 345, 155, prefix);

  unsigned sum = 0;
  for (unsigned char c : h) sum += c;
  std::snprintf(h + 148, 8, "%06o", sum);  // six digits, NUL, space
  h[155] = ' ';

  bytes_.insert(bytes_.end(), h, h + kBlock);
  bytes_.insert(bytes_.end(), data.begin(), data.end());
  bytes_.resize(bytes_.size() + (kBlock - data.size() % kBlock) % kBlock, 0);
}

std::vector<std::uint8_t> TarWriter::finish() {
  bytes_.resize(bytes_.size() + 2 * kBlock, 0);
  return std::move(bytes_);
}

}  // namespace fgbg::checkmask

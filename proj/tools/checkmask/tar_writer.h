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

// Minimal POSIX ustar writer for regular files. Headers carry mode 0644,
// uid/gid 0 and mtime 0 so identical inputs give identical archives.

#ifndef FGBG_TOOLS_CHECKMASK_TAR_WRITER_H_
#define FGBG_TOOLS_CHECKMASK_TAR_WRITER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fgbg::checkmask {

class TarWriter {
 public:
  // name: relative path of at most 100 bytes, or 255 split at a '/'.
  // kInvalidArgument otherwise.
  void add_file(const std::string& name, std::span<const std::uint8_t> data);

  // Appends the two zero end-of-archive blocks and returns the archive.
  std::vector<std::uint8_t> finish();

 private:
  std::vector<std::uint8_t> bytes_;
};

}  // namespace fgbg::checkmask

#endif  // FGBG_TOOLS_CHECKMASK_TAR_WRITER_H_

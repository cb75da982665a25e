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

// Synthetic fixtures: a colored disk on a noisy background, with activation
// stacks that respond to the disk, and on-disk datasets built from them.

#ifndef FGBG_TESTS_TESTING_SYNTHETIC_H_
#define FGBG_TESTS_TESTING_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fgbg/image.h"
#include "fgbg/tensor.h"

namespace fgbg::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct BlobSpec {
  int width = 48;
  int height = 40;
  double cx = 24;
  double cy = 20;
  double radius = 9;
  unsigned seed = 1;
};

struct BlobImage {
  RgbImage image;
  Tensor conv4;  // 8 x ceil(H/4) x ceil(W/4)
  Tensor conv5;  // 8 x ceil(H/8) x ceil(W/8)
  LabelMask blob;            // 1 inside the disk
  LabelMask far_background;  // 1 farther than twice the radius from the centre
};

BlobImage make_blob_image(const BlobSpec& spec);

// Writes num_images blob images with activations, random 21-class score maps,
// tags and ground truth under dir, plus dir/manifest.json (returned).
std::filesystem::path write_blob_dataset(const std::filesystem::path& dir, int num_images,
                                         unsigned seed);

// Blob dataset plus candidates/<id>/ with num_candidates distinct binary
// masks per image, as laid out for the annotation service. Returns dir.
std::filesystem::path write_checkmask_dataset(const std::filesystem::path& dir, int num_images,
                                              int num_candidates, unsigned seed);

std::vector<std::uint8_t> file_bytes(const std::filesystem::path& p);

// Relative path -> contents for every regular file below root.
std::map<std::string, std::vector<std::uint8_t>> snapshot_tree(const std::filesystem::path& root);

}  // namespace fgbg::testing

#endif  // FGBG_TESTS_TESTING_SYNTHETIC_H_

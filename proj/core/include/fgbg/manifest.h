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

// Dataset manifest: a JSON document listing the images of a dataset together
// with their exported activations, optional score maps, image tags and
// optional ground truth.
//
//   {
//     "num_classes": 21,
//     "entries": [
//       {
//         "image_id": "2007_000032",
//         "image_path": "images/2007_000032.png",
//         "activations": {"conv4": "act/2007_000032.conv4.fgbg",
//                         "conv5": "act/2007_000032.conv5.fgbg"},
//         "score_path": "scores/2007_000032.fgbg",        (optional)
//         "tags": [0, 1, 15],
//         "ground_truth_path": "gt/2007_000032.png"       (optional)
//       }
//     ]
//   }
//
// Relative paths are resolved against the directory holding the manifest.

#ifndef FGBG_MANIFEST_H_
#define FGBG_MANIFEST_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fgbg/tags.h"

namespace fgbg {

struct ManifestEntry {
  std::string image_id;
  std::filesystem::path image_path;
  std::map<std::string, std::filesystem::path> activation_paths;
  std::optional<std::filesystem::path> score_path;
  std::vector<int> tags;  // present classes, background included
  std::optional<std::filesystem::path> ground_truth_path;
};

struct DatasetManifest {
  int num_classes = 21;
  std::vector<ManifestEntry> entries;

  const ManifestEntry* find(const std::string& image_id) const;
  TagSet tag_set(const ManifestEntry& entry) const;
};

// Parses and validates: unique ids, tags within [0, num_classes), and (when
// check_files is set) every referenced file exists. Errors: kManifestInvalid
// naming the offending entry or file, kIoFailure.
DatasetManifest load_manifest(const std::filesystem::path& path, bool check_files = true);
DatasetManifest parse_manifest(const nlohmann::json& doc,
                               const std::filesystem::path& base_dir,
                               bool check_files = true);

// Paths are written relative to base_dir when they lie below it.
nlohmann::json manifest_to_json(const DatasetManifest& manifest,
                                const std::filesystem::path& base_dir);
void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

}  // namespace fgbg

#endif  // FGBG_MANIFEST_H_

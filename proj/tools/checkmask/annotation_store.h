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

// Annotation state of one dataset. The data directory holds
//
//   manifest.json                    dataset manifest (images, tags)
//   candidates/<image_id>/           as written by `maskctl candidates`
//
// and selections live in an append-only SelectionLog. A selection is
// effective per (image, annotator) when it is the latest for that pair; the
// mask exported for an image comes from its latest selection by anyone.

#ifndef FGBG_TOOLS_CHECKMASK_ANNOTATION_STORE_H_
#define FGBG_TOOLS_CHECKMASK_ANNOTATION_STORE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fgbg/manifest.h"
#include "selection_log.h"

namespace fgbg::checkmask {

struct CandidateView {
  std::string image_id;
  std::filesystem::path image_path;
  std::vector<std::filesystem::path> candidate_paths;  // index 0 = candidate_1.png
  nlohmann::json meta;
};

struct ExportResult {
  std::size_t count = 0;
  // image_id -> bytes of the selected candidate, manifest order.
  std::vector<std::pair<std::string, std::vector<std::uint8_t>>> masks;
  nlohmann::json stats;
};

class AnnotationStore {
 public:
  // kManifestInvalid / kIoFailure when the data directory is unusable.
  AnnotationStore(const std::filesystem::path& data_dir, const std::filesystem::path& log_path);

  const DatasetManifest& manifest() const { return manifest_; }

  // Ids without a selection by annotator, manifest order.
  std::vector<std::string> list_pending(const std::string& annotator_id) const;
  std::vector<std::string> list_done(const std::string& annotator_id) const;

  // kUnknownImage, kCandidatesMissing.
  CandidateView get_candidates(const std::string& image_id) const;

  // Validates, stamps the receipt time, appends and returns the stored
  // record. kUnknownImage, kCandidatesMissing, kIndexOutOfRange (index
  // outside [-1, M)), kInvalidArgument (empty annotator, negative elapsed).
  SelectionRecord submit(SelectionRecord rec);

  // Builds the export from the log and candidate files only.
  ExportResult build_export() const;

  // Writes <out>/<id>/mask.png and <out>/stats.json; returns the count.
  std::size_t export_selected(const std::filesystem::path& out_dir) const;

  // The same files as a ustar archive.
  std::vector<std::uint8_t> export_tar() const;

 private:
  std::size_t candidate_count(const std::string& image_id) const;

  std::filesystem::path data_dir_;
  DatasetManifest manifest_;
  mutable SelectionLog log_;
  mutable std::mutex mu_;
  // (image, annotator) -> latest record.
  std::map<std::pair<std::string, std::string>, SelectionRecord> latest_;
};

}  // namespace fgbg::checkmask

#endif  // FGBG_TOOLS_CHECKMASK_ANNOTATION_STORE_H_

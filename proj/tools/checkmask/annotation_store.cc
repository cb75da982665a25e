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

#include "annotation_store.h"

#include <algorithm>

#include "fgbg/error.h"
#include "fgbg/image_io.h"
#include "tar_writer.h"

namespace fgbg::checkmask {
namespace {

namespace fs = std::filesystem;

std::vector<std::uint8_t> to_bytes(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

AnnotationStore::AnnotationStore(const fs::path& data_dir, const fs::path& log_path)
    : data_dir_(data_dir),
      manifest_(load_manifest(data_dir / "manifest.json", /*check_files=*/false)),
      log_(log_path) {
  for (SelectionRecord& r : log_.load()) {
    const auto key = std::make_pair(r.image_id, r.annotator_id);
    latest_[key] = std::move(r);
  }
}

std::vector<std::string> AnnotationStore::list_pending(const std::string& annotator_id) const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& e : manifest_.entries) {
    if (!latest_.count({e.image_id, annotator_id})) out.push_back(e.image_id);
  }
  return out;
}

std::vector<std::string> AnnotationStore::list_done(const std::string& annotator_id) const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& e : manifest_.entries) {
    if (latest_.count({e.image_id, annotator_id})) out.push_back(e.image_id);
  }
  return out;
}

std::size_t AnnotationStore::candidate_count(const std::string& image_id) const {
  const fs::path dir = data_dir_ / "candidates" / image_id;
  const fs::path meta = dir / "meta.json";
  if (!fs::exists(meta)) {
    throw Error(ErrorCode::kCandidatesMissing, "no candidate set for '" + image_id + "'");
  }
  const auto bytes = read_file_bytes(meta);
  std::size_t m = 0;
  try {
    m = nlohmann::json::parse(bytes.begin(), bytes.end()).at("energies").size();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCandidatesMissing, meta.string() + ": " + e.what());
  }
  for (std::size_t k = 1; k <= m; ++k) {
    if (!fs::exists(dir / ("candidate_" + std::to_string(k) + ".png"))) {
      throw Error(ErrorCode::kCandidatesMissing,
                  "candidate " + std::to_string(k) + " of '" + image_id + "' is missing");
    }
  }
  return m;
}

CandidateView AnnotationStore::get_candidates(const std::string& image_id) const {
  const ManifestEntry* e = manifest_.find(image_id);
  if (!e) throw Error(ErrorCode::kUnknownImage, "unknown image '" + image_id + "'");
  const std::size_t m = candidate_count(image_id);
  CandidateView v;
  v.image_id = image_id;
  v.image_path = e->image_path;
  const fs::path dir = data_dir_ / "candidates" / image_id;
  for (std::size_t k = 1; k <= m; ++k) {
    v.candidate_paths.push_back(dir / ("candidate_" + std::to_string(k) + ".png"));
  }
  const auto bytes = read_file_bytes(dir / "meta.json");
  v.meta = nlohmann::json::parse(bytes.begin(), bytes.end());
  return v;
}

SelectionRecord AnnotationStore::submit(SelectionRecord rec) {
  if (!manifest_.find(rec.image_id)) {
    throw Error(ErrorCode::kUnknownImage, "unknown image '" + rec.image_id + "'");
  }
  if (rec.annotator_id.empty()) throw Error(ErrorCode::kInvalidArgument, "empty annotator_id");
  if (rec.elapsed_ms < 0) throw Error(ErrorCode::kInvalidArgument, "elapsed_ms must be >= 0");
  const std::size_t m = candidate_count(rec.image_id);
  if (rec.candidate_index < -1 || rec.candidate_index >= int(m)) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "candidate_index " + std::to_string(rec.candidate_index) + " with " +
                    std::to_string(m) + " candidates");
  }
  rec.timestamp = utc_timestamp();
  std::lock_guard lock(mu_);
  log_.append(rec);
  latest_[{rec.image_id, rec.annotator_id}] = rec;
  return rec;
}

ExportResult AnnotationStore::build_export() const {
  const std::vector<SelectionRecord> records = log_.load();
  std::map<std::string, SelectionRecord> per_image;
  std::map<std::pair<std::string, std::string>, std::int64_t> per_pair;
  for (const SelectionRecord& r : records) {
    if (!manifest_.find(r.image_id)) continue;
    per_image[r.image_id] = r;
    per_pair[{r.image_id, r.annotator_id}] = r.elapsed_ms;
  }

  ExportResult out;
  for (const ManifestEntry& e : manifest_.entries) {
    auto it = per_image.find(e.image_id);
    if (it == per_image.end() || it->second.candidate_index < 0) continue;
    const fs::path p = data_dir_ / "candidates" / e.image_id /
                       ("candidate_" + std::to_string(it->second.candidate_index + 1) + ".png");
    out.masks.emplace_back(e.image_id, read_file_bytes(p));
  }
  out.count = out.masks.size();

  std::vector<std::int64_t> elapsed;
  for (const auto& [_, ms] : per_pair) elapsed.push_back(ms);
  std::sort(elapsed.begin(), elapsed.end());
  nlohmann::json stats = {{"exported", out.count},
                          {"selections", elapsed.size()},
                          {"mean_elapsed_ms", nullptr},
                          {"median_elapsed_ms", nullptr}};
  if (!elapsed.empty()) {
    double sum = 0.0;
    for (auto ms : elapsed) sum += double(ms);
    const std::size_t n = elapsed.size();
    stats["mean_elapsed_ms"] = sum / double(n);
    stats["median_elapsed_ms"] = n % 2 ? double(elapsed[n / 2])
                                       : 0.5 * double(elapsed[n / 2 - 1] + elapsed[n / 2]);
  }
  out.stats = std::move(stats);
  return out;
}

std::size_t AnnotationStore::export_selected(const fs::path& out_dir) const {
  const ExportResult ex = build_export();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + out_dir.string());
  for (const auto& [id, bytes] : ex.masks) {
    fs::create_directories(out_dir / id, ec);
    if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + (out_dir / id).string());
    write_file_bytes(out_dir / id / "mask.png", bytes);
  }
  write_file_bytes(out_dir / "stats.json", to_bytes(ex.stats.dump(2) + "\n"));
  return ex.count;
}

std::vector<std::uint8_t> AnnotationStore::export_tar() const {
  const ExportResult ex = build_export();
  TarWriter tar;
  for (const auto& [id, bytes] : ex.masks) tar.add_file(id + "/mask.png", bytes);
  tar.add_file("stats.json", to_bytes(ex.stats.dump(2) + "\n"));
  return tar.finish();
}

}  // namespace fgbg::checkmask

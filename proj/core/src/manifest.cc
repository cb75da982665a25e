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

#include "fgbg/manifest.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "fgbg/error.h"

namespace fgbg {

TagSet::TagSet(int num_classes, std::span<const int> present)
    : num_classes_(num_classes), is_present_(std::size_t(std::max(num_classes, 0)), false) {
  if (num_classes <= 0) throw Error(ErrorCode::kInvalidArgument, "num_classes must be positive");
  for (int k : present) {
    if (k < 0 || k >= num_classes) {
      throw Error(ErrorCode::kInvalidArgument, "tag " + std::to_string(k) + " out of range");
    }
    is_present_[k] = true;
  }
  for (int k = 0; k < num_classes; ++k) (is_present_[k] ? present_ : absent_).push_back(k);
  if (present_.empty()) throw Error(ErrorCode::kInvalidArgument, "tag set has no present class");
}

const ManifestEntry* DatasetManifest::find(const std::string& image_id) const {
  for (const auto& e : entries) {
    if (e.image_id == image_id) return &e;
  }
  return nullptr;
}

TagSet DatasetManifest::tag_set(const ManifestEntry& entry) const {
  return TagSet(num_classes, entry.tags);
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string relative_to(const std::filesystem::path& p, const std::filesystem::path& base) {
  if (base.empty()) return p.string();
  const std::filesystem::path rel = p.lexically_relative(base);
  if (rel.empty() || *rel.begin() == "..") return p.string();
  return rel.generic_string();
}

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kManifestInvalid, what);
}

void require_file(const std::string& id, const std::filesystem::path& p, bool check) {
  if (check && !std::filesystem::is_regular_file(p)) {
    invalid("entry '" + id + "': missing file " + p.string());
  }
}

}  // namespace

DatasetManifest parse_manifest(const nlohmann::json& doc, const std::filesystem::path& base_dir,
                               bool check_files) {
  if (!doc.is_object()) invalid("manifest must be a JSON object");
  DatasetManifest m;
  m.num_classes = doc.value("num_classes", 21);
  if (m.num_classes <= 0 || m.num_classes > 255) invalid("num_classes must be in [1, 255]");
  if (!doc.contains("entries")) return m;
  if (!doc["entries"].is_array()) invalid("'entries' must be an array");

  std::set<std::string> seen;
  for (const auto& j : doc["entries"]) {
    ManifestEntry e;
    try {
      e.image_id = j.at("image_id").get<std::string>();
      if (e.image_id.empty()) invalid("empty image_id");
      if (!seen.insert(e.image_id).second) invalid("duplicate image_id '" + e.image_id + "'");
      e.image_path = resolve(base_dir, j.at("image_path").get<std::string>());
      require_file(e.image_id, e.image_path, check_files);
      if (j.contains("activations")) {
        for (const auto& [layer, p] : j["activations"].items()) {
          e.activation_paths[layer] = resolve(base_dir, p.get<std::string>());
          require_file(e.image_id, e.activation_paths[layer], check_files);
        }
      }
      if (j.contains("score_path") && !j["score_path"].is_null()) {
        e.score_path = resolve(base_dir, j["score_path"].get<std::string>());
        require_file(e.image_id, *e.score_path, check_files);
      }
      if (j.contains("ground_truth_path") && !j["ground_truth_path"].is_null()) {
        e.ground_truth_path = resolve(base_dir, j["ground_truth_path"].get<std::string>());
        require_file(e.image_id, *e.ground_truth_path, check_files);
      }
      e.tags = j.value("tags", std::vector<int>{0});
      for (int k : e.tags) {
        if (k < 0 || k >= m.num_classes) {
          invalid("entry '" + e.image_id + "': tag " + std::to_string(k) + " out of range");
        }
      }
      if (e.tags.empty()) invalid("entry '" + e.image_id + "': empty tag list");
    } catch (const nlohmann::json::exception& ex) {
      invalid("entry '" + e.image_id + "': " + ex.what());
    }
    m.entries.push_back(std::move(e));
  }
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path, bool check_files) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open manifest " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    invalid(path.string() + ": " + ex.what());
  }
  return parse_manifest(doc, path.parent_path(), check_files);
}

nlohmann::json manifest_to_json(const DatasetManifest& manifest,
                                const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  doc["num_classes"] = manifest.num_classes;
  doc["entries"] = nlohmann::json::array();
  for (const auto& e : manifest.entries) {
    nlohmann::json j;
    j["image_id"] = e.image_id;
    j["image_path"] = relative_to(e.image_path, base_dir);
    j["activations"] = nlohmann::json::object();
    for (const auto& [layer, p] : e.activation_paths) {
      j["activations"][layer] = relative_to(p, base_dir);
    }
    if (e.score_path) j["score_path"] = relative_to(*e.score_path, base_dir);
    j["tags"] = e.tags;
    if (e.ground_truth_path) j["ground_truth_path"] = relative_to(*e.ground_truth_path, base_dir);
    doc["entries"].push_back(std::move(j));
  }
  return doc;
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  out << manifest_to_json(manifest, path.parent_path()).dump(2) << '\n';
}

}  // namespace fgbg

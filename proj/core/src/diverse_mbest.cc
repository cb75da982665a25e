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

#include "fgbg/diverse_mbest.h"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fgbg/error.h"
#include "fgbg/image_io.h"
#include "fgbg/tensor_store.h"

namespace fgbg {

namespace fs = std::filesystem;

void DiversityConfig::validate() const {
  if (num_candidates < 1) throw Error(ErrorCode::kInvalidArgument, "num_candidates must be >= 1");
  if (lambda && (!std::isfinite(*lambda) || *lambda < 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be finite and >= 0");
  }
}

double default_lambda(const UnaryField& unary) {
  if (unary.cost.empty()) return 0.0;
  double s = 0.0;
  for (double c : unary.cost) s += std::abs(c);
  return 0.1 * s / double(unary.cost.size());
}

UnaryField augment_unary(const UnaryField& unary, std::span<const LabelMask> previous,
                         double lambda) {
  UnaryField out = unary;
  if (previous.empty()) return out;
  const std::size_t n = unary.num_pixels();
  const int L = unary.num_labels;
  // Count, per pixel and label, how many previous masks chose that label;
  // the bonus applies to the remaining masks.
  std::vector<int> agree(n * std::size_t(L), 0);
  for (const LabelMask& m : previous) {
    if (m.width != unary.width || m.height != unary.height) {
      throw Error(ErrorCode::kShapeMismatch, "previous candidate differs in size from unary field");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (m.labels[i] >= L) throw Error(ErrorCode::kLabelOutOfRange, "previous candidate label");
      ++agree[i * L + m.labels[i]];
    }
  }
  const int total = int(previous.size());
  for (std::size_t k = 0; k < out.cost.size(); ++k) {
    out.cost[k] -= lambda * double(total - agree[k]);
  }
  return out;
}

CandidateSet generate_candidates(const UnaryField& unary, const RgbImage& image,
                                 const PairwiseConfig& crf_cfg, const DiversityConfig& div_cfg,
                                 const CandidateOptions& options) {
  div_cfg.validate();
  if (unary.width != image.width || unary.height != image.height) {
    throw Error(ErrorCode::kShapeMismatch, "unary field and image differ in size");
  }
  const PairwiseMessenger messenger(image, crf_cfg, options.backend);
  CandidateSet set;
  set.lambda = div_cfg.lambda.value_or(default_lambda(unary));
  for (int m = 0; m < div_cfg.num_candidates; ++m) {
    const UnaryField u = augment_unary(unary, set.candidates, set.lambda);
    LabelMask x = map_labels(mean_field_infer(u, messenger, crf_cfg.iterations));
    set.energies.push_back(unary_energy(x, unary) +
                           messenger.pairwise_energy(x, unary.num_labels));
    set.candidates.push_back(std::move(x));
  }
  return set;
}

void save_candidate_set(const CandidateSet& set, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + dir.string() + ": " + ec.message());
  for (std::size_t m = 0; m < set.candidates.size(); ++m) {
    write_binary_mask(dir / ("candidate_" + std::to_string(m + 1) + ".png"), set.candidates[m]);
  }
  nlohmann::json meta = {
      {"image_id", set.image_id}, {"lambda", set.lambda}, {"energies", set.energies}};
  const std::string text = meta.dump(2) + "\n";
  write_file_bytes(dir / "meta.json", std::vector<std::uint8_t>(text.begin(), text.end()));
}

CandidateSet load_candidate_set(const fs::path& dir) {
  const fs::path meta_path = dir / "meta.json";
  if (!fs::exists(meta_path)) {
    throw Error(ErrorCode::kCandidatesMissing, "no meta.json in " + dir.string());
  }
  const auto bytes = read_file_bytes(meta_path);
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kDecodeFailure, meta_path.string() + ": " + e.what());
  }
  CandidateSet set;
  try {
    set.image_id = meta.at("image_id").get<std::string>();
    set.lambda = meta.at("lambda").get<double>();
    set.energies = meta.at("energies").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kDecodeFailure, meta_path.string() + ": " + e.what());
  }
  for (std::size_t m = 0; m < set.energies.size(); ++m) {
    const fs::path p = dir / ("candidate_" + std::to_string(m + 1) + ".png");
    if (!fs::exists(p)) throw Error(ErrorCode::kCandidatesMissing, p.string());
    set.candidates.push_back(read_binary_mask(p));
  }
  return set;
}

}  // namespace fgbg

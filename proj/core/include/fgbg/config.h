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

// JSON configuration for the whole pipeline. Every block is optional and
// every key inside a block is optional; unknown keys are rejected so typos
// do not silently fall back to defaults.
//
//   {
//     "crf": {"w_app": 10, "theta_alpha": 80, "theta_beta": 13,
//             "w_smooth": 3, "theta_gamma": 3, "iterations": 10},
//     "diversity": {"lambda": null, "num_candidates": 30},
//     "loss": {"r": 5},
//     "epsilon": 1e-6,
//     "filter": "permutohedral"
//   }

#ifndef FGBG_CONFIG_H_
#define FGBG_CONFIG_H_

#include <filesystem>

#include <nlohmann/json.hpp>

#include "fgbg/dense_crf.h"
#include "fgbg/diverse_mbest.h"
#include "fgbg/weak_loss.h"

namespace fgbg {

struct PipelineConfig {
  PairwiseConfig crf;
  DiversityConfig diversity;
  LossConfig loss;
  double epsilon = 1e-6;
  FilterBackend filter = FilterBackend::kPermutohedral;

  void validate() const;
};

nlohmann::json to_json(const PairwiseConfig& cfg);
// kInvalidArgument on unknown keys, wrong types or invalid values.
PairwiseConfig pairwise_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PipelineConfig& cfg);
PipelineConfig pipeline_config_from_json(const nlohmann::json& j);

// kIoFailure when unreadable, kInvalidArgument when malformed.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

}  // namespace fgbg

#endif  // FGBG_CONFIG_H_

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

#include "fgbg/config.h"

#include <initializer_list>
#include <string>

#include "fgbg/error.h"
#include "fgbg/image_io.h"

namespace fgbg {
namespace {

using nlohmann::json;

void require_object(const json& j, const char* what,
                    std::initializer_list<const char*> allowed) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be a JSON object");
  }
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown key '" + key + "' in " + std::string(what));
    }
  }
}

template <typename T>
void read_key(const json& j, const char* key, T* out) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    if constexpr (std::is_same_v<T, int>) {
      if (!it->is_number_integer()) throw Error(ErrorCode::kInvalidArgument, "not an integer");
    } else if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw Error(ErrorCode::kInvalidArgument, "not a number");
    }
    *out = it->get<T>();
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad value for '") + key + "'");
  }
}

}  // namespace

void PipelineConfig::validate() const {
  crf.validate();
  diversity.validate();
  loss.validate();
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in (0, 0.5)");
  }
}

json to_json(const PairwiseConfig& cfg) {
  return {{"w_app", cfg.w_app},       {"theta_alpha", cfg.theta_alpha},
          {"theta_beta", cfg.theta_beta}, {"w_smooth", cfg.w_smooth},
          {"theta_gamma", cfg.theta_gamma}, {"iterations", cfg.iterations}};
}

PairwiseConfig pairwise_config_from_json(const json& j) {
  require_object(j, "crf",
                 {"w_app", "theta_alpha", "theta_beta", "w_smooth", "theta_gamma", "iterations"});
  PairwiseConfig cfg;
  read_key(j, "w_app", &cfg.w_app);
  read_key(j, "theta_alpha", &cfg.theta_alpha);
  read_key(j, "theta_beta", &cfg.theta_beta);
  read_key(j, "w_smooth", &cfg.w_smooth);
  read_key(j, "theta_gamma", &cfg.theta_gamma);
  read_key(j, "iterations", &cfg.iterations);
  cfg.validate();
  return cfg;
}

json to_json(const PipelineConfig& cfg) {
  json div = {{"lambda", nullptr}, {"num_candidates", cfg.diversity.num_candidates}};
  if (cfg.diversity.lambda) div["lambda"] = *cfg.diversity.lambda;
  return {{"crf", to_json(cfg.crf)},
          {"diversity", div},
          {"loss", {{"r", cfg.loss.r}}},
          {"epsilon", cfg.epsilon},
          {"filter", std::string(backend_name(cfg.filter))}};
}

PipelineConfig pipeline_config_from_json(const json& j) {
  require_object(j, "config", {"crf", "diversity", "loss", "epsilon", "filter"});
  PipelineConfig cfg;
  if (j.contains("crf")) cfg.crf = pairwise_config_from_json(j["crf"]);
  if (j.contains("diversity")) {
    const json& d = j["diversity"];
    require_object(d, "diversity", {"lambda", "num_candidates"});
    if (d.contains("lambda") && !d["lambda"].is_null()) {
      double lambda = 0.0;
      read_key(d, "lambda", &lambda);
      cfg.diversity.lambda = lambda;
    }
    read_key(d, "num_candidates", &cfg.diversity.num_candidates);
  }
  if (j.contains("loss")) {
    require_object(j["loss"], "loss", {"r"});
    read_key(j["loss"], "r", &cfg.loss.r);
  }
  read_key(j, "epsilon", &cfg.epsilon);
  if (j.contains("filter")) {
    if (!j["filter"].is_string()) throw Error(ErrorCode::kInvalidArgument, "filter must be a string");
    cfg.filter = parse_backend(j["filter"].get<std::string>());
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, path.string() + ": " + e.what());
  }
  return pipeline_config_from_json(j);
}

}  // namespace fgbg

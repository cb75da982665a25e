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

#include "commands.h"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "fgbg/config.h"
#include "fgbg/dense_crf.h"
#include "fgbg/diverse_mbest.h"
#include "fgbg/error.h"
#include "fgbg/image_io.h"
#include "fgbg/manifest.h"
#include "fgbg/prior_fusion.h"
#include "fgbg/seg_metrics.h"
#include "fgbg/tensor_store.h"
#include "fgbg/weak_loss.h"
#include "worker_pool.h"

namespace fgbg::maskctl {
namespace {

namespace fs = std::filesystem;

// Finite-difference settings of the loss gradient check.
constexpr double kCheckStep = 1e-4;
constexpr double kCheckTolerance = 1e-4;
constexpr double kCheckFloor = 1e-6;

struct ImageResult {
  std::string line;
  std::string error;
  bool check_failed = false;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

// Thrown for bad flag values; maps to kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PipelineConfig resolve_config(const Options& opts) {
  PipelineConfig cfg;
  if (opts.config) {
    try {
      cfg = load_pipeline_config(*opts.config);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  if (opts.lambda) cfg.diversity.lambda = *opts.lambda;
  if (opts.num_candidates) cfg.diversity.num_candidates = *opts.num_candidates;
  if (opts.r) cfg.loss.r = *opts.r;
  if (opts.iterations) cfg.crf.iterations = *opts.iterations;
  try {
    if (opts.filter) cfg.filter = parse_backend(*opts.filter);
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + dir.string() + ": " + ec.message());
}

// Runs per_image over the manifest on the worker pool and reports in
// manifest order.
int run_per_image(const DatasetManifest& manifest,
                  const std::function<std::string(const ManifestEntry&, ImageResult&)>& per_image,
                  std::ostream& out, std::ostream& err) {
  std::vector<ImageResult> results(manifest.entries.size());
  parallel_for(manifest.entries.size(), [&](std::size_t i) {
    const ManifestEntry& e = manifest.entries[i];
    try {
      results[i].line = per_image(e, results[i]);
    } catch (const std::exception& ex) {
      results[i].error = e.image_id + ": " + ex.what();
    }
  });
  bool data_error = false, check_failed = false;
  for (const ImageResult& r : results) {
    if (!r.error.empty()) {
      err << "error: " << r.error << "\n";
      data_error = true;
      continue;
    }
    out << r.line << "\n";
    check_failed = check_failed || r.check_failed;
  }
  out.flush();
  if (data_error) return kExitDataError;
  return check_failed ? kExitCheckFailed : kExitOk;
}

// Wraps command setup so configuration and manifest errors map to exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}

const fs::path& activation(const ManifestEntry& e, const char* layer) {
  auto it = e.activation_paths.find(layer);
  if (it == e.activation_paths.end()) {
    throw Error(ErrorCode::kManifestInvalid, std::string("no '") + layer + "' activations");
  }
  return it->second;
}

HeatMap fused_heatmap(const ManifestEntry& e, int width, int height) {
  const Tensor l4 = read_tensor(activation(e, kLayer4));
  const Tensor l5 = read_tensor(activation(e, kLayer5));
  return fuse_activation_stacks(l4, l5, width, height);
}

// Heat map for an entry: precomputed when a directory is given, else fused.
HeatMap entry_heatmap(const Options& opts, const ManifestEntry& e, int width, int height) {
  if (!opts.heatmaps) return fused_heatmap(e, width, height);
  HeatMap h = tensor_to_heatmap(read_tensor(*opts.heatmaps / (e.image_id + ".fgbg")));
  if (h.width != width || h.height != height) {
    throw Error(ErrorCode::kShapeMismatch, "heat map does not match the image size");
  }
  return h;
}

std::vector<std::size_t> sample_indices(std::size_t total, std::size_t samples) {
  std::vector<std::size_t> idx;
  if (samples == 0 || total <= samples) return idx;  // empty = all entries
  std::mt19937_64 rng(0x6667626775ull);
  std::set<std::size_t> chosen;
  while (chosen.size() < samples) chosen.insert(std::size_t(rng() % total));
  idx.assign(chosen.begin(), chosen.end());
  return idx;
}

}  // namespace

int cmd_fuse(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const DatasetManifest manifest = load_manifest(opts.manifest);
    ensure_dir(opts.out);
    return run_per_image(
        manifest,
        [&](const ManifestEntry& e, ImageResult&) {
          int w = 0, h = 0;
          read_png_size(e.image_path, &w, &h);
          const HeatMap heat = fused_heatmap(e, w, h);
          write_tensor(opts.out / (e.image_id + ".fgbg"), heatmap_to_tensor(heat));
          double sum = 0.0;
          for (float v : heat.values) sum += v;
          const auto [lo, hi] = std::minmax_element(heat.values.begin(), heat.values.end());
          return format("%s heatmap %dx%d min=%.6f max=%.6f mean=%.6f", e.image_id.c_str(), w, h,
                        double(*lo), double(*hi), sum / double(heat.num_pixels()));
        },
        out, err);
  });
}

int cmd_mask(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PipelineConfig cfg = resolve_config(opts);
    const DatasetManifest manifest = load_manifest(opts.manifest);
    ensure_dir(opts.out);
    return run_per_image(
        manifest,
        [&](const ManifestEntry& e, ImageResult&) {
          const RgbImage image = read_rgb_image(e.image_path);
          const HeatMap heat = entry_heatmap(opts, e, image.width, image.height);
          MeanFieldOptions mf;
          mf.backend = cfg.filter;
          const LabelMask mask =
              map_labels(mean_field_infer(unary_from_heatmap(heat, cfg.epsilon), image, cfg.crf, mf));
          write_binary_mask(opts.out / (e.image_id + ".png"), mask);
          const auto fg = std::count(mask.labels.begin(), mask.labels.end(), 1);
          return format("%s mask %dx%d foreground=%.6f", e.image_id.c_str(), mask.width,
                        mask.height, double(fg) / double(mask.num_pixels()));
        },
        out, err);
  });
}

int cmd_candidates(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PipelineConfig cfg = resolve_config(opts);
    const DatasetManifest manifest = load_manifest(opts.manifest);
    ensure_dir(opts.out);
    return run_per_image(
        manifest,
        [&](const ManifestEntry& e, ImageResult&) {
          const RgbImage image = read_rgb_image(e.image_path);
          const HeatMap heat = entry_heatmap(opts, e, image.width, image.height);
          CandidateSet set = generate_candidates(unary_from_heatmap(heat, cfg.epsilon), image,
                                                 cfg.crf, cfg.diversity, {cfg.filter});
          set.image_id = e.image_id;
          save_candidate_set(set, opts.out / e.image_id);
          std::size_t distinct = 0;
          for (std::size_t m = 0; m < set.candidates.size(); ++m) {
            bool seen = false;
            for (std::size_t k = 0; k < m && !seen; ++k) seen = set.candidates[k] == set.candidates[m];
            distinct += !seen;
          }
          return format("%s candidates M=%zu distinct=%zu lambda=%.6g", e.image_id.c_str(),
                        set.candidates.size(), distinct, set.lambda);
        },
        out, err);
  });
}

int cmd_loss(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    LossVariant variant;
    try {
      variant = parse_variant(opts.variant);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (variant_needs_mask(variant) && !opts.masks) {
      throw UsageError(std::string(variant_name(variant)) + " loss needs --masks");
    }
    const PipelineConfig cfg = resolve_config(opts);
    const DatasetManifest manifest = load_manifest(opts.manifest);
    std::vector<nlohmann::json> records(manifest.entries.size());
    const int code = run_per_image(
        manifest,
        [&](const ManifestEntry& e, ImageResult& result) {
          if (!e.score_path) throw Error(ErrorCode::kManifestInvalid, "no score_path");
          const ScoreMap s = ScoreMap::from_tensor(read_tensor(*e.score_path));
          const TagSet tags = manifest.tag_set(e);
          std::optional<LabelMask> mask;
          if (variant_needs_mask(variant)) {
            mask = read_binary_mask(*opts.masks / e.image_id / "mask.png");
          }
          const LabelMask* m = mask ? &*mask : nullptr;
          const LossReport rep = evaluate_loss(variant, s, tags, m, cfg.loss);
          const auto idx = sample_indices(s.values.size(), opts.check_samples);
          const GradientCheck check = check_gradient(
              [&](const ScoreMap& x) { return evaluate_loss(variant, x, tags, m, cfg.loss).value; },
              s, rep.grad, kCheckStep, idx, kCheckFloor);
          const bool pass = check.max_relative_error < kCheckTolerance;
          result.check_failed = !pass;
          const auto i = std::size_t(&e - manifest.entries.data());
          records[i] = {{"image_id", e.image_id},
                        {"loss", rep.value},
                        {"grad_check", pass ? "pass" : "fail"},
                        {"max_rel_error", check.max_relative_error},
                        {"checked", check.checked}};
          return format("%s %s loss=%.10g grad_check=%s max_rel_err=%.3e checked=%zu",
                        e.image_id.c_str(), std::string(variant_name(variant)).c_str(), rep.value,
                        pass ? "pass" : "FAIL", check.max_relative_error, check.checked);
        },
        out, err);
    if (!opts.out.empty()) {
      ensure_dir(opts.out);
      nlohmann::json doc = {{"variant", std::string(variant_name(variant))},
                            {"r", cfg.loss.r},
                            {"images", nlohmann::json::array()}};
      for (auto& r : records) {
        if (!r.is_null()) doc["images"].push_back(std::move(r));
      }
      const std::string text = doc.dump(2) + "\n";
      write_file_bytes(opts.out / "loss.json", std::vector<std::uint8_t>(text.begin(), text.end()));
    }
    return code;
  });
}

int cmd_eval(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.num_classes < 1 || opts.num_classes > 255) {
      throw UsageError("--num-classes must lie in [1, 255]");
    }
    if (!fs::is_directory(opts.gt_dir)) {
      throw Error(ErrorCode::kIoFailure, "not a directory: " + opts.gt_dir.string());
    }
    std::vector<fs::path> names;
    for (const auto& f : fs::directory_iterator(opts.gt_dir)) {
      if (f.is_regular_file() && f.path().extension() == ".png") names.push_back(f.path().filename());
    }
    std::sort(names.begin(), names.end());
    std::vector<ConfusionState> parts(names.size(), ConfusionState(opts.num_classes));
    std::vector<std::string> errors(names.size());
    parallel_for(names.size(), [&](std::size_t i) {
      try {
        const fs::path pred = opts.pred_dir / names[i];
        if (!fs::exists(pred)) throw Error(ErrorCode::kIoFailure, "missing prediction " + pred.string());
        confusion_accumulate(read_label_mask(pred, opts.num_classes),
                             read_label_mask(opts.gt_dir / names[i], opts.num_classes), parts[i]);
      } catch (const std::exception& e) {
        errors[i] = names[i].string() + ": " + e.what();
      }
    });
    bool failed = false;
    ConfusionState total(opts.num_classes);
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!errors[i].empty()) {
        err << "error: " << errors[i] << "\n";
        failed = true;
      }
      total += parts[i];
    }
    if (failed) return int(kExitDataError);
    const IouReport report = iou_report(total);
    out << format_iou_table(report, "mIOU eval") << format("miou=%.6f\n", report.miou);
    if (!opts.out.empty()) {
      ensure_dir(opts.out);
      const std::string text = report_to_json(report).dump(2) + "\n";
      write_file_bytes(opts.out / "iou.json", std::vector<std::uint8_t>(text.begin(), text.end()));
    }
    return int(kExitOk);
  });
}

}  // namespace fgbg::maskctl

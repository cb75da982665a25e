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

// maskctl: foreground prior, masks, candidates, losses and evaluation over a
// dataset manifest.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.h"

namespace {

using fgbg::maskctl::Options;

void add_pipeline_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--manifest", o.manifest, "Dataset manifest (JSON)")->required();
  cmd->add_option("--config", o.config, "Pipeline config (JSON)");
  cmd->add_option("--iterations", o.iterations, "Mean-field iterations");
  cmd->add_option("--filter", o.filter, "Appearance filter: permutohedral or exact");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Foreground/background masks from weak supervision", "maskctl"};
  app.require_subcommand(1);
  Options o;

  auto* fuse = app.add_subcommand("fuse", "Fuse conv4/conv5 activations into heat maps");
  fuse->add_option("--manifest", o.manifest, "Dataset manifest (JSON)")->required();
  fuse->add_option("--out", o.out, "Output directory for <id>.fgbg heat maps")->required();

  auto* mask = app.add_subcommand("mask", "CRF-smoothed binary mask per image");
  add_pipeline_flags(mask, o);
  mask->add_option("--out", o.out, "Output directory for <id>.png masks")->required();
  mask->add_option("--heatmaps", o.heatmaps, "Use heat maps written by 'fuse'");

  auto* cands = app.add_subcommand("candidates", "Diverse mask candidates per image");
  add_pipeline_flags(cands, o);
  cands->add_option("--out", o.out, "Output directory, one subdirectory per image")->required();
  cands->add_option("--heatmaps", o.heatmaps, "Use heat maps written by 'fuse'");
  cands->add_option("--lambda", o.lambda, "Diversity weight");
  cands->add_option("--num-candidates", o.num_candidates, "Candidates per image");

  auto* loss = app.add_subcommand("loss", "Evaluate a loss and check its gradient");
  add_pipeline_flags(loss, o);
  loss->add_option("--variant", o.variant, "weak, mask, weak_alt or mask_alt")->required();
  loss->add_option("--masks", o.masks, "Mask directory laid out as <id>/mask.png");
  loss->add_option("--r", o.r, "LSE sharpness");
  loss->add_option("--check-samples", o.check_samples,
                   "Score entries probed per image (0 = all)");
  loss->add_option("--out", o.out, "Optional directory for loss.json");

  auto* eval = app.add_subcommand("eval", "Per-class IOU and mIOU");
  eval->add_option("--pred", o.pred_dir, "Predicted label PNGs")->required();
  eval->add_option("--gt", o.gt_dir, "Ground-truth label PNGs")->required();
  eval->add_option("--num-classes", o.num_classes, "Number of classes")->capture_default_str();
  eval->add_option("--out", o.out, "Optional directory for iou.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fgbg::maskctl::kExitUsage;
  }

  if (*fuse) return fgbg::maskctl::cmd_fuse(o, std::cout, std::cerr);
  if (*mask) return fgbg::maskctl::cmd_mask(o, std::cout, std::cerr);
  if (*cands) return fgbg::maskctl::cmd_candidates(o, std::cout, std::cerr);
  if (*loss) return fgbg::maskctl::cmd_loss(o, std::cout, std::cerr);
  return fgbg::maskctl::cmd_eval(o, std::cout, std::cerr);
}

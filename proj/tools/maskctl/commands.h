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

// maskctl subcommands, callable in-process. Each returns the process exit
// code and writes one summary line per image, in manifest order, to out.
// Diagnostics go to err.

#ifndef FGBG_TOOLS_MASKCTL_COMMANDS_H_
#define FGBG_TOOLS_MASKCTL_COMMANDS_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace fgbg::maskctl {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDataError = 2,
  kExitCheckFailed = 3,
};

// Activation layers fused into the foreground prior.
inline constexpr const char* kLayer4 = "conv4";
inline constexpr const char* kLayer5 = "conv5";

struct Options {
  std::filesystem::path manifest;
  std::optional<std::filesystem::path> config;
  std::filesystem::path out;

  // Overrides of the config file.
  std::optional<double> lambda;
  std::optional<int> num_candidates;
  std::optional<double> r;
  std::optional<int> iterations;
  std::optional<std::string> filter;

  // mask / candidates: read <heatmaps>/<id>.fgbg instead of fusing.
  std::optional<std::filesystem::path> heatmaps;

  // loss
  std::string variant;
  // Training layout <masks>/<id>/mask.png, as written by checkmask export.
  std::optional<std::filesystem::path> masks;
  // Score entries probed by finite differences per image; all entries when
  // the map is no larger.
  std::size_t check_samples = 64;

  // eval
  std::filesystem::path pred_dir;
  std::filesystem::path gt_dir;
  int num_classes = 21;
};

int cmd_fuse(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_mask(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_candidates(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_loss(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_eval(const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace fgbg::maskctl

#endif  // FGBG_TOOLS_MASKCTL_COMMANDS_H_

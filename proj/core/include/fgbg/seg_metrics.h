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

// Dataset-level intersection-over-union, PASCAL style: counts are summed
// over all images first, IOU is computed once at the end.

#ifndef FGBG_SEG_METRICS_H_
#define FGBG_SEG_METRICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fgbg/image.h"

namespace fgbg {

class ConfusionState {
 public:
  explicit ConfusionState(int num_classes);

  int num_classes() const { return int(tp_.size()); }
  std::uint64_t tp(int c) const { return tp_[c]; }
  std::uint64_t fp(int c) const { return fp_[c]; }
  std::uint64_t fn(int c) const { return fn_[c]; }
  // Non-ignored ground-truth pixels seen so far.
  std::uint64_t pixels() const { return pixels_; }

  void add(int pred, int gt);

  // Counter addition; kShapeMismatch when class counts differ.
  ConfusionState& operator+=(const ConfusionState& other);

  friend bool operator==(const ConfusionState&, const ConfusionState&) = default;

 private:
  std::vector<std::uint64_t> tp_, fp_, fn_;
  std::uint64_t pixels_ = 0;
};

// Pixels whose ground truth is LabelMask::kIgnore are skipped. kShapeMismatch
// on differing sizes, kLabelOutOfRange for labels >= num_classes (a predicted
// kIgnore is out of range too).
void confusion_accumulate(const LabelMask& pred, const LabelMask& gt, ConfusionState& state);

struct IouReport {
  // nullopt where TP + FP + FN = 0.
  std::vector<std::optional<double>> per_class;
  double miou = 0.0;
  int defined_classes = 0;
};

// kEmptyState when no class has a nonzero denominator.
IouReport iou_report(const ConfusionState& state);

nlohmann::json report_to_json(const IouReport& report);

// The 21 PASCAL VOC class names, background first.
const std::vector<std::string>& voc_class_names();

// One header line of class names and one line of percentages with mIOU last;
// VOC names for 21 classes, numeric ids otherwise.
std::string format_iou_table(const IouReport& report, const std::string& row_label = "IOU");

}  // namespace fgbg

#endif  // FGBG_SEG_METRICS_H_

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

#include "fgbg/seg_metrics.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "fgbg/error.h"

namespace fgbg {

ConfusionState::ConfusionState(int num_classes) {
  if (num_classes < 1 || num_classes > 255) {
    throw Error(ErrorCode::kInvalidArgument, "num_classes must lie in [1, 255]");
  }
  tp_.assign(std::size_t(num_classes), 0);
  fp_.assign(std::size_t(num_classes), 0);
  fn_.assign(std::size_t(num_classes), 0);
}

void ConfusionState::add(int pred, int gt) {
  ++pixels_;
  if (pred == gt) {
    ++tp_[pred];
  } else {
    ++fp_[pred];
    ++fn_[gt];
  }
}

ConfusionState& ConfusionState::operator+=(const ConfusionState& other) {
  if (other.num_classes() != num_classes()) {
    throw Error(ErrorCode::kShapeMismatch, "merging states with different class counts");
  }
  for (std::size_t c = 0; c < tp_.size(); ++c) {
    tp_[c] += other.tp_[c];
    fp_[c] += other.fp_[c];
    fn_[c] += other.fn_[c];
  }
  pixels_ += other.pixels_;
  return *this;
}

void confusion_accumulate(const LabelMask& pred, const LabelMask& gt, ConfusionState& state) {
  if (pred.width != gt.width || pred.height != gt.height) {
    throw Error(ErrorCode::kShapeMismatch,
                "prediction is " + std::to_string(pred.width) + "x" +
                    std::to_string(pred.height) + ", ground truth is " +
                    std::to_string(gt.width) + "x" + std::to_string(gt.height));
  }
  const int n = state.num_classes();
  // Validate first so a bad mask leaves the state untouched.
  for (std::size_t i = 0; i < gt.num_pixels(); ++i) {
    if (gt.labels[i] == LabelMask::kIgnore) continue;
    if (gt.labels[i] >= n || pred.labels[i] >= n) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  "label " + std::to_string(std::max(gt.labels[i], pred.labels[i])) + " with " +
                      std::to_string(n) + " classes");
    }
  }
  for (std::size_t i = 0; i < gt.num_pixels(); ++i) {
    if (gt.labels[i] == LabelMask::kIgnore) continue;
    state.add(pred.labels[i], gt.labels[i]);
  }
}

IouReport iou_report(const ConfusionState& state) {
  IouReport r;
  double sum = 0.0;
  for (int c = 0; c < state.num_classes(); ++c) {
    const std::uint64_t denom = state.tp(c) + state.fp(c) + state.fn(c);
    if (denom == 0) {
      r.per_class.push_back(std::nullopt);
      continue;
    }
    const double iou = double(state.tp(c)) / double(denom);
    r.per_class.push_back(iou);
    sum += iou;
    ++r.defined_classes;
  }
  if (r.defined_classes == 0) throw Error(ErrorCode::kEmptyState, "no pixels accumulated");
  r.miou = sum / r.defined_classes;
  return r;
}

nlohmann::json report_to_json(const IouReport& report) {
  nlohmann::json per_class = nlohmann::json::array();
  for (const auto& v : report.per_class) {
    per_class.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
  }
  return {{"per_class", per_class},
          {"miou", report.miou},
          {"defined_classes", report.defined_classes}};
}

const std::vector<std::string>& voc_class_names() {
  static const std::vector<std::string> names = {
      "bg",    "aero",  "bike",  "bird",   "boat",  "bottle", "bus",
      "car",   "cat",   "chair", "cow",    "table", "dog",    "horse",
      "mbike", "person", "plant", "sheep", "sofa",  "train",  "tv"};
  return names;
}

std::string format_iou_table(const IouReport& report, const std::string& row_label) {
  const int n = int(report.per_class.size());
  const bool voc = n == int(voc_class_names().size());
  const int label_w = std::max<int>(8, int(row_label.size()));
  std::ostringstream head, row;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%-*s", label_w, "");
  head << buf;
  std::snprintf(buf, sizeof buf, "%-*s", label_w, row_label.c_str());
  row << buf;
  for (int c = 0; c < n; ++c) {
    const std::string name = voc ? voc_class_names()[c] : std::to_string(c);
    std::snprintf(buf, sizeof buf, " %6s", name.c_str());
    head << buf;
    if (report.per_class[c]) {
      std::snprintf(buf, sizeof buf, " %6.1f", 100.0 * *report.per_class[c]);
    } else {
      std::snprintf(buf, sizeof buf, " %6s", "-");
    }
    row << buf;
  }
  std::snprintf(buf, sizeof buf, " %6s", "mIOU");
  head << buf;
  std::snprintf(buf, sizeof buf, " %6.1f", 100.0 * report.miou);
  row << buf;
  return head.str() + "\n" + row.str() + "\n";
}

}  // namespace fgbg

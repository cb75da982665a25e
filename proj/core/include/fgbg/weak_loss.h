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

// Weakly supervised segmentation losses on raw class scores.
//
// All losses apply a per-pixel softmax to the scores s[k, p] and return the
// loss value together with its exact gradient with respect to s. Pooling over
// pixel or class sets uses the log-sum-exp soft maximum
//
//   lse_r(v) = (1/r) log((1/n) sum_j exp(r v_j)).
//
// Notation below: P present classes, A absent classes, F = P \ {0} present
// foreground classes, I all pixels, M / M' foreground / background pixels of
// a binary mask. Means over empty sets are 0.
//
//   weak:      -mean_{k in P} log lse_I(S_k) - mean_{k in A} log(1 - lse_I(S_k))
//   mask:      -mean_{k in F} log lse_M(S_k) - log lse_M'(S_0)
//              - 1/(|A||I|) sum_{p, k in A} log(1 - S_k(p))
//   weak_alt:  -1/|I| sum_p log lse_P(S(p)) - 1/|I| sum_{p, k in A} log(1 - S_k(p))
//   mask_alt:  -1/|M| sum_{p in M} log lse_F(S(p)) - 1/|M'| sum_{p in M'} log S_0(p)
//              - 1/|I| sum_{p, k in A} log(1 - S_k(p))

#ifndef FGBG_WEAK_LOSS_H_
#define FGBG_WEAK_LOSS_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "fgbg/image.h"
#include "fgbg/tags.h"
#include "fgbg/tensor.h"

namespace fgbg {

// Class-major N x H x W map in double precision: values[k * H * W + y * W + x].
struct ScoreMap {
  int num_classes = 0;
  int height = 0;
  int width = 0;
  std::vector<double> values;

  ScoreMap() = default;
  ScoreMap(int n, int h, int w, double fill = 0.0)
      : num_classes(n), height(h), width(w), values(std::size_t(n) * h * w, fill) {}

  std::size_t num_pixels() const { return std::size_t(height) * width; }
  double& at(int k, std::size_t p) { return values[std::size_t(k) * num_pixels() + p]; }
  double at(int k, std::size_t p) const { return values[std::size_t(k) * num_pixels() + p]; }

  // kInvalidShape unless t has rank 3.
  static ScoreMap from_tensor(const Tensor& t);
  Tensor to_tensor() const;
};

// Softmax probabilities, same layout as the scores.
using ProbMap = ScoreMap;

struct LossConfig {
  double r = 5.0;

  void validate() const;

  friend bool operator==(const LossConfig&, const LossConfig&) = default;
};

struct LossReport {
  double value = 0.0;
  ScoreMap grad;
};

enum class LossVariant { kWeak, kMask, kWeakAlt, kMaskAlt };

std::string_view variant_name(LossVariant v);
// kInvalidArgument on anything but weak, mask, weak_alt, mask_alt.
LossVariant parse_variant(std::string_view name);
bool variant_needs_mask(LossVariant v);

ProbMap softmax_probs(const ScoreMap& s);

// kEmptySet for an empty set, kInvalidArgument unless r is finite and > 0.
double lse_pool(std::span<const double> values, double r);

LossReport loss_weak_tags(const ScoreMap& s, const TagSet& tags, const LossConfig& cfg);
// mask: binary, 0 background / 1 foreground, width x height of the scores.
// kMissingBackgroundTag, kEmptyForeground, kEmptyBackground, kShapeMismatch.
LossReport loss_mask(const ScoreMap& s, const TagSet& tags, const LabelMask& mask,
                     const LossConfig& cfg);
LossReport loss_weak_alt(const ScoreMap& s, const TagSet& tags, const LossConfig& cfg);
LossReport loss_mask_alt(const ScoreMap& s, const TagSet& tags, const LabelMask& mask,
                         const LossConfig& cfg);

// Dispatch on variant; mask is ignored by the tag-only variants.
LossReport evaluate_loss(LossVariant variant, const ScoreMap& s, const TagSet& tags,
                         const LabelMask* mask, const LossConfig& cfg);

struct GradientCheck {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
};

// Compares grad against central differences (f(s + h e) - f(s - h e)) / 2h at
// the given flat indices (all indices when empty). The relative error of one
// entry is |a - n| / max(|a|, |n|, floor); entries where both are exactly 0
// count as 0.
GradientCheck check_gradient(const std::function<double(const ScoreMap&)>& f,
                             const ScoreMap& s, const ScoreMap& grad, double h,
                             std::span<const std::size_t> indices = {}, double floor = 0.0);

}  // namespace fgbg

#endif  // FGBG_WEAK_LOSS_H_

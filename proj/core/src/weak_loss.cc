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

#include "fgbg/weak_loss.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fgbg/error.h"

namespace fgbg {
namespace {

// Probabilities entering log(1 - S) are clamped here.
constexpr double kMaxProb = 1.0 - 1e-12;
// And those entering log(S) are kept off zero.
constexpr double kMinProb = std::numeric_limits<double>::min();

// -log(x) and its derivative with respect to x.
struct NegLog {
  double value;
  double deriv;
};

NegLog neg_log(double x) {
  if (x <= kMinProb) return {-std::log(kMinProb), 0.0};
  return {-std::log(x), -1.0 / x};
}

NegLog neg_log1m(double x) {
  if (x >= kMaxProb) return {-std::log1p(-kMaxProb), 0.0};
  return {-std::log1p(-x), 1.0 / (1.0 - x)};
}

// lse_r over values; weights receives d lse / d v_j = softmax(r v)_j.
double lse_with_weights(std::span<const double> v, double r, std::vector<double>& weights) {
  const double m = *std::max_element(v.begin(), v.end());
  weights.resize(v.size());
  double z = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    weights[j] = std::exp(r * (v[j] - m));
    z += weights[j];
  }
  for (double& w : weights) w /= z;
  return m + std::log(z / double(v.size())) / r;
}

void check_scores(const ScoreMap& s, const TagSet& tags) {
  if (s.num_classes <= 0 || s.height <= 0 || s.width <= 0 ||
      s.values.size() != std::size_t(s.num_classes) * s.num_pixels()) {
    throw Error(ErrorCode::kInvalidShape, "malformed score map");
  }
  if (tags.num_classes() != s.num_classes) {
    throw Error(ErrorCode::kShapeMismatch,
                "tag set has " + std::to_string(tags.num_classes()) + " classes, scores have " +
                    std::to_string(s.num_classes));
  }
  for (double v : s.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteValue, "score is not finite");
  }
}

// Foreground pixel indices (first) and background ones (second).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_mask(
    const ScoreMap& s, const TagSet& tags, const LabelMask& mask) {
  if (!tags.has_background()) {
    throw Error(ErrorCode::kMissingBackgroundTag, "background class 0 must be tagged present");
  }
  if (mask.width != s.width || mask.height != s.height) {
    throw Error(ErrorCode::kShapeMismatch, "mask is " + std::to_string(mask.width) + "x" +
                                               std::to_string(mask.height) + ", scores are " +
                                               std::to_string(s.width) + "x" +
                                               std::to_string(s.height));
  }
  std::vector<std::size_t> fg, bg;
  for (std::size_t p = 0; p < mask.num_pixels(); ++p) {
    const std::uint8_t l = mask.labels[p];
    if (l > 1) throw Error(ErrorCode::kLabelOutOfRange, "mask must be binary");
    (l ? fg : bg).push_back(p);
  }
  if (fg.empty()) throw Error(ErrorCode::kEmptyForeground, "mask has no foreground pixel");
  if (bg.empty()) throw Error(ErrorCode::kEmptyBackground, "mask has no background pixel");
  return {std::move(fg), std::move(bg)};
}

// Adds c * sum_{p, k in A} -log(1 - S_k(p)) to *value and its gradient to g.
void absent_pixel_term(const ProbMap& S, const TagSet& tags, double c, double* value,
                       ScoreMap& g) {
  for (int k : tags.absent()) {
    for (std::size_t p = 0; p < S.num_pixels(); ++p) {
      const NegLog t = neg_log1m(S.at(k, p));
      *value += c * t.value;
      g.at(k, p) += c * t.deriv;
    }
  }
}

// Turns dL/dS into dL/ds through the per-pixel softmax Jacobian.
ScoreMap softmax_backward(const ProbMap& S, const ScoreMap& g) {
  ScoreMap out(S.num_classes, S.height, S.width);
  for (std::size_t p = 0; p < S.num_pixels(); ++p) {
    double dot = 0.0;
    for (int c = 0; c < S.num_classes; ++c) dot += g.at(c, p) * S.at(c, p);
    for (int k = 0; k < S.num_classes; ++k) out.at(k, p) = S.at(k, p) * (g.at(k, p) - dot);
  }
  return out;
}

}  // namespace

ScoreMap ScoreMap::from_tensor(const Tensor& t) {
  if (t.rank() != 3) {
    throw Error(ErrorCode::kInvalidShape,
                "score tensor must be rank 3, got rank " + std::to_string(t.rank()));
  }
  ScoreMap s(int(t.dim(0)), int(t.dim(1)), int(t.dim(2)));
  const auto v = t.values();
  std::copy(v.begin(), v.end(), s.values.begin());
  return s;
}

Tensor ScoreMap::to_tensor() const {
  std::vector<float> v(values.begin(), values.end());
  return Tensor({std::size_t(num_classes), std::size_t(height), std::size_t(width)},
                std::move(v));
}

void LossConfig::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::kInvalidArgument, "r must be finite and > 0");
  }
}

std::string_view variant_name(LossVariant v) {
  switch (v) {
    case LossVariant::kWeak:
      return "weak";
    case LossVariant::kMask:
      return "mask";
    case LossVariant::kWeakAlt:
      return "weak_alt";
    case LossVariant::kMaskAlt:
      return "mask_alt";
  }
  return "unknown";
}

LossVariant parse_variant(std::string_view name) {
  for (LossVariant v : {LossVariant::kWeak, LossVariant::kMask, LossVariant::kWeakAlt,
                        LossVariant::kMaskAlt}) {
    if (variant_name(v) == name) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown loss variant '" + std::string(name) + "'");
}

bool variant_needs_mask(LossVariant v) {
  return v == LossVariant::kMask || v == LossVariant::kMaskAlt;
}

ProbMap softmax_probs(const ScoreMap& s) {
  ProbMap out(s.num_classes, s.height, s.width);
  for (std::size_t p = 0; p < s.num_pixels(); ++p) {
    double m = s.at(0, p);
    for (int k = 1; k < s.num_classes; ++k) m = std::max(m, s.at(k, p));
    double z = 0.0;
    for (int k = 0; k < s.num_classes; ++k) {
      out.at(k, p) = std::exp(s.at(k, p) - m);
      z += out.at(k, p);
    }
    for (int k = 0; k < s.num_classes; ++k) out.at(k, p) /= z;
  }
  return out;
}

double lse_pool(std::span<const double> values, double r) {
  if (values.empty()) throw Error(ErrorCode::kEmptySet, "lse_pool over an empty set");
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::kInvalidArgument, "r must be > 0");
  std::vector<double> w;
  return lse_with_weights(values, r, w);
}

LossReport loss_weak_tags(const ScoreMap& s, const TagSet& tags, const LossConfig& cfg) {
  cfg.validate();
  check_scores(s, tags);
  const ProbMap S = softmax_probs(s);
  const std::size_t n = S.num_pixels();
  ScoreMap g(S.num_classes, S.height, S.width);
  double value = 0.0;
  std::vector<double> w;
  auto pooled_term = [&](int k, double c, bool present) {
    const std::span<const double> row(&S.values[std::size_t(k) * n], n);
    const double pooled = lse_with_weights(row, cfg.r, w);
    const NegLog t = present ? neg_log(pooled) : neg_log1m(pooled);
    value += c * t.value;
    for (std::size_t p = 0; p < n; ++p) g.at(k, p) += c * t.deriv * w[p];
  };
  for (int k : tags.present()) pooled_term(k, 1.0 / double(tags.present().size()), true);
  for (int k : tags.absent()) pooled_term(k, 1.0 / double(tags.absent().size()), false);
  return {value, softmax_backward(S, g)};
}

LossReport loss_mask(const ScoreMap& s, const TagSet& tags, const LabelMask& mask,
                     const LossConfig& cfg) {
  cfg.validate();
  check_scores(s, tags);
  const auto [fg, bg] = split_mask(s, tags, mask);
  const ProbMap S = softmax_probs(s);
  ScoreMap g(S.num_classes, S.height, S.width);
  double value = 0.0;
  std::vector<double> v, w;
  auto pooled_term = [&](int k, const std::vector<std::size_t>& pixels, double c) {
    v.clear();
    for (std::size_t p : pixels) v.push_back(S.at(k, p));
    const NegLog t = neg_log(lse_with_weights(v, cfg.r, w));
    value += c * t.value;
    for (std::size_t j = 0; j < pixels.size(); ++j) g.at(k, pixels[j]) += c * t.deriv * w[j];
  };
  const std::size_t num_fg_classes = tags.present().size() - 1;
  for (int k : tags.present()) {
    if (k != 0) pooled_term(k, fg, 1.0 / double(num_fg_classes));
  }
  pooled_term(0, bg, 1.0);
  if (!tags.absent().empty()) {
    absent_pixel_term(S, tags, 1.0 / (double(tags.absent().size()) * double(S.num_pixels())),
                      &value, g);
  }
  return {value, softmax_backward(S, g)};
}

LossReport loss_weak_alt(const ScoreMap& s, const TagSet& tags, const LossConfig& cfg) {
  cfg.validate();
  check_scores(s, tags);
  const ProbMap S = softmax_probs(s);
  const std::size_t n = S.num_pixels();
  const double c = 1.0 / double(n);
  ScoreMap g(S.num_classes, S.height, S.width);
  double value = 0.0;
  std::vector<double> v, w;
  for (std::size_t p = 0; p < n; ++p) {
    v.clear();
    for (int k : tags.present()) v.push_back(S.at(k, p));
    const NegLog t = neg_log(lse_with_weights(v, cfg.r, w));
    value += c * t.value;
    for (std::size_t j = 0; j < v.size(); ++j) g.at(tags.present()[j], p) += c * t.deriv * w[j];
  }
  absent_pixel_term(S, tags, c, &value, g);
  return {value, softmax_backward(S, g)};
}

LossReport loss_mask_alt(const ScoreMap& s, const TagSet& tags, const LabelMask& mask,
                         const LossConfig& cfg) {
  cfg.validate();
  check_scores(s, tags);
  const auto [fg, bg] = split_mask(s, tags, mask);
  const ProbMap S = softmax_probs(s);
  ScoreMap g(S.num_classes, S.height, S.width);
  double value = 0.0;
  std::vector<int> fg_classes;
  for (int k : tags.present()) {
    if (k != 0) fg_classes.push_back(k);
  }
  std::vector<double> v, w;
  if (!fg_classes.empty()) {
    const double c = 1.0 / double(fg.size());
    for (std::size_t p : fg) {
      v.clear();
      for (int k : fg_classes) v.push_back(S.at(k, p));
      const NegLog t = neg_log(lse_with_weights(v, cfg.r, w));
      value += c * t.value;
      for (std::size_t j = 0; j < v.size(); ++j) g.at(fg_classes[j], p) += c * t.deriv * w[j];
    }
  }
  const double cb = 1.0 / double(bg.size());
  for (std::size_t p : bg) {
    const NegLog t = neg_log(S.at(0, p));
    value += cb * t.value;
    g.at(0, p) += cb * t.deriv;
  }
  absent_pixel_term(S, tags, 1.0 / double(S.num_pixels()), &value, g);
  return {value, softmax_backward(S, g)};
}

LossReport evaluate_loss(LossVariant variant, const ScoreMap& s, const TagSet& tags,
                         const LabelMask* mask, const LossConfig& cfg) {
  if (variant_needs_mask(variant) && mask == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(variant_name(variant)) + " loss needs a mask");
  }
  switch (variant) {
    case LossVariant::kWeak:
      return loss_weak_tags(s, tags, cfg);
    case LossVariant::kMask:
      return loss_mask(s, tags, *mask, cfg);
    case LossVariant::kWeakAlt:
      return loss_weak_alt(s, tags, cfg);
    case LossVariant::kMaskAlt:
      return loss_mask_alt(s, tags, *mask, cfg);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown loss variant");
}

GradientCheck check_gradient(const std::function<double(const ScoreMap&)>& f,
                             const ScoreMap& s, const ScoreMap& grad, double h,
                             std::span<const std::size_t> indices, double floor) {
  if (grad.values.size() != s.values.size()) {
    throw Error(ErrorCode::kShapeMismatch, "gradient and scores differ in size");
  }
  GradientCheck result;
  ScoreMap probe = s;
  auto check_one = [&](std::size_t idx) {
    const double orig = probe.values[idx];
    probe.values[idx] = orig + h;
    const double up = f(probe);
    probe.values[idx] = orig - h;
    const double down = f(probe);
    probe.values[idx] = orig;
    const double numeric = (up - down) / (2.0 * h);
    const double analytic = grad.values[idx];
    const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
    if (denom > 0.0) {
      result.max_relative_error =
          std::max(result.max_relative_error, std::abs(analytic - numeric) / denom);
    }
    ++result.checked;
  };
  if (indices.empty()) {
    for (std::size_t i = 0; i < s.values.size(); ++i) check_one(i);
  } else {
    for (std::size_t i : indices) {
      if (i >= s.values.size()) throw Error(ErrorCode::kIndexOutOfRange, "gradient index");
      check_one(i);
    }
  }
  return result;
}

}  // namespace fgbg

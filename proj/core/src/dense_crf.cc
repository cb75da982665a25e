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

#include "fgbg/dense_crf.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fgbg/error.h"
#include "fgbg/permutohedral.h"

namespace fgbg {
namespace {

// Beyond this many taps per side the separable pass costs more than the
// lattice; fall back to it.
constexpr int kMaxSeparableRadius = 128;

void check_same_size(int w, int h, const RgbImage& image, const char* what) {
  if (w != image.width || h != image.height) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(what) + " is " + std::to_string(w) + "x" + std::to_string(h) +
                    ", image is " + std::to_string(image.width) + "x" +
                    std::to_string(image.height));
  }
}

void check_finite(const UnaryField& u) {
  for (double c : u.cost) {
    if (!std::isfinite(c)) throw Error(ErrorCode::kNonFiniteValue, "unary cost is not finite");
  }
}

void check_labels(const LabelMask& x, int num_labels) {
  for (std::uint8_t l : x.labels) {
    if (l >= num_labels) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  "label " + std::to_string(l) + " with " + std::to_string(num_labels) +
                      " labels");
    }
  }
}

// In-place normalized exp(-e) over each pixel's num_labels entries.
void normalize_exp_neg(std::vector<double>& e, int num_labels) {
  const std::size_t L = std::size_t(num_labels);
  for (std::size_t base = 0; base < e.size(); base += L) {
    double lo = e[base];
    for (std::size_t l = 1; l < L; ++l) lo = std::min(lo, e[base + l]);
    double z = 0.0;
    for (std::size_t l = 0; l < L; ++l) {
      e[base + l] = std::exp(lo - e[base + l]);
      z += e[base + l];
    }
    for (std::size_t l = 0; l < L; ++l) e[base + l] /= z;
  }
}

}  // namespace

void PairwiseConfig::validate() const {
  if (!(w_app >= 0.0) || !(w_smooth >= 0.0) || !std::isfinite(w_app) ||
      !std::isfinite(w_smooth)) {
    throw Error(ErrorCode::kInvalidArgument, "pairwise weights must be finite and >= 0");
  }
  for (double t : {theta_alpha, theta_beta, theta_gamma}) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw Error(ErrorCode::kInvalidArgument, "kernel bandwidths must be finite and > 0");
    }
  }
  if (iterations < 1) throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 1");
}

double PairwiseConfig::kernel(double dx, double dy, const std::uint8_t* rgb_i,
                              const std::uint8_t* rgb_j) const {
  const double pos2 = dx * dx + dy * dy;
  double col2 = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double d = double(rgb_i[c]) - double(rgb_j[c]);
    col2 += d * d;
  }
  return w_app * std::exp(-pos2 / (2 * theta_alpha * theta_alpha) -
                          col2 / (2 * theta_beta * theta_beta)) +
         w_smooth * std::exp(-pos2 / (2 * theta_gamma * theta_gamma));
}

UnaryField unary_from_heatmap(const HeatMap& heat, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in (0, 0.5)");
  }
  UnaryField u(2, heat.width, heat.height);
  for (std::size_t i = 0; i < heat.num_pixels(); ++i) {
    const double v = heat.values[i];
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteValue, "heat map value");
    const double p = std::clamp(v, epsilon, 1.0 - epsilon);
    u.at(i, 0) = -std::log1p(-p);
    u.at(i, 1) = -std::log(p);
  }
  return u;
}

double unary_energy(const LabelMask& x, const UnaryField& unary) {
  if (x.width != unary.width || x.height != unary.height) {
    throw Error(ErrorCode::kShapeMismatch, "labeling and unary field differ in size");
  }
  check_labels(x, unary.num_labels);
  double e = 0.0;
  for (std::size_t i = 0; i < x.num_pixels(); ++i) e += unary.at(i, x.labels[i]);
  return e;
}

double gibbs_energy(const LabelMask& x, const UnaryField& unary, const RgbImage& image,
                    const PairwiseConfig& cfg) {
  check_same_size(unary.width, unary.height, image, "unary field");
  double energy = unary_energy(x, unary);
  const int w = x.width;
  const std::size_t n = x.num_pixels();
  double pair = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x.labels[i] == x.labels[j]) continue;
      const double dx = double(int(i % w) - int(j % w));
      const double dy = double(int(i / w) - int(j / w));
      pair += cfg.kernel(dx, dy, image.pixel(i), image.pixel(j));
    }
  }
  return energy + pair;
}

std::vector<double> direct_messages(const RgbImage& image, const PairwiseConfig& cfg,
                                    const BeliefField& q) {
  check_same_size(q.width, q.height, image, "belief field");
  const std::size_t n = q.num_pixels();
  const std::size_t L = std::size_t(q.num_labels);
  const int w = q.width;
  std::vector<double> mass(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < L; ++l) mass[j] += q.q[j * L + l];
  }
  std::vector<double> msg(n * L, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dx = double(int(i % w) - int(j % w));
      const double dy = double(int(i / w) - int(j / w));
      const double k = cfg.kernel(dx, dy, image.pixel(i), image.pixel(j));
      for (std::size_t l = 0; l < L; ++l) msg[i * L + l] += k * (mass[j] - q.q[j * L + l]);
    }
  }
  return msg;
}

std::string_view backend_name(FilterBackend backend) {
  switch (backend) {
    case FilterBackend::kPermutohedral:
      return "permutohedral";
    case FilterBackend::kExact:
      return "exact";
  }
  return "unknown";
}

FilterBackend parse_backend(std::string_view name) {
  if (name == "permutohedral") return FilterBackend::kPermutohedral;
  if (name == "exact") return FilterBackend::kExact;
  throw Error(ErrorCode::kInvalidArgument, "unknown filter backend '" + std::string(name) + "'");
}

PairwiseMessenger::PairwiseMessenger(const RgbImage& image, const PairwiseConfig& cfg,
                                     FilterBackend backend)
    : width_(image.width), height_(image.height), w_app_(cfg.w_app), w_smooth_(cfg.w_smooth) {
  cfg.validate();
  if (image.width <= 0 || image.height <= 0) {
    throw Error(ErrorCode::kInvalidShape, "empty image");
  }
  if (w_app_ > 0.0) {
    auto f = appearance_features(image, cfg.theta_alpha, cfg.theta_beta);
    if (backend == FilterBackend::kExact) {
      appearance_ = std::make_unique<DirectGaussianFilter>(std::move(f), 5);
    } else {
      appearance_ = std::make_unique<PermutohedralLattice>(f, 5);
    }
  }
  if (w_smooth_ > 0.0) {
    if (separable_radius(cfg.theta_gamma) <= kMaxSeparableRadius ||
        backend == FilterBackend::kExact) {
      smoothness_ = std::make_unique<SeparableGridFilter>(width_, height_, cfg.theta_gamma);
    } else {
      smoothness_ = std::make_unique<PermutohedralLattice>(
          spatial_features(width_, height_, cfg.theta_gamma), 2);
    }
  }
}

PairwiseMessenger::~PairwiseMessenger() = default;
PairwiseMessenger::PairwiseMessenger(PairwiseMessenger&&) noexcept = default;
PairwiseMessenger& PairwiseMessenger::operator=(PairwiseMessenger&&) noexcept = default;

std::vector<double> PairwiseMessenger::messages(const BeliefField& q) const {
  if (q.width != width_ || q.height != height_) {
    throw Error(ErrorCode::kShapeMismatch, "belief field and messenger differ in size");
  }
  const std::size_t L = std::size_t(q.num_labels);
  const std::size_t n = q.num_pixels();
  // filtered[i, l] = sum_{j != i} k_ij q_j(l); the filters include the self
  // term with unit weight, removed here.
  std::vector<double> filtered(n * L, 0.0);
  std::vector<double> tmp(n * L);
  if (appearance_) {
    appearance_->apply(q.q, int(L), tmp);
    for (std::size_t k = 0; k < n * L; ++k) filtered[k] += w_app_ * (tmp[k] - q.q[k]);
  }
  if (smoothness_) {
    smoothness_->apply(q.q, int(L), tmp);
    for (std::size_t k = 0; k < n * L; ++k) filtered[k] += w_smooth_ * (tmp[k] - q.q[k]);
  }
  std::vector<double> msg(n * L);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t l = 0; l < L; ++l) total += filtered[i * L + l];
    for (std::size_t l = 0; l < L; ++l) msg[i * L + l] = total - filtered[i * L + l];
  }
  return msg;
}

double PairwiseMessenger::pairwise_energy(const LabelMask& x, int num_labels) const {
  if (x.width != width_ || x.height != height_) {
    throw Error(ErrorCode::kShapeMismatch, "labeling and messenger differ in size");
  }
  check_labels(x, num_labels);
  BeliefField onehot(num_labels, width_, height_);
  for (std::size_t i = 0; i < x.num_pixels(); ++i) onehot.at(i, x.labels[i]) = 1.0;
  const auto msg = messages(onehot);
  // Each disagreeing pair is seen from both ends.
  double e = 0.0;
  for (std::size_t i = 0; i < x.num_pixels(); ++i) {
    e += msg[i * std::size_t(num_labels) + x.labels[i]];
  }
  return 0.5 * e;
}

BeliefField softmax_negative_cost(const UnaryField& unary) {
  BeliefField b(unary.num_labels, unary.width, unary.height);
  b.q = unary.cost;
  normalize_exp_neg(b.q, unary.num_labels);
  return b;
}

BeliefField mean_field_infer(const UnaryField& unary, const PairwiseMessenger& messenger,
                             int iterations,
                             const std::function<void(int, const BeliefField&)>& on_iteration) {
  if (unary.width != messenger.width() || unary.height != messenger.height()) {
    throw Error(ErrorCode::kShapeMismatch, "unary field and image differ in size");
  }
  if (unary.num_labels < 1) throw Error(ErrorCode::kInvalidShape, "no labels");
  if (iterations < 1) throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 1");
  check_finite(unary);
  BeliefField q = softmax_negative_cost(unary);
  for (int it = 1; it <= iterations; ++it) {
    auto e = messenger.messages(q);
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += unary.cost[k];
    normalize_exp_neg(e, unary.num_labels);
    q.q = std::move(e);
    if (on_iteration) on_iteration(it, q);
  }
  return q;
}

BeliefField mean_field_infer(const UnaryField& unary, const RgbImage& image,
                             const PairwiseConfig& cfg, const MeanFieldOptions& options) {
  check_same_size(unary.width, unary.height, image, "unary field");
  const PairwiseMessenger messenger(image, cfg, options.backend);
  return mean_field_infer(unary, messenger, cfg.iterations, options.on_iteration);
}

LabelMask map_labels(const BeliefField& belief) {
  LabelMask out(belief.width, belief.height);
  const std::size_t L = std::size_t(belief.num_labels);
  for (std::size_t i = 0; i < belief.num_pixels(); ++i) {
    std::size_t best = 0;
    for (std::size_t l = 1; l < L; ++l) {
      if (belief.q[i * L + l] > belief.q[i * L + best]) best = l;
    }
    out.labels[i] = std::uint8_t(best);
  }
  return out;
}

}  // namespace fgbg

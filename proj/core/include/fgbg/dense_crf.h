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

// Fully connected CRF with a contrast-sensitive Potts pairwise term.
//
// For a labeling x of the pixels of an image,
//
//   E(x) = sum_i cost_i(x_i) + sum_{i<j} [x_i != x_j] k_ij
//
//   k_ij = w_app    * exp(-|p_i - p_j|^2 / 2 theta_alpha^2
//                         -|c_i - c_j|^2 / 2 theta_beta^2)
//        + w_smooth * exp(-|p_i - p_j|^2 / 2 theta_gamma^2)
//
// with p pixel positions and c RGB colors. Mean-field inference updates all
// pixels in parallel; the pairwise messages are computed by Gaussian
// filtering rather than by summing over pairs.

#ifndef FGBG_DENSE_CRF_H_
#define FGBG_DENSE_CRF_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fgbg/gaussian_filter.h"
#include "fgbg/image.h"

namespace fgbg {

struct PairwiseConfig {
  double w_app = 10.0;
  double theta_alpha = 80.0;  // pixels
  double theta_beta = 13.0;   // intensity units
  double w_smooth = 3.0;
  double theta_gamma = 3.0;   // pixels
  int iterations = 10;

  // kInvalidArgument unless weights >= 0, bandwidths > 0, iterations >= 1.
  void validate() const;

  // Kernel value k_ij between two pixels.
  double kernel(double dx, double dy, const std::uint8_t* rgb_i,
                const std::uint8_t* rgb_j) const;

  friend bool operator==(const PairwiseConfig&, const PairwiseConfig&) = default;
};

// Per-pixel, per-label costs (negative log-probabilities). Layout
// cost[pixel * num_labels + label].
struct UnaryField {
  int num_labels = 0;
  int width = 0;
  int height = 0;
  std::vector<double> cost;

  UnaryField() = default;
  UnaryField(int labels, int w, int h)
      : num_labels(labels), width(w), height(h),
        cost(std::size_t(labels) * w * h, 0.0) {}

  std::size_t num_pixels() const { return std::size_t(width) * height; }
  double& at(std::size_t pixel, int label) { return cost[pixel * num_labels + label]; }
  double at(std::size_t pixel, int label) const { return cost[pixel * num_labels + label]; }
};

// Per-pixel label distributions, same layout as UnaryField.
struct BeliefField {
  int num_labels = 0;
  int width = 0;
  int height = 0;
  std::vector<double> q;

  BeliefField() = default;
  BeliefField(int labels, int w, int h)
      : num_labels(labels), width(w), height(h),
        q(std::size_t(labels) * w * h, 0.0) {}

  std::size_t num_pixels() const { return std::size_t(width) * height; }
  double& at(std::size_t pixel, int label) { return q[pixel * num_labels + label]; }
  double at(std::size_t pixel, int label) const { return q[pixel * num_labels + label]; }
};

// Binary unary field from a foreground heat map: label 1 (foreground) costs
// -log p and label 0 (background) costs -log(1 - p), with p clamped to
// [epsilon, 1 - epsilon]. kInvalidArgument unless 0 < epsilon < 0.5.
UnaryField unary_from_heatmap(const HeatMap& heat, double epsilon = 1e-6);

// Energy of labeling x by direct summation over all pixel pairs. O(N^2);
// used as a reference and on small problems only. kShapeMismatch if the
// shapes of x, unary and image disagree.
double gibbs_energy(const LabelMask& x, const UnaryField& unary, const RgbImage& image,
                    const PairwiseConfig& cfg);

// Sum of unary costs of labeling x.
double unary_energy(const LabelMask& x, const UnaryField& unary);

// Direct O(N^2) pairwise messages,
//   message[i * L + l] = sum_{j != i} k_ij * sum_{l' != l} q_j(l').
std::vector<double> direct_messages(const RgbImage& image, const PairwiseConfig& cfg,
                                    const BeliefField& q);

enum class FilterBackend {
  // Appearance kernel on the permutohedral lattice (approximate, O(N)),
  // smoothness kernel by exact separable convolution.
  kPermutohedral,
  // Appearance kernel by exact O(N^2) summation, smoothness kernel by exact
  // separable convolution.
  kExact,
};

std::string_view backend_name(FilterBackend backend);
// kInvalidArgument on an unknown name.
FilterBackend parse_backend(std::string_view name);

// Computes the same messages as direct_messages through Gaussian filters.
// The filters are built once per image and reused across iterations.
class PairwiseMessenger {
 public:
  PairwiseMessenger(const RgbImage& image, const PairwiseConfig& cfg,
                    FilterBackend backend = FilterBackend::kPermutohedral);
  ~PairwiseMessenger();
  PairwiseMessenger(PairwiseMessenger&&) noexcept;
  PairwiseMessenger& operator=(PairwiseMessenger&&) noexcept;

  int width() const { return width_; }
  int height() const { return height_; }

  std::vector<double> messages(const BeliefField& q) const;

  // sum_{i<j} [x_i != x_j] k_ij evaluated with the same filters.
  double pairwise_energy(const LabelMask& x, int num_labels) const;

 private:
  int width_;
  int height_;
  double w_app_;
  double w_smooth_;
  std::unique_ptr<GaussianFilter> appearance_;
  std::unique_ptr<GaussianFilter> smoothness_;
};

// Softmax of the negative costs at every pixel.
BeliefField softmax_negative_cost(const UnaryField& unary);

struct MeanFieldOptions {
  FilterBackend backend = FilterBackend::kPermutohedral;
  // Called after every update with the 1-based iteration index.
  std::function<void(int, const BeliefField&)> on_iteration;
};

// Mean-field inference with a prebuilt messenger; runs exactly
// cfg.iterations synchronous updates starting from softmax(-cost).
BeliefField mean_field_infer(const UnaryField& unary, const PairwiseMessenger& messenger,
                             int iterations,
                             const std::function<void(int, const BeliefField&)>& on_iteration = {});

// Convenience overload building the messenger. kShapeMismatch when unary and
// image sizes disagree.
BeliefField mean_field_infer(const UnaryField& unary, const RgbImage& image,
                             const PairwiseConfig& cfg, const MeanFieldOptions& options = {});

// Per-pixel argmax of q; ties go to the smaller label.
LabelMask map_labels(const BeliefField& belief);

}  // namespace fgbg

#endif  // FGBG_DENSE_CRF_H_

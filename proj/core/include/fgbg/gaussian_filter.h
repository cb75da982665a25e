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

// High-dimensional Gaussian filtering over a fixed point set. Every filter
// evaluates
//
//   out[i] = sum_j exp(-|f_i - f_j|^2 / 2) * in[j]
//
// for value vectors of `value_dim` doubles per point, where f are feature
// vectors already divided by their bandwidths. The self term j == i is
// included (weight 1).

#ifndef FGBG_GAUSSIAN_FILTER_H_
#define FGBG_GAUSSIAN_FILTER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "fgbg/image.h"

namespace fgbg {

class GaussianFilter {
 public:
  virtual ~GaussianFilter() = default;

  virtual std::size_t num_points() const = 0;

  // in and out hold num_points() * value_dim values, point-major. in and out
  // must not alias.
  virtual void apply(std::span<const double> in, int value_dim,
                     std::span<double> out) const = 0;
};

// Exact O(N^2) summation. Reference implementation; usable as a backend on
// small images.
class DirectGaussianFilter final : public GaussianFilter {
 public:
  DirectGaussianFilter(std::vector<double> features, int feature_dim);

  std::size_t num_points() const override { return num_points_; }
  void apply(std::span<const double> in, int value_dim,
             std::span<double> out) const override;

 private:
  std::vector<double> features_;
  int feature_dim_;
  std::size_t num_points_;
};

// Exact filtering for the purely spatial kernel exp(-|p_i - p_j|^2 / 2s^2)
// on a width x height pixel grid, as two 1-D passes. The kernel is truncated
// where it falls below 1e-17 of its peak.
class SeparableGridFilter final : public GaussianFilter {
 public:
  SeparableGridFilter(int width, int height, double sigma);

  std::size_t num_points() const override { return std::size_t(width_) * height_; }
  void apply(std::span<const double> in, int value_dim,
             std::span<double> out) const override;

  int radius() const { return radius_; }

 private:
  int width_;
  int height_;
  int radius_;
  std::vector<double> taps_;  // taps_[k] = exp(-k^2 / 2s^2), k = 0..radius
};

// Truncation radius SeparableGridFilter uses for bandwidth sigma.
int separable_radius(double sigma);

// Feature vectors (x / theta_xy, y / theta_xy, r / theta_rgb, g / theta_rgb,
// b / theta_rgb) per pixel, point-major.
std::vector<double> appearance_features(const RgbImage& image, double theta_xy,
                                        double theta_rgb);

// (x / theta, y / theta) per pixel of a width x height grid.
std::vector<double> spatial_features(int width, int height, double theta);

}  // namespace fgbg

#endif  // FGBG_GAUSSIAN_FILTER_H_

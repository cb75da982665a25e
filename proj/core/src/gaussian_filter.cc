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

#include "fgbg/gaussian_filter.h"

#include <algorithm>
#include <cmath>

#include "fgbg/error.h"

namespace fgbg {

DirectGaussianFilter::DirectGaussianFilter(std::vector<double> features, int feature_dim)
    : features_(std::move(features)), feature_dim_(feature_dim) {
  if (feature_dim <= 0 || features_.size() % std::size_t(feature_dim) != 0) {
    throw Error(ErrorCode::kInvalidShape, "feature buffer is not a multiple of feature_dim");
  }
  num_points_ = features_.size() / std::size_t(feature_dim);
}

void DirectGaussianFilter::apply(std::span<const double> in, int value_dim,
                                 std::span<double> out) const {
  const std::size_t vd = std::size_t(value_dim);
  const std::size_t d = std::size_t(feature_dim_);
  std::fill(out.begin(), out.end(), 0.0);
  // Symmetric kernel: visit each unordered pair once.
  for (std::size_t i = 0; i < num_points_; ++i) {
    const double* fi = &features_[i * d];
    for (std::size_t c = 0; c < vd; ++c) out[i * vd + c] += in[i * vd + c];
    for (std::size_t j = i + 1; j < num_points_; ++j) {
      const double* fj = &features_[j * d];
      double dist2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = fi[k] - fj[k];
        dist2 += diff * diff;
      }
      const double w = std::exp(-0.5 * dist2);
      for (std::size_t c = 0; c < vd; ++c) {
        out[i * vd + c] += w * in[j * vd + c];
        out[j * vd + c] += w * in[i * vd + c];
      }
    }
  }
}

int separable_radius(double sigma) {
  // exp(-r^2 / 2s^2) < 1e-17  <=>  r > s * sqrt(2 ln 1e17)
  return int(std::ceil(sigma * std::sqrt(2.0 * std::log(1e17))));
}

SeparableGridFilter::SeparableGridFilter(int width, int height, double sigma)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw Error(ErrorCode::kInvalidShape, "empty grid");
  if (!(sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  radius_ = std::min(separable_radius(sigma), std::max(width, height) - 1);
  taps_.resize(std::size_t(radius_) + 1);
  for (int k = 0; k <= radius_; ++k) taps_[k] = std::exp(-0.5 * (k * k) / (sigma * sigma));
}

void SeparableGridFilter::apply(std::span<const double> in, int value_dim,
                                std::span<double> out) const {
  const std::size_t vd = std::size_t(value_dim);
  const std::size_t w = std::size_t(width_);
  std::vector<double> tmp(in.size(), 0.0);
  // Horizontal pass into tmp.
  for (int y = 0; y < height_; ++y) {
    const std::size_t row = std::size_t(y) * w;
    for (int x = 0; x < width_; ++x) {
      double* dst = &tmp[(row + x) * vd];
      const int lo = std::max(0, x - radius_);
      const int hi = std::min(width_ - 1, x + radius_);
      for (int xs = lo; xs <= hi; ++xs) {
        const double t = taps_[std::size_t(std::abs(xs - x))];
        const double* src = &in[(row + xs) * vd];
        for (std::size_t c = 0; c < vd; ++c) dst[c] += t * src[c];
      }
    }
  }
  // Vertical pass into out.
  std::fill(out.begin(), out.end(), 0.0);
  for (int y = 0; y < height_; ++y) {
    const int lo = std::max(0, y - radius_);
    const int hi = std::min(height_ - 1, y + radius_);
    for (int ys = lo; ys <= hi; ++ys) {
      const double t = taps_[std::size_t(std::abs(ys - y))];
      const double* src = &tmp[std::size_t(ys) * w * vd];
      double* dst = &out[std::size_t(y) * w * vd];
      for (std::size_t k = 0; k < w * vd; ++k) dst[k] += t * src[k];
    }
  }
}

std::vector<double> appearance_features(const RgbImage& image, double theta_xy,
                                        double theta_rgb) {
  std::vector<double> f(image.num_pixels() * 5);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const std::size_t i = std::size_t(y) * image.width + x;
      const std::uint8_t* px = image.pixel(i);
      double* fi = &f[i * 5];
      fi[0] = x / theta_xy;
      fi[1] = y / theta_xy;
      fi[2] = px[0] / theta_rgb;
      fi[3] = px[1] / theta_rgb;
      fi[4] = px[2] / theta_rgb;
    }
  }
  return f;
}

std::vector<double> spatial_features(int width, int height, double theta) {
  std::vector<double> f(std::size_t(width) * height * 2);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = std::size_t(y) * width + x;
      f[2 * i] = x / theta;
      f[2 * i + 1] = y / theta;
    }
  }
  return f;
}

}  // namespace fgbg

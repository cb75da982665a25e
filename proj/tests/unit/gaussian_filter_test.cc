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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fgbg/permutohedral.h"

namespace fgbg {
namespace {

std::vector<double> random_values(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> d(0, 1);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

// out[i] = sum_j exp(-|f_i - f_j|^2 / 2) in[j], straight from the definition.
std::vector<double> brute_force(const std::vector<double>& f, int fd, const std::vector<double>& in,
                                int vd) {
  const std::size_t n = f.size() / fd;
  std::vector<double> out(n * vd, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double d2 = 0;
      for (int k = 0; k < fd; ++k) d2 += std::pow(f[i * fd + k] - f[j * fd + k], 2);
      for (int v = 0; v < vd; ++v) out[i * vd + v] += std::exp(-d2 / 2) * in[j * vd + v];
    }
  }
  return out;
}

RgbImage random_image(int w, int h, std::mt19937& rng) {
  RgbImage img(w, h);
  for (auto& b : img.rgb) b = std::uint8_t(rng() % 256);
  return img;
}

TEST(DirectGaussianFilter, MatchesDefinition) {
  std::mt19937 rng(1);
  const auto f = random_values(30 * 3, rng);
  const auto in = random_values(30 * 2, rng);
  DirectGaussianFilter filter(f, 3);
  std::vector<double> out(in.size());
  filter.apply(in, 2, out);
  const auto expected = brute_force(f, 3, in, 2);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out[i], expected[i], 1e-12);
}

TEST(SeparableGridFilter, MatchesDirectOnSpatialFeatures) {
  std::mt19937 rng(2);
  for (double sigma : {0.7, 3.0, 9.0}) {
    const int w = 13, h = 9;
    const auto in = random_values(std::size_t(w) * h * 2, rng);
    SeparableGridFilter sep(w, h, sigma);
    DirectGaussianFilter direct(spatial_features(w, h, sigma), 2);
    std::vector<double> a(in.size()), b(in.size());
    sep.apply(in, 2, a);
    direct.apply(in, 2, b);
    for (std::size_t i = 0; i < a.size(); ++i) ASSERT_NEAR(a[i], b[i], 1e-10) << sigma;
  }
}

TEST(SeparableGridFilter, RadiusCoversKernel) {
  EXPECT_GE(separable_radius(3.0), 26);
  EXPECT_LT(std::exp(-std::pow(separable_radius(3.0) + 1, 2) / 18.0), 1e-17);
}

TEST(AppearanceFeatures, ScaledByBandwidths) {
  RgbImage img(2, 1);
  img.rgb = {10, 20, 30, 40, 50, 60};
  const auto f = appearance_features(img, 2.0, 10.0);
  ASSERT_EQ(f.size(), 10u);
  EXPECT_DOUBLE_EQ(f[5], 0.5);  // x of pixel 1
  EXPECT_DOUBLE_EQ(f[6], 0.0);
  EXPECT_DOUBLE_EQ(f[7], 4.0);
  EXPECT_DOUBLE_EQ(f[9], 6.0);
}

TEST(PermutohedralLattice, IsLinear) {
  std::mt19937 rng(3);
  const RgbImage img = random_image(8, 8, rng);
  PermutohedralLattice lattice(appearance_features(img, 3.0, 20.0), 5);
  const auto a = random_values(64, rng), b = random_values(64, rng);
  std::vector<double> ab(64), oa(64), ob(64), oab(64);
  for (int i = 0; i < 64; ++i) ab[i] = 2 * a[i] - 3 * b[i];
  lattice.apply(a, 1, oa);
  lattice.apply(b, 1, ob);
  lattice.apply(ab, 1, oab);
  for (int i = 0; i < 64; ++i) EXPECT_NEAR(oab[i], 2 * oa[i] - 3 * ob[i], 1e-10);
}

TEST(PermutohedralLattice, DistantClustersDoNotInteract) {
  // Two groups of points far apart in feature space.
  std::vector<double> f = {0, 0, 0.1, 0, 0, 0.1, 100, 100, 100.1, 100};
  PermutohedralLattice lattice(f, 2);
  std::vector<double> in = {1, 1, 1, 0, 0}, out(5);
  lattice.apply(in, 1, out);
  EXPECT_GT(out[0], 0.0);
  EXPECT_EQ(out[3], 0.0);
  EXPECT_EQ(out[4], 0.0);
}

TEST(PermutohedralLattice, ApproximatesNormalizedFilter) {
  // The lattice is an approximation: its unnormalized response is off by a
  // roughly constant factor, but the normalized (weighted mean) response on
  // smooth data stays close to the exact one.
  std::mt19937 rng(4);
  const int w = 16, h = 16;
  const auto f = spatial_features(w, h, 4.0);
  PermutohedralLattice lattice(f, 2);
  DirectGaussianFilter direct(f, 2);
  std::vector<double> in(w * h), ones(w * h, 1.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) in[y * w + x] = std::sin(x / 5.0) + std::cos(y / 7.0);
  }
  std::vector<double> la(w * h), ln(w * h), da(w * h), dn(w * h);
  lattice.apply(in, 1, la);
  lattice.apply(ones, 1, ln);
  direct.apply(in, 1, da);
  direct.apply(ones, 1, dn);
  for (int i = 0; i < w * h; ++i) {
    ASSERT_GT(ln[i], 0.0);
    EXPECT_NEAR(la[i] / ln[i], da[i] / dn[i], 0.1) << i;
  }
}

}  // namespace
}  // namespace fgbg

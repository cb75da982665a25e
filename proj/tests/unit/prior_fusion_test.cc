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

#include "fgbg/prior_fusion.h"

#include <algorithm>
#include <numeric>
#include <random>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "expect_error.h"
#include "oracles.h"

namespace fgbg {
namespace {

using ::testing::ElementsAre;
using ::testing::Each;
using ::testing::FloatEq;
using ::testing::FloatNear;

Tensor random_tensor(std::vector<std::size_t> dims, std::mt19937& rng, float lo = -1, float hi = 1) {
  Tensor t(std::move(dims));
  std::uniform_real_distribution<float> d(lo, hi);
  for (float& v : t.values()) v = d(rng);
  return t;
}

std::vector<float> values(const Tensor& t) { return {t.values().begin(), t.values().end()}; }

TEST(ChannelAverage, TwoChannelMean) {
  const Tensor t({2, 1, 1}, std::vector<float>{1, 3});
  EXPECT_THAT(values(channel_average(t)), ElementsAre(2.0f));
}

TEST(ChannelAverage, SingleChannelIsIdentity) {
  std::mt19937 rng(1);
  const Tensor t = random_tensor({1, 3, 4}, rng);
  const Tensor avg = channel_average(t);
  EXPECT_THAT(avg.dims(), ElementsAre(3, 4));
  EXPECT_EQ(values(avg), values(t));
}

TEST(ChannelAverage, MatchesNaiveSumOnWideStack) {
  std::mt19937 rng(2);
  const Tensor t = random_tensor({512, 4, 4}, rng);
  const Tensor avg = channel_average(t);
  for (std::size_t h = 0; h < 4; ++h) {
    for (std::size_t w = 0; w < 4; ++w) {
      double sum = 0;
      for (std::size_t c = 0; c < 512; ++c) sum += t.at(c, h, w);
      EXPECT_NEAR(avg.at(h, w), sum / 512, 1e-6);
    }
  }
}

TEST(ChannelAverage, RejectsWrongRank) {
  EXPECT_FGBG_ERROR(channel_average(Tensor(std::vector<std::size_t>{4, 4})),
                    ErrorCode::kShapeMismatch);
}

TEST(ChannelAverage, CommutesWithChannelPermutation) {
  std::mt19937 rng(3);
  const Tensor t = random_tensor({6, 3, 3}, rng);
  std::vector<std::size_t> perm(6);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Tensor p(t.dims());
  for (std::size_t c = 0; c < 6; ++c) {
    for (std::size_t i = 0; i < 9; ++i) p[c * 9 + i] = t[perm[c] * 9 + i];
  }
  const Tensor a = channel_average(t), b = channel_average(p);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(a[i], b[i], 1e-6);
}

TEST(UpsampleBilinear, ConstantStaysConstant) {
  const Tensor up = upsample_bilinear(Tensor({2, 2}, 0.7f), 5, 7);
  EXPECT_THAT(up.dims(), ElementsAre(7, 5));
  EXPECT_THAT(values(up), Each(FloatEq(0.7f)));
}

TEST(UpsampleBilinear, CornerAlignedMidpoint) {
  const Tensor t({1, 2}, std::vector<float>{0, 1});
  EXPECT_THAT(values(upsample_bilinear(t, 3, 1)), ElementsAre(0.0f, 0.5f, 1.0f));
}

TEST(UpsampleBilinear, MatchesDirectFormulaAtEveryPixel) {
  std::mt19937 rng(4);
  const Tensor t = random_tensor({3, 3}, rng);
  std::vector<std::vector<double>> grid(3, std::vector<double>(3));
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) grid[r][c] = t.at(r, c);
  }
  const Tensor up = upsample_bilinear(t, 9, 9);
  for (int y = 0; y < 9; ++y) {
    for (int x = 0; x < 9; ++x) {
      const double expected = testing::oracle_bilinear(grid, y * 2.0 / 8.0, x * 2.0 / 8.0);
      EXPECT_NEAR(up.at(y, x), expected, 1e-6) << "at " << x << "," << y;
    }
  }
}

TEST(UpsampleBilinear, ZeroTargetIsInvalid) {
  EXPECT_FGBG_ERROR(upsample_bilinear(Tensor({2, 2}, 1.0f), 0, 3), ErrorCode::kInvalidTarget);
  EXPECT_FGBG_ERROR(upsample_bilinear(Tensor({2, 2}, 1.0f), 3, 0), ErrorCode::kInvalidTarget);
}

TEST(UpsampleBilinear, OutputStaysWithinInputRange) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor t = random_tensor({1 + rng() % 5, 1 + rng() % 5}, rng, -3, 3);
    const Tensor up = upsample_bilinear(t, 1 + int(rng() % 20), 1 + int(rng() % 20));
    const auto [lo, hi] = std::minmax_element(t.values().begin(), t.values().end());
    for (float v : up.values()) {
      ASSERT_GE(v, *lo);
      ASSERT_LE(v, *hi);
    }
  }
}

TEST(Fuse, SumThenMinMax) {
  const Tensor a({2, 2}, std::vector<float>{0, 1, 1, 2});
  const Tensor b({2, 2}, std::vector<float>{1, 1, 1, 0});
  const HeatMap h = fuse(a, b);
  EXPECT_THAT(h.values, ElementsAre(0.0f, 1.0f, 1.0f, 1.0f));
}

TEST(Fuse, ConstantSumIsUniformHalf) {
  const HeatMap h = fuse(Tensor({3, 2}, 0.25f), Tensor({3, 2}, 4.0f));
  EXPECT_EQ(h.width, 2);
  EXPECT_EQ(h.height, 3);
  EXPECT_THAT(h.values, Each(FloatEq(0.5f)));
}

TEST(Fuse, ShapeMismatch) {
  EXPECT_FGBG_ERROR(fuse(Tensor({2, 2}, 0.0f), Tensor({2, 3}, 0.0f)), ErrorCode::kShapeMismatch);
}

TEST(FuseProperty, RangeIsExactlyZeroToOne) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t h = 2 + rng() % 6, w = 2 + rng() % 6;
    const HeatMap m = fuse(random_tensor({h, w}, rng), random_tensor({h, w}, rng));
    const auto [lo, hi] = std::minmax_element(m.values.begin(), m.values.end());
    ASSERT_EQ(*lo, 0.0f);
    ASSERT_EQ(*hi, 1.0f);
  }
}

TEST(FuseProperty, InvariantToCommonShiftAndScale) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor a = random_tensor({4, 5}, rng), b = random_tensor({4, 5}, rng);
    Tensor a2 = a, b2 = b;
    for (float& v : a2.values()) v = 3.0f * v + 2.0f;
    for (float& v : b2.values()) v = 3.0f * v + 2.0f;
    const HeatMap h1 = fuse(a, b), h2 = fuse(a2, b2);
    for (std::size_t i = 0; i < h1.values.size(); ++i) {
      ASSERT_THAT(h2.values[i], FloatNear(h1.values[i], 1e-5f));
    }
  }
}

TEST(FuseActivationStacks, DifferentResolutionsMeetAtImageSize) {
  std::mt19937 rng(8);
  const Tensor l4 = random_tensor({4, 5, 6}, rng), l5 = random_tensor({4, 3, 3}, rng);
  const HeatMap h = fuse_activation_stacks(l4, l5, 24, 20);
  EXPECT_EQ(h.width, 24);
  EXPECT_EQ(h.height, 20);
  // Same as doing the steps by hand.
  const HeatMap manual = fuse(upsample_bilinear(channel_average(l4), 24, 20),
                              upsample_bilinear(channel_average(l5), 24, 20));
  EXPECT_EQ(h.values, manual.values);
}

TEST(HeatMapTensor, RoundTrip) {
  HeatMap h(3, 2);
  h.values = {0, 0.1f, 0.2f, 0.3f, 0.4f, 1};
  const Tensor t = heatmap_to_tensor(h);
  EXPECT_THAT(t.dims(), ElementsAre(2, 3));
  const HeatMap back = tensor_to_heatmap(t);
  EXPECT_EQ(back.values, h.values);
  EXPECT_EQ(back.width, 3);
}

}  // namespace
}  // namespace fgbg

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
#include <cmath>
#include <string>

#include "fgbg/error.h"

namespace fgbg {

Tensor channel_average(const Tensor& stack) {
  if (stack.rank() != 3) {
    throw Error(ErrorCode::kShapeMismatch,
                "channel_average expects C x H x W, got rank " + std::to_string(stack.rank()));
  }
  const std::size_t channels = stack.dim(0);
  const std::size_t plane = stack.dim(1) * stack.dim(2);
  std::vector<double> acc(plane, 0.0);
  const float* v = stack.values().data();
  for (std::size_t c = 0; c < channels; ++c) {
    const float* src = v + c * plane;
    for (std::size_t i = 0; i < plane; ++i) acc[i] += src[i];
  }
  Tensor out({stack.dim(1), stack.dim(2)});
  const double inv = 1.0 / double(channels);
  for (std::size_t i = 0; i < plane; ++i) out[i] = float(acc[i] * inv);
  return out;
}

Tensor upsample_bilinear(const Tensor& map, int target_w, int target_h) {
  if (map.rank() != 2) {
    throw Error(ErrorCode::kShapeMismatch, "upsample_bilinear expects a rank-2 map");
  }
  if (target_w <= 0 || target_h <= 0) {
    throw Error(ErrorCode::kInvalidTarget, "target size must be positive");
  }
  const std::size_t src_h = map.dim(0);
  const std::size_t src_w = map.dim(1);
  // Corner-aligned source coordinate of output index i.
  auto source_coord = [](int i, int target, std::size_t src) {
    if (target == 1 || src == 1) return 0.0;
    return double(i) * double(src - 1) / double(target - 1);
  };
  Tensor out({std::size_t(target_h), std::size_t(target_w)});
  for (int y = 0; y < target_h; ++y) {
    const double sy = source_coord(y, target_h, src_h);
    const std::size_t y0 = std::min(std::size_t(sy), src_h - 1);
    const std::size_t y1 = std::min(y0 + 1, src_h - 1);
    const double fy = sy - double(y0);
    for (int x = 0; x < target_w; ++x) {
      const double sx = source_coord(x, target_w, src_w);
      const std::size_t x0 = std::min(std::size_t(sx), src_w - 1);
      const std::size_t x1 = std::min(x0 + 1, src_w - 1);
      const double fx = sx - double(x0);
      const double top = (1.0 - fx) * map.at(y0, x0) + fx * map.at(y0, x1);
      const double bottom = (1.0 - fx) * map.at(y1, x0) + fx * map.at(y1, x1);
      double v = (1.0 - fy) * top + fy * bottom;
      // Keep constant inputs exactly constant despite rounding in the blend.
      const double lo = std::min({map.at(y0, x0), map.at(y0, x1), map.at(y1, x0), map.at(y1, x1)});
      const double hi = std::max({map.at(y0, x0), map.at(y0, x1), map.at(y1, x0), map.at(y1, x1)});
      v = std::clamp(v, lo, hi);
      out.at(std::size_t(y), std::size_t(x)) = float(v);
    }
  }
  return out;
}

HeatMap fuse(const Tensor& layer4, const Tensor& layer5) {
  if (layer4.rank() != 2 || layer4.dims() != layer5.dims()) {
    throw Error(ErrorCode::kShapeMismatch, "fuse expects two rank-2 maps of equal shape");
  }
  const std::size_t n = layer4.size();
  std::vector<double> sum(n);
  for (std::size_t i = 0; i < n; ++i) sum[i] = double(layer4[i]) + double(layer5[i]);
  const auto [lo_it, hi_it] = std::minmax_element(sum.begin(), sum.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;

  HeatMap out(int(layer4.dim(1)), int(layer4.dim(0)));
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = range > 0.0 ? float((sum[i] - lo) / range) : 0.5f;
  }
  return out;
}

HeatMap fuse_activation_stacks(const Tensor& layer4, const Tensor& layer5, int image_width,
                               int image_height) {
  return fuse(upsample_bilinear(channel_average(layer4), image_width, image_height),
              upsample_bilinear(channel_average(layer5), image_width, image_height));
}

Tensor heatmap_to_tensor(const HeatMap& h) {
  return Tensor({std::size_t(h.height), std::size_t(h.width)}, h.values);
}

HeatMap tensor_to_heatmap(const Tensor& t) {
  if (t.rank() != 2) throw Error(ErrorCode::kShapeMismatch, "heat map tensor must be rank 2");
  HeatMap h(int(t.dim(1)), int(t.dim(0)));
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0.0f || t[i] > 1.0f) {
      throw Error(ErrorCode::kInvalidArgument, "heat map value outside [0, 1]");
    }
    h.values[i] = t[i];
  }
  return h;
}

}  // namespace fgbg

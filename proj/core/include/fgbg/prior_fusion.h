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

// Foreground prior from hidden-layer activations: each C x H x W stack is
// averaged over channels, resized to the image, the two maps are summed and
// the sum is min-max scaled to [0, 1].

#ifndef FGBG_PRIOR_FUSION_H_
#define FGBG_PRIOR_FUSION_H_

#include "fgbg/image.h"
#include "fgbg/tensor.h"

namespace fgbg {

// Rank-3 C x H x W -> rank-2 H x W mean over channels. kShapeMismatch on any
// other rank.
Tensor channel_average(const Tensor& stack);

// Corner-aligned bilinear resize of a rank-2 H x W map: output pixel x maps
// to source coordinate x * (src_w - 1) / (target_w - 1). kInvalidTarget on a
// zero target size, kShapeMismatch on a non rank-2 input.
Tensor upsample_bilinear(const Tensor& map, int target_w, int target_h);

// Elementwise sum then min-max scaling. A constant sum maps to 0.5
// everywhere. kShapeMismatch when the maps differ in shape.
HeatMap fuse(const Tensor& layer4, const Tensor& layer5);

// channel_average -> upsample_bilinear -> fuse for two activation stacks.
HeatMap fuse_activation_stacks(const Tensor& layer4, const Tensor& layer5,
                               int image_width, int image_height);

// HeatMap <-> rank-2 tensor (H x W) for storage.
Tensor heatmap_to_tensor(const HeatMap& h);
HeatMap tensor_to_heatmap(const Tensor& t);

}  // namespace fgbg

#endif  // FGBG_PRIOR_FUSION_H_

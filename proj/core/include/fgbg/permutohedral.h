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

// Permutohedral-lattice Gaussian filter (Adams, Baek and Davis, 2010).
//
// Points are embedded in the d-dimensional hyperplane of Z^{d+1} whose
// coordinates sum to zero, which the permutohedral lattice tiles with
// simplices. Filtering is splat (barycentric scatter onto the d+1 vertices of
// the enclosing simplex), blur (a [1/2 1 1/2] pass along each of the d+1
// lattice axes) and slice (barycentric gather). Cost is O(N d^2) per call
// independent of the kernel width; the result approximates the Gaussian
// kernel, it is not exact.

#ifndef FGBG_PERMUTOHEDRAL_H_
#define FGBG_PERMUTOHEDRAL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "fgbg/gaussian_filter.h"

namespace fgbg {

class PermutohedralLattice final : public GaussianFilter {
 public:
  // features: num_points x feature_dim, point-major, already scaled by the
  // inverse bandwidths.
  PermutohedralLattice(std::span<const double> features, int feature_dim);

  std::size_t num_points() const override { return num_points_; }
  void apply(std::span<const double> in, int value_dim,
             std::span<double> out) const override;

  std::size_t num_lattice_points() const { return num_vertices_; }

 private:
  int dim_;
  std::size_t num_points_;
  std::size_t num_vertices_ = 0;
  // Per point, the d+1 enclosing vertices and their barycentric weights.
  std::vector<int> offsets_;
  std::vector<double> weights_;
  // Per axis j and vertex v: neighbours at v -/+ the j-th lattice direction,
  // -1 when that vertex is not occupied. Layout [j * num_vertices_ + v].
  std::vector<int> neighbor_lo_;
  std::vector<int> neighbor_hi_;
};

}  // namespace fgbg

#endif  // FGBG_PERMUTOHEDRAL_H_

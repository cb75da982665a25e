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

#include "fgbg/permutohedral.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "fgbg/error.h"

namespace fgbg {
namespace {

// Open-addressing table from a d-int lattice key to a dense vertex index.
class VertexTable {
 public:
  VertexTable(int key_size, std::size_t expected)
      : key_size_(std::size_t(key_size)) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    slots_.assign(cap, -1);
    keys_.reserve(expected * key_size_);
  }

  std::size_t size() const { return keys_.size() / key_size_; }
  const int* key(std::size_t v) const { return &keys_[v * key_size_]; }

  // Returns the vertex index for key, inserting it when create is set;
  // -1 when absent and create is false.
  int find(const int* k, bool create) {
    if (create && 2 * (size() + 1) > slots_.size()) grow();
    std::size_t h = hash(k) & (slots_.size() - 1);
    while (true) {
      const int v = slots_[h];
      if (v < 0) {
        if (!create) return -1;
        const int id = int(size());
        keys_.insert(keys_.end(), k, k + key_size_);
        slots_[h] = id;
        return id;
      }
      if (std::equal(k, k + key_size_, key(std::size_t(v)))) return v;
      h = (h + 1) & (slots_.size() - 1);
    }
  }

 private:
  std::size_t hash(const int* k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < key_size_; ++i) {
      h ^= std::uint64_t(std::uint32_t(k[i]));
      h *= 1099511628211ull;
    }
    return std::size_t(h ^ (h >> 29));
  }

  void grow() {
    std::vector<int> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, -1);
    for (std::size_t v = 0; v < size(); ++v) {
      std::size_t h = hash(key(v)) & (slots_.size() - 1);
      while (slots_[h] >= 0) h = (h + 1) & (slots_.size() - 1);
      slots_[h] = int(v);
    }
  }

  std::size_t key_size_;
  std::vector<int> slots_;
  std::vector<int> keys_;
};

}  // namespace

PermutohedralLattice::PermutohedralLattice(std::span<const double> features, int feature_dim)
    : dim_(feature_dim) {
  if (feature_dim <= 0 || features.size() % std::size_t(feature_dim) != 0) {
    throw Error(ErrorCode::kInvalidShape, "feature buffer is not a multiple of feature_dim");
  }
  const int d = dim_;
  const std::size_t dp1 = std::size_t(d) + 1;
  num_points_ = features.size() / std::size_t(d);

  // Scaling so that one blur pass per axis matches a unit-variance Gaussian.
  const double inv_std_dev = std::sqrt(2.0 / 3.0) * (d + 1);
  std::vector<double> scale(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) scale[i] = inv_std_dev / std::sqrt(double(i + 1) * (i + 2));

  // canonical[r * (d+1) + j]: coordinate j of the remainder-r simplex vertex.
  std::vector<int> canonical(dp1 * dp1);
  for (int r = 0; r <= d; ++r) {
    for (int j = 0; j <= d - r; ++j) canonical[r * dp1 + j] = r;
    for (int j = d - r + 1; j <= d; ++j) canonical[r * dp1 + j] = r - (d + 1);
  }

  VertexTable table(d, num_points_ * dp1);
  offsets_.resize(num_points_ * dp1);
  weights_.resize(num_points_ * dp1);

  std::vector<double> elevated(dp1);
  std::vector<int> rem0(dp1);
  std::vector<int> rank(dp1);
  std::vector<double> bary(dp1 + 1);
  std::vector<int> key(dp1);
  const double down = 1.0 / (d + 1);

  for (std::size_t n = 0; n < num_points_; ++n) {
    const double* f = &features[n * std::size_t(d)];

    // Elevate onto the hyperplane sum(x) = 0 in d+1 dimensions.
    double sm = 0.0;
    for (int i = d; i > 0; --i) {
      const double cf = f[i - 1] * scale[i - 1];
      elevated[i] = sm - i * cf;
      sm += cf;
    }
    elevated[0] = sm;

    // Nearest remainder-0 lattice point and the rank ordering of residuals.
    int sum = 0;
    for (int i = 0; i <= d; ++i) {
      const double v = down * elevated[i];
      const int up = int(std::ceil(v)) * (d + 1);
      const int dn = int(std::floor(v)) * (d + 1);
      rem0[i] = (up - elevated[i] < elevated[i] - dn) ? up : dn;
      sum += rem0[i];
    }
    std::fill(rank.begin(), rank.end(), 0);
    for (int i = 0; i < d; ++i) {
      const double di = elevated[i] - rem0[i];
      for (int j = i + 1; j <= d; ++j) {
        if (di < elevated[j] - rem0[j]) {
          ++rank[i];
        } else {
          ++rank[j];
        }
      }
    }
    sum /= d + 1;
    if (sum > 0) {
      for (int i = 0; i <= d; ++i) {
        if (rank[i] >= d + 1 - sum) {
          rem0[i] -= d + 1;
          rank[i] += sum - (d + 1);
        } else {
          rank[i] += sum;
        }
      }
    } else if (sum < 0) {
      for (int i = 0; i <= d; ++i) {
        if (rank[i] < -sum) {
          rem0[i] += d + 1;
          rank[i] += (d + 1) + sum;
        } else {
          rank[i] += sum;
        }
      }
    }

    // Barycentric coordinates inside the enclosing simplex.
    std::fill(bary.begin(), bary.end(), 0.0);
    for (int i = 0; i <= d; ++i) {
      const double v = (elevated[i] - rem0[i]) * down;
      bary[std::size_t(d - rank[i])] += v;
      bary[std::size_t(d + 1 - rank[i])] -= v;
    }
    bary[0] += 1.0 + bary[std::size_t(d) + 1];

    for (int r = 0; r <= d; ++r) {
      for (int i = 0; i < d; ++i) key[i] = rem0[i] + canonical[r * dp1 + std::size_t(rank[i])];
      offsets_[n * dp1 + r] = table.find(key.data(), true);
      weights_[n * dp1 + r] = bary[std::size_t(r)];
    }
  }

  num_vertices_ = table.size();
  neighbor_lo_.assign(dp1 * num_vertices_, -1);
  neighbor_hi_.assign(dp1 * num_vertices_, -1);
  std::vector<int> lo(dp1), hi(dp1);
  for (int j = 0; j <= d; ++j) {
    for (std::size_t v = 0; v < num_vertices_; ++v) {
      const int* k = table.key(v);
      for (int i = 0; i < d; ++i) {
        lo[i] = k[i] - 1;
        hi[i] = k[i] + 1;
      }
      // Axis d touches only the implicit last coordinate, which shifts every
      // stored coordinate by one; the writes below then land in the unused slot.
      lo[j] = (j < d ? k[j] : 0) + d;
      hi[j] = (j < d ? k[j] : 0) - d;
      neighbor_lo_[std::size_t(j) * num_vertices_ + v] = table.find(lo.data(), false);
      neighbor_hi_[std::size_t(j) * num_vertices_ + v] = table.find(hi.data(), false);
    }
  }
}

void PermutohedralLattice::apply(std::span<const double> in, int value_dim,
                                 std::span<double> out) const {
  const std::size_t vd = std::size_t(value_dim);
  const std::size_t dp1 = std::size_t(dim_) + 1;
  std::vector<double> values(num_vertices_ * vd, 0.0);
  std::vector<double> scratch(num_vertices_ * vd, 0.0);

  // Splat.
  for (std::size_t n = 0; n < num_points_; ++n) {
    for (std::size_t r = 0; r < dp1; ++r) {
      const std::size_t o = std::size_t(offsets_[n * dp1 + r]) * vd;
      const double w = weights_[n * dp1 + r];
      for (std::size_t c = 0; c < vd; ++c) values[o + c] += w * in[n * vd + c];
    }
  }

  // Blur along each lattice axis.
  for (std::size_t j = 0; j < dp1; ++j) {
    const int* lo = &neighbor_lo_[j * num_vertices_];
    const int* hi = &neighbor_hi_[j * num_vertices_];
    for (std::size_t v = 0; v < num_vertices_; ++v) {
      const double* self = &values[v * vd];
      double* dst = &scratch[v * vd];
      for (std::size_t c = 0; c < vd; ++c) dst[c] = self[c];
      if (lo[v] >= 0) {
        const double* a = &values[std::size_t(lo[v]) * vd];
        for (std::size_t c = 0; c < vd; ++c) dst[c] += 0.5 * a[c];
      }
      if (hi[v] >= 0) {
        const double* b = &values[std::size_t(hi[v]) * vd];
        for (std::size_t c = 0; c < vd; ++c) dst[c] += 0.5 * b[c];
      }
    }
    values.swap(scratch);
  }

  // Slice.
  const double alpha = 1.0 / (1.0 + std::pow(2.0, -dim_));
  for (std::size_t n = 0; n < num_points_; ++n) {
    double* dst = &out[n * vd];
    for (std::size_t c = 0; c < vd; ++c) dst[c] = 0.0;
    for (std::size_t r = 0; r < dp1; ++r) {
      const std::size_t o = std::size_t(offsets_[n * dp1 + r]) * vd;
      const double w = weights_[n * dp1 + r] * alpha;
      for (std::size_t c = 0; c < vd; ++c) dst[c] += w * values[o + c];
    }
  }
}

}  // namespace fgbg

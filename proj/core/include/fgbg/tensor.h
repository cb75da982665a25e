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

#ifndef FGBG_TENSOR_H_
#define FGBG_TENSOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fgbg {

// Dense row-major float32 tensor. Activation stacks are C x H x W, score maps
// N x H x W and single maps H x W.
class Tensor {
 public:
  Tensor() = default;
  // Throws kInvalidShape when dims is empty or contains a zero.
  explicit Tensor(std::vector<std::size_t> dims, float fill = 0.0f);
  Tensor(std::vector<std::size_t> dims, std::vector<float> values);

  std::size_t rank() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t axis) const { return dims_.at(axis); }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  std::span<float> values() { return values_; }
  std::span<const float> values() const { return values_; }

  float& operator[](std::size_t i) { return values_[i]; }
  float operator[](std::size_t i) const { return values_[i]; }

  // Rank-2 and rank-3 element access; no bounds checks.
  float& at(std::size_t row, std::size_t col) {
    return values_[row * dims_[1] + col];
  }
  float at(std::size_t row, std::size_t col) const {
    return values_[row * dims_[1] + col];
  }
  float& at(std::size_t c, std::size_t row, std::size_t col) {
    return values_[(c * dims_[1] + row) * dims_[2] + col];
  }
  float at(std::size_t c, std::size_t row, std::size_t col) const {
    return values_[(c * dims_[1] + row) * dims_[2] + col];
  }

  friend bool operator==(const Tensor& a, const Tensor& b) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<float> values_;
};

// Product of dims; zero for an empty dims list.
std::size_t shape_size(std::span<const std::size_t> dims);

}  // namespace fgbg

#endif  // FGBG_TENSOR_H_

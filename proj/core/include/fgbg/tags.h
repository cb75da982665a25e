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

#ifndef FGBG_TAGS_H_
#define FGBG_TAGS_H_

#include <span>
#include <vector>

namespace fgbg {

// Image-level tags over classes 0..N-1: the present classes and their
// complement. Class 0 is the background.
class TagSet {
 public:
  // Throws kInvalidArgument if present is empty or holds an id outside
  // [0, num_classes). Duplicates are ignored.
  TagSet(int num_classes, std::span<const int> present);

  int num_classes() const { return num_classes_; }
  const std::vector<int>& present() const { return present_; }
  const std::vector<int>& absent() const { return absent_; }
  bool is_present(int k) const { return is_present_[k]; }
  bool has_background() const { return is_present_[0]; }

 private:
  int num_classes_;
  std::vector<int> present_;
  std::vector<int> absent_;
  std::vector<bool> is_present_;
};

}  // namespace fgbg

#endif  // FGBG_TAGS_H_

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

#ifndef FGBG_TOOLS_MASKCTL_WORKER_POOL_H_
#define FGBG_TOOLS_MASKCTL_WORKER_POOL_H_

#include <cstddef>
#include <functional>

namespace fgbg::maskctl {

// Worker count: MASKCTL_THREADS when set to a positive integer, otherwise
// the hardware concurrency; never more than num_tasks, never less than 1.
int worker_count(std::size_t num_tasks);

// Runs task(0..n-1) on worker_count(n) threads and returns when all are done.
// task must not throw.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace fgbg::maskctl

#endif  // FGBG_TOOLS_MASKCTL_WORKER_POOL_H_

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

// Message computation and full mean-field inference, lattice vs exact.

#include <random>

#include <benchmark/benchmark.h>

#include "fgbg/dense_crf.h"

namespace fgbg {
namespace {

RgbImage noisy_image(int side) {
  std::mt19937 rng(1);
  RgbImage img(side, side);
  for (auto& b : img.rgb) b = std::uint8_t(rng() % 256);
  return img;
}

BeliefField random_beliefs(int side) {
  std::mt19937 rng(2);
  BeliefField q(2, side, side);
  for (std::size_t i = 0; i < q.num_pixels(); ++i) {
    q.at(i, 0) = std::uniform_real_distribution<double>(0, 1)(rng);
    q.at(i, 1) = 1 - q.at(i, 0);
  }
  return q;
}

UnaryField random_unary(int side) {
  std::mt19937 rng(3);
  UnaryField u(2, side, side);
  for (double& c : u.cost) c = std::uniform_real_distribution<double>(0, 3)(rng);
  return u;
}

void BM_Messages(benchmark::State& state, FilterBackend backend) {
  const int side = int(state.range(0));
  const RgbImage img = noisy_image(side);
  const BeliefField q = random_beliefs(side);
  const PairwiseMessenger m(img, PairwiseConfig{}, backend);
  for (auto _ : state) benchmark::DoNotOptimize(m.messages(q));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK_CAPTURE(BM_Messages, permutohedral, FilterBackend::kPermutohedral)
    ->RangeMultiplier(2)->Range(16, 256);
BENCHMARK_CAPTURE(BM_Messages, exact, FilterBackend::kExact)->RangeMultiplier(2)->Range(16, 64);

void BM_DirectMessages(benchmark::State& state) {
  const int side = int(state.range(0));
  const RgbImage img = noisy_image(side);
  const BeliefField q = random_beliefs(side);
  for (auto _ : state) benchmark::DoNotOptimize(direct_messages(img, PairwiseConfig{}, q));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_DirectMessages)->RangeMultiplier(2)->Range(16, 64);

void BM_LatticeBuild(benchmark::State& state) {
  const int side = int(state.range(0));
  const RgbImage img = noisy_image(side);
  for (auto _ : state) benchmark::DoNotOptimize(PairwiseMessenger(img, PairwiseConfig{}));
}
BENCHMARK(BM_LatticeBuild)->RangeMultiplier(2)->Range(32, 256);

void BM_MeanField(benchmark::State& state) {
  const int side = int(state.range(0));
  const RgbImage img = noisy_image(side);
  const UnaryField u = random_unary(side);
  for (auto _ : state) benchmark::DoNotOptimize(mean_field_infer(u, img, PairwiseConfig{}));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_MeanField)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace fgbg

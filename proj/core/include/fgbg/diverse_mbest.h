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

// Diverse M-best mask candidates. Each new candidate is the mean-field MAP of
// the unary field augmented with a Hamming bonus against every earlier
// candidate, so the solver is pushed away from solutions it already found.

#ifndef FGBG_DIVERSE_MBEST_H_
#define FGBG_DIVERSE_MBEST_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fgbg/dense_crf.h"
#include "fgbg/image.h"

namespace fgbg {

struct DiversityConfig {
  // Unset means 0.1 * mean |cost| of the unary field being augmented.
  std::optional<double> lambda;
  int num_candidates = 30;

  void validate() const;

  friend bool operator==(const DiversityConfig&, const DiversityConfig&) = default;
};

struct CandidateSet {
  std::string image_id;
  double lambda = 0.0;
  std::vector<LabelMask> candidates;
  // Base Gibbs energies, without the diversity bonus.
  std::vector<double> energies;
};

// 0.1 * mean |cost| over all entries.
double default_lambda(const UnaryField& unary);

// cost'_i(l) = cost_i(l) - lambda * #{m : previous_m(i) != l}.
UnaryField augment_unary(const UnaryField& unary, std::span<const LabelMask> previous,
                         double lambda);

struct CandidateOptions {
  FilterBackend backend = FilterBackend::kPermutohedral;
};

// Candidate 1 is the plain MAP; candidate m is the MAP under the unary
// augmented by candidates 1..m-1. Energies are evaluated with the same
// filters as inference (exact with FilterBackend::kExact).
CandidateSet generate_candidates(const UnaryField& unary, const RgbImage& image,
                                 const PairwiseConfig& crf_cfg, const DiversityConfig& div_cfg,
                                 const CandidateOptions& options = {});

// Writes candidate_<m>.png (1-based, 0/255) and meta.json into dir, creating
// it if needed.
void save_candidate_set(const CandidateSet& set, const std::filesystem::path& dir);

// Reads a directory written by save_candidate_set. kCandidatesMissing when
// meta.json or a listed candidate is absent.
CandidateSet load_candidate_set(const std::filesystem::path& dir);

}  // namespace fgbg

#endif  // FGBG_DIVERSE_MBEST_H_

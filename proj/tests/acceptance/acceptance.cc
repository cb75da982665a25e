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

// Acceptance checks. Prints one PASS/FAIL line per criterion (sub-checks
// indented below it) and exits nonzero if any criterion fails. Tolerances
// are pinned here, not taken from the command line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.h"
#include "fgbg/dense_crf.h"
#include "fgbg/diverse_mbest.h"
#include "fgbg/image_io.h"
#include "fgbg/prior_fusion.h"
#include "fgbg/seg_metrics.h"
#include "fgbg/weak_loss.h"
#include "oracles.h"
#include "synthetic.h"

namespace fgbg {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kGradStep = 1e-4;
constexpr double kGradTolerance = 1e-4;
constexpr double kGradFloor = 1e-6;  // denominator floor of the relative error
constexpr double kGradBudgetSeconds = 30;
constexpr double kLseIdentityTolerance = 1e-12;
constexpr double kLseSharpTolerance = 0.01;
constexpr double kEnergyTolerance = 1e-9;
constexpr double kMessageTolerance = 1e-5;
constexpr double kNormalizationTolerance = 1e-6;
constexpr double kCrfBudgetSeconds = 60;
constexpr double kAugmentTolerance = 1e-12;
constexpr double kMiouTolerance = 1e-6;
constexpr double kMinBlobCoverage = 0.80;
constexpr double kMaxFarBackground = 0.05;

struct SubCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::vector<SubCheck> checks;

  void add(std::string n, bool pass, std::string detail) {
    checks.push_back({std::move(n), pass, std::move(detail)});
  }
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const SubCheck& c) { return c.pass; });
  }
};

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

TagSet random_tags(std::mt19937& rng) {
  std::vector<int> present = {0};
  const int extra = 1 + int(rng() % 3);
  for (int i = 0; i < extra; ++i) present.push_back(1 + int(rng() % 20));
  return TagSet(21, present);
}

LabelMask random_binary_mask(int w, int h, std::mt19937& rng) {
  LabelMask m(w, h);
  for (auto& l : m.labels) l = std::uint8_t(rng() % 2);
  m.labels[0] = 0;  // both sides non-empty
  m.labels[1] = 1;
  return m;
}

Criterion gradient_suite() {
  Criterion c{"gradient suite: 4 losses x 20 random 21x8x8 maps vs central differences", {}};
  const auto t0 = Clock::now();
  std::mt19937 rng(20260101);
  std::normal_distribution<double> score(0.0, 2.0);
  for (LossVariant v : {LossVariant::kWeak, LossVariant::kMask, LossVariant::kWeakAlt,
                        LossVariant::kMaskAlt}) {
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
      ScoreMap s(21, 8, 8);
      for (double& x : s.values) x = score(rng);
      const TagSet tags = random_tags(rng);
      const LabelMask mask = random_binary_mask(8, 8, rng);
      const LossConfig cfg;
      const LossReport rep = evaluate_loss(v, s, tags, &mask, cfg);
      const auto fd = testing::oracle_fd_gradient(
          [&](const std::vector<double>& x) {
            ScoreMap sx = s;
            sx.values = x;
            return evaluate_loss(v, sx, tags, &mask, cfg).value;
          },
          s.values, kGradStep);
      for (std::size_t i = 0; i < fd.size(); ++i) {
        const double a = rep.grad.values[i];
        const double rel =
            std::abs(a - fd[i]) / std::max({std::abs(a), std::abs(fd[i]), kGradFloor});
        worst = std::max(worst, rel);
      }
    }
    c.add(std::string(variant_name(v)), worst < kGradTolerance,
          fmt("max rel err %.3e (tol %.0e)", worst, kGradTolerance));
  }
  const double elapsed = seconds_since(t0);
  c.add("runtime", elapsed < kGradBudgetSeconds, fmt("%.2f s (budget %.0f s)", elapsed, kGradBudgetSeconds));
  return c;
}

Criterion lse_contract() {
  Criterion c{"LSE contract: bounds, constant identity, sharp limit", {}};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  bool bounds = true, identity = true, sharp = true;
  double worst_identity = 0, worst_sharp = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(1 + rng() % 40);
    for (double& x : v) x = u(rng);
    const double r = 0.1 + 20 * u(rng);
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
    const double mx = *std::max_element(v.begin(), v.end());
    const double l = lse_pool(v, r);
    bounds = bounds && l >= mean - 1e-15 && l <= mx + 1e-15;

    const double k = u(rng);
    const std::vector<double> constant(v.size(), k);
    worst_identity = std::max(worst_identity, std::abs(lse_pool(constant, r) - k));

    // Top value at least 0.5 above all others.
    std::vector<double> gap(2 + rng() % 40);
    for (double& x : gap) x = 0.4 * u(rng);
    gap[rng() % gap.size()] = 0.9 + 0.1 * u(rng);
    const double top = *std::max_element(gap.begin(), gap.end());
    worst_sharp = std::max(worst_sharp, std::abs(lse_pool(gap, 1000.0) - top));
  }
  identity = worst_identity <= kLseIdentityTolerance;
  sharp = worst_sharp <= kLseSharpTolerance;
  c.add("mean <= lse <= max (100 sets)", bounds, "");
  c.add("constant input", identity, fmt("max |lse - v| %.1e (tol %.0e)", worst_identity, kLseIdentityTolerance));
  c.add("r=1000 near max", sharp, fmt("max |lse - max| %.2e (tol %.2f)", worst_sharp, kLseSharpTolerance));
  return c;
}

// ---------------------------------------------------------------------------

testing::Problem random_problem(int w, int h, int labels, std::mt19937& rng) {
  testing::Problem p;
  p.width = w;
  p.height = h;
  p.labels = labels;
  std::uniform_real_distribution<double> cost(0, 5);
  for (int i = 0; i < w * h; ++i) {
    std::vector<double> cs(labels);
    for (double& v : cs) v = cost(rng);
    p.costs.push_back(cs);
    p.rgb.push_back({int(rng() % 256), int(rng() % 256), int(rng() % 256)});
  }
  return p;
}

RgbImage image_of(const testing::Problem& p) {
  RgbImage img(p.width, p.height);
  for (int i = 0; i < p.width * p.height; ++i) {
    for (int ch = 0; ch < 3; ++ch) img.pixel(i)[ch] = std::uint8_t(p.rgb[i][ch]);
  }
  return img;
}

UnaryField unary_of(const testing::Problem& p) {
  UnaryField u(p.labels, p.width, p.height);
  for (int i = 0; i < p.width * p.height; ++i) {
    for (int l = 0; l < p.labels; ++l) u.at(i, l) = p.costs[i][l];
  }
  return u;
}

testing::KernelParams params_of(const PairwiseConfig& c) {
  return {c.w_app, c.theta_alpha, c.theta_beta, c.w_smooth, c.theta_gamma};
}

Criterion crf_oracle_suite() {
  Criterion c{"CRF oracle suite: energies, filtered messages, normalization", {}};
  const auto t0 = Clock::now();
  std::mt19937 rng(99);
  const PairwiseConfig cfg;

  // Energies of every labeling on 50 small problems.
  double worst_energy = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int side = trial % 2 ? 3 : 2;
    const testing::Problem p = random_problem(side, side, 2, rng);
    const UnaryField u = unary_of(p);
    const RgbImage img = image_of(p);
    const int n = side * side;
    for (int code = 0; code < (1 << n); ++code) {
      std::vector<int> x(n);
      LabelMask m(side, side);
      for (int i = 0; i < n; ++i) m.labels[i] = std::uint8_t(x[i] = (code >> i) & 1);
      worst_energy = std::max(
          worst_energy, std::abs(gibbs_energy(m, u, img, cfg) - testing::oracle_energy(p, params_of(cfg), x)));
    }
  }
  c.add("gibbs_energy vs exhaustive oracle (50 problems, all labelings)",
        worst_energy <= kEnergyTolerance, fmt("max |dE| %.2e (tol %.0e)", worst_energy, kEnergyTolerance));

  // Production (lattice) messages vs direct summation on 16x16 images.
  double worst_fast = 0, worst_exact = 0, scale = 0;
  for (int trial = 0; trial < 3; ++trial) {
    const testing::Problem p = random_problem(16, 16, 2, rng);
    const RgbImage img = image_of(p);
    BeliefField q(2, 16, 16);
    for (std::size_t i = 0; i < q.num_pixels(); ++i) {
      q.at(i, 0) = std::uniform_real_distribution<double>(0, 1)(rng);
      q.at(i, 1) = 1 - q.at(i, 0);
    }
    const auto direct = direct_messages(img, cfg, q);
    const auto fast = PairwiseMessenger(img, cfg, FilterBackend::kPermutohedral).messages(q);
    const auto exact = PairwiseMessenger(img, cfg, FilterBackend::kExact).messages(q);
    for (std::size_t i = 0; i < direct.size(); ++i) {
      worst_fast = std::max(worst_fast, std::abs(fast[i] - direct[i]));
      worst_exact = std::max(worst_exact, std::abs(exact[i] - direct[i]));
      scale = std::max(scale, std::abs(direct[i]));
    }
  }
  c.add("permutohedral messages vs direct, 16x16", worst_fast <= kMessageTolerance,
        fmt("max |d| %.3e, messages up to %.1f (tol %.0e); exact backend %.1e", worst_fast,
            scale, kMessageTolerance, worst_exact));

  // Normalization after every iteration.
  double worst_norm = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const testing::Problem p = random_problem(16, 16, 2 + trial % 3, rng);
    MeanFieldOptions opt;
    opt.on_iteration = [&](int, const BeliefField& q) {
      for (std::size_t i = 0; i < q.num_pixels(); ++i) {
        double z = 0;
        for (int l = 0; l < q.num_labels; ++l) z += q.at(i, l);
        worst_norm = std::max(worst_norm, std::abs(z - 1));
      }
    };
    mean_field_infer(unary_of(p), image_of(p), cfg, opt);
  }
  c.add("belief normalization every iteration", worst_norm <= kNormalizationTolerance,
        fmt("max |sum - 1| %.1e (tol %.0e)", worst_norm, kNormalizationTolerance));

  const double elapsed = seconds_since(t0);
  c.add("runtime", elapsed < kCrfBudgetSeconds, fmt("%.2f s (budget %.0f s)", elapsed, kCrfBudgetSeconds));
  return c;
}

Criterion zero_pairwise() {
  Criterion c{"zero-pairwise reduction: MAP equals per-pixel unary argmin", {}};
  std::mt19937 rng(5);
  PairwiseConfig cfg;
  cfg.w_app = 0;
  cfg.w_smooth = 0;
  int mismatches = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const testing::Problem p = random_problem(4 + int(rng() % 12), 4 + int(rng() % 12), 2 + int(rng() % 4), rng);
    const LabelMask x = map_labels(mean_field_infer(unary_of(p), image_of(p), cfg));
    for (std::size_t i = 0; i < p.costs.size(); ++i) {
      const auto best = std::min_element(p.costs[i].begin(), p.costs[i].end()) - p.costs[i].begin();
      mismatches += x.labels[i] != best;
    }
  }
  c.add("20 random instances", mismatches == 0, fmt("%d mismatched pixels", mismatches));
  return c;
}

Criterion diverse_identity() {
  Criterion c{"diverse M-best: augmentation identity, distinctness, lambda=0", {}};
  std::mt19937 rng(11);
  const PairwiseConfig cfg;

  const testing::Problem p = random_problem(2, 2, 2, rng);
  const UnaryField u = unary_of(p);
  const RgbImage img = image_of(p);
  std::vector<LabelMask> prev;
  for (int m = 0; m < 3; ++m) {
    LabelMask x(2, 2);
    for (auto& l : x.labels) l = std::uint8_t(rng() % 2);
    prev.push_back(x);
  }
  const double lambda = 0.73;
  const UnaryField a = augment_unary(u, prev, lambda);
  double worst = 0;
  for (int code = 0; code < 16; ++code) {
    LabelMask x(2, 2);
    for (int i = 0; i < 4; ++i) x.labels[i] = std::uint8_t((code >> i) & 1);
    double ham = 0;
    for (const auto& pm : prev) ham += double(hamming_distance(x, pm));
    worst = std::max(worst, std::abs(gibbs_energy(x, a, img, cfg) - gibbs_energy(x, u, img, cfg) + lambda * ham));
  }
  c.add("augmented - base = -lambda * Hamming (16 labelings)", worst <= kAugmentTolerance,
        fmt("max deviation %.1e (tol %.0e)", worst, kAugmentTolerance));

  // The 4x4 two-blob fixture, lambda = 0.5, M = 5.
  HeatMap h(4, 4, 0.2f);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 2; ++x) {
      h.values[y * 4 + x] = 0.85f;
      h.values[(y + 2) * 4 + x + 2] = 0.7f;
    }
  }
  RgbImage blobs(4, 4);
  for (std::size_t i = 0; i < 16; ++i) {
    const std::uint8_t v = h.values[i] > 0.5f ? 200 : 60;
    blobs.pixel(i)[0] = blobs.pixel(i)[1] = blobs.pixel(i)[2] = v;
  }
  DiversityConfig d;
  d.lambda = 0.5;
  d.num_candidates = 5;
  const CandidateSet set = generate_candidates(unary_from_heatmap(h), blobs, cfg, d);
  int identical_pairs = 0;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) identical_pairs += set.candidates[i] == set.candidates[j];
  }
  c.add("two-blob 4x4, lambda=0.5, M=5: pairwise distinct", identical_pairs == 0,
        fmt("%d of 10 pairs identical", identical_pairs));

  d.lambda = 0.0;
  const CandidateSet same = generate_candidates(unary_from_heatmap(h), blobs, cfg, d);
  const bool all_same = std::all_of(same.candidates.begin(), same.candidates.end(),
                                    [&](const LabelMask& m) { return m == same.candidates[0]; });
  c.add("lambda=0: all candidates identical", all_same, "");
  return c;
}

Criterion fusion_pipeline() {
  Criterion c{"fusion pipeline: synthetic activation blob -> heat map -> CRF mask", {}};
  testing::BlobSpec spec;
  spec.seed = 4242;
  const testing::BlobImage b = testing::make_blob_image(spec);
  const HeatMap h = fuse_activation_stacks(b.conv4, b.conv5, spec.width, spec.height);

  const auto argmax = std::max_element(h.values.begin(), h.values.end()) - h.values.begin();
  c.add("heat-map maximum inside the blob", b.blob.labels[argmax] == 1,
        fmt("argmax at (%d, %d)", int(argmax % spec.width), int(argmax / spec.width)));
  const auto [lo, hi] = std::minmax_element(h.values.begin(), h.values.end());
  c.add("range exactly [0, 1]", *lo == 0.0f && *hi == 1.0f, fmt("[%g, %g]", *lo, *hi));

  const LabelMask x = map_labels(mean_field_infer(unary_from_heatmap(h), b.image, PairwiseConfig{}));
  std::size_t blob = 0, covered = 0, far = 0, far_fg = 0;
  for (std::size_t i = 0; i < x.labels.size(); ++i) {
    blob += b.blob.labels[i];
    covered += b.blob.labels[i] && x.labels[i];
    far += b.far_background.labels[i];
    far_fg += b.far_background.labels[i] && x.labels[i];
  }
  const double coverage = double(covered) / double(blob);
  const double leak = double(far_fg) / double(far);
  c.add("blob coverage", coverage >= kMinBlobCoverage, fmt("%.3f (min %.2f)", coverage, kMinBlobCoverage));
  c.add("far-background foreground", leak <= kMaxFarBackground, fmt("%.3f (max %.2f)", leak, kMaxFarBackground));
  return c;
}

Criterion metrics() {
  Criterion c{"metrics: hand fixture, perfect prediction, order invariance", {}};
  LabelMask pred(2, 2), gt(2, 2);
  pred.labels = {0, 1, 1, 1};
  gt.labels = {0, 0, 1, 1};
  ConfusionState s(2);
  confusion_accumulate(pred, gt, s);
  const double miou = iou_report(s).miou;
  // The hand computation gives IOU {1/2, 2/3}; 0.5833 is that mean rounded.
  c.add("2x2 fixture mIOU = 7/12 (0.5833)", std::abs(miou - 7.0 / 12.0) <= kMiouTolerance,
        fmt("%.6f", miou));

  std::mt19937 rng(3);
  std::vector<std::pair<LabelMask, LabelMask>> images;
  for (int i = 0; i < 8; ++i) {
    LabelMask a(7, 5), g(7, 5);
    for (auto& l : a.labels) l = std::uint8_t(rng() % 5);
    for (auto& l : g.labels) l = std::uint8_t(rng() % 5);
    images.emplace_back(a, g);
  }
  ConfusionState same(5);
  for (const auto& im : images) confusion_accumulate(im.second, im.second, same);
  c.add("identical pred/gt gives 1.0", iou_report(same).miou == 1.0, "");

  bool invariant = true;
  ConfusionState ref(5);
  for (const auto& im : images) confusion_accumulate(im.first, im.second, ref);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(images.begin(), images.end(), rng);
    ConfusionState t(5);
    for (const auto& im : images) confusion_accumulate(im.first, im.second, t);
    invariant = invariant && t == ref && iou_report(t).miou == iou_report(ref).miou;
  }
  c.add("accumulation order invariant", invariant, "");
  return c;
}

Criterion e2e_determinism() {
  Criterion c{"end-to-end CLI determinism: fuse -> candidates -> loss, run twice", {}};
  testing::TempDir data, work;
  const fs::path manifest = testing::write_blob_dataset(data.path(), 3, 31);

  auto pipeline = [&](const fs::path& root, std::string* log) {
    std::ostringstream out, err;
    maskctl::Options o;
    o.manifest = manifest;
    o.out = root / "heat";
    int code = maskctl::cmd_fuse(o, out, err);
    o.out = root / "candidates";
    o.heatmaps = root / "heat";
    o.num_candidates = 5;
    code |= maskctl::cmd_candidates(o, out, err);
    // Take candidate 1 of every image as its selected mask.
    for (const auto& e : fs::directory_iterator(root / "candidates")) {
      fs::create_directories(root / "masks" / e.path().filename());
      fs::copy_file(e.path() / "candidate_1.png", root / "masks" / e.path().filename() / "mask.png");
    }
    o.out = root / "loss";
    o.masks = root / "masks";
    o.variant = "mask";
    code |= maskctl::cmd_loss(o, out, err);
    *log = out.str() + err.str();
    return code;
  };
  std::string log_a, log_b;
  const int a = pipeline(work.path() / "a", &log_a);
  const int b = pipeline(work.path() / "b", &log_b);
  c.add("both runs exit 0", a == 0 && b == 0, fmt("exit codes %d, %d", a, b));
  const auto ta = testing::snapshot_tree(work.path() / "a");
  const auto tb = testing::snapshot_tree(work.path() / "b");
  c.add("output trees byte-identical", ta == tb, fmt("%zu files", ta.size()));
  c.add("stdout identical", log_a == log_b, "");
  return c;
}

}  // namespace
}  // namespace fgbg

int main() {
  using namespace fgbg;
  const std::vector<std::function<Criterion()>> suites = {
      gradient_suite, lse_contract,     crf_oracle_suite, zero_pairwise,
      diverse_identity, fusion_pipeline, metrics,        e2e_determinism};
  int failed = 0;
  for (const auto& run : suites) {
    const Criterion c = run();
    std::printf("%s  %s\n", c.pass() ? "PASS" : "FAIL", c.name.c_str());
    for (const auto& s : c.checks) {
      std::printf("  %s  %s%s%s\n", s.pass ? "ok  " : "FAIL", s.name.c_str(),
                  s.detail.empty() ? "" : ": ", s.detail.c_str());
    }
    std::fflush(stdout);
    failed += !c.pass();
  }
  std::printf("%d of %zu criteria failed\n", failed, suites.size());
  return failed ? 1 : 0;
}

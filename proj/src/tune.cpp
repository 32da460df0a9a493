#include "gcff/tune.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gcff/errors.hpp"
#include "gcff/metrics.hpp"
#include "gcff/solver.hpp"

namespace gcff {
namespace {

double score(std::span<const Scene> scenes, const Params& params,
             double tolerance) {
  std::vector<FramePair> frames;
  frames.reserve(scenes.size());
  for (const auto& s : scenes) {
    frames.push_back(
        {s.frame_id(), *s.ground_truth(), detect_groups(s, params).groups});
  }
  return precision_recall_f1(aggregate_counts(frames, tolerance)).f1;
}

Params cell_params(const Params& base, double stride, double sigma) {
  Params p = Params::with_defaults(stride, sigma);
  p.theta_hat = base.theta_hat;
  p.k_repulsion = base.k_repulsion;
  p.max_iterations = base.max_iterations;
  p.visibility = base.visibility;
  p.literal_visibility_gate = base.literal_visibility_gate;
  return p;
}

}  // namespace

TuneResult tune(std::span<const Scene> scenes, std::span<const double> strides,
                std::span<const double> sigmas, const Params& base,
                const TuneOptions& options) {
  if (strides.empty() || sigmas.empty()) throw InvalidInput("empty grid");
  for (double v : strides) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("non-positive stride in grid");
  }
  for (double v : sigmas) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("non-positive sigma in grid");
  }
  if (scenes.size() < 2) throw InvalidInput("tuning needs at least two frames");
  if (!(options.split > 0.0 && options.split < 1.0)) {
    throw InvalidInput("split must lie in (0, 1)");
  }
  for (const auto& s : scenes) {
    if (!s.ground_truth()) {
      throw InvalidInput("frame '" + s.frame_id() + "' has no ground truth");
    }
  }

  std::vector<Scene> ordered(scenes.begin(), scenes.end());
  if (options.shuffle_seed) {
    std::mt19937_64 rng(*options.shuffle_seed);
    // Fisher-Yates with our own index draws; std::shuffle's use of the engine
    // is implementation-defined.
    for (std::size_t i = ordered.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(ordered[i - 1], ordered[j]);
    }
  }
  auto n_train = static_cast<std::size_t>(
      std::floor(options.split * static_cast<double>(ordered.size())));
  n_train = std::clamp<std::size_t>(n_train, 1, ordered.size() - 1);
  const std::span<const Scene> train(ordered.data(), n_train);
  const std::span<const Scene> held(ordered.data() + n_train,
                                    ordered.size() - n_train);

  TuneResult out;
  out.train_frames = train.size();
  out.heldout_frames = held.size();
  bool have = false;
  for (double d : strides) {
    for (double s : sigmas) {
      const double f1 = score(train, cell_params(base, d, s), options.tolerance);
      out.grid.push_back({d, s, f1});
      if (!have || f1 > out.train_f1) {
        have = true;
        out.stride_d = d;
        out.sigma = s;
        out.train_f1 = f1;
      }
    }
  }
  out.heldout_f1 =
      score(held, cell_params(base, out.stride_d, out.sigma), options.tolerance);
  return out;
}

}  // namespace gcff

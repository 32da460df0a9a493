#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gcff/params.hpp"
#include "gcff/scene.hpp"

namespace gcff {

struct TuneCell {
  double stride_d = 0.0;
  double sigma = 0.0;
  double train_f1 = 0.0;
};

struct TuneResult {
  double stride_d = 0.0;
  double sigma = 0.0;
  double train_f1 = 0.0;
  double heldout_f1 = 0.0;
  std::size_t train_frames = 0;
  std::size_t heldout_frames = 0;
  std::vector<TuneCell> grid;  // strides major, sigmas minor
};

struct TuneOptions {
  double split = 0.5;  // fraction of frames used for training
  double tolerance = 2.0 / 3.0;
  std::optional<std::uint64_t> shuffle_seed;
};

// Grid search over (stride, sigma) maximizing aggregate F1 on the leading
// `split` fraction of frames (after an optional seeded shuffle); the first
// best cell in grid order wins. Every other parameter is taken from `base`,
// with mdl and visibility weights reset to sigma^2 per cell. Throws
// InvalidInput on an empty or non-positive grid, fewer than two frames, or
// frames without ground truth.
TuneResult tune(std::span<const Scene> scenes, std::span<const double> strides,
                std::span<const double> sigmas, const Params& base,
                const TuneOptions& options = {});

}  // namespace gcff

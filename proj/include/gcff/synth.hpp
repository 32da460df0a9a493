#pragma once

// Synthetic annotated scenes, Gaussian perturbation and noise sweeps.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcff/geometry.hpp"
#include "gcff/params.hpp"
#include "gcff/scene.hpp"

namespace gcff {

enum class ArrangementKind { kVisAVis, kLShape, kSideBySide, kCircular, kSingleton };

// One canonical F-formation (or a lone distractor). `anchor` is the o-space
// centre; `spacing` is the distance from each member to it and defaults to
// the stride, which puts every member's transactional centre on the anchor.
// For a singleton the anchor is the person's position.
struct ArrangementSpec {
  ArrangementKind kind = ArrangementKind::kVisAVis;
  int members = 2;  // only read for kCircular, in [3, 10]
  Point anchor;
  double orientation = 0.0;
  std::optional<double> spacing;

  static ArrangementSpec vis_a_vis(Point anchor, double orientation = 0.0);
  static ArrangementSpec l_shape(Point anchor, double orientation = 0.0);
  static ArrangementSpec side_by_side(Point anchor, double orientation = 0.0);
  static ArrangementSpec circular(int n, Point anchor, double orientation = 0.0);
  static ArrangementSpec singleton(Point position, double orientation = 0.0);
};

std::string to_string(const ArrangementSpec& spec);

// Places every arrangement and labels its members as one ground-truth group
// (singletons stay ungrouped and face away from the other anchors). Person
// ids are "1", "2", ... in spec order. Throws InvalidInput when two
// arrangements' transactional segments (discs of radius sigma around each
// transactional centre) overlap, naming both specs.
Scene generate_scene(std::span<const ArrangementSpec> specs,
                     const Params& params, std::string frame_id = "0");

// Random mixed scenes: 2-4 formations drawn from the canonical kinds
// (circles of 3-6) plus 0-3 singletons, about nine people and three groups
// per frame. Each formation's spacing is drawn from [stride, stride + sigma/2].
// Frame ids are "0", "1", ...
std::vector<Scene> generate_benchmark(std::size_t count, std::uint64_t seed,
                                      const Params& params);

struct NoiseSpec {
  double sigma_x = 20.0;
  double sigma_y = 20.0;
  double sigma_theta = 0.1;
  int level = 0;
  std::uint64_t seed = 0;
};

// Adds N(0, level * sigma) to x, y and theta of every person (theta wraps).
// Ids and ground truth are unchanged; the result depends only on the seed.
Scene add_noise(const Scene& scene, const NoiseSpec& spec);

enum class NoiseMode { kPositionOnly, kOrientationOnly, kBoth };

std::string to_string(NoiseMode mode);
// Accepts position, orientation, both. Throws InvalidInput otherwise.
NoiseMode parse_noise_mode(std::string_view name);

struct SweepPoint {
  int level = 0;
  double f1 = 0.0;
};

struct SweepSample {
  int level = 0;
  double f1 = 0.0;  // per frame
};

struct NoiseSweep {
  std::vector<SweepPoint> curve;
  std::vector<SweepSample> samples;
};

// For every level, perturbs each scene per `mode` (seeded from
// noise.seed, scene index and level), detects groups, and scores aggregate F1
// at `tolerance`. Scenes must carry ground truth.
NoiseSweep noise_sweep(std::span<const Scene> scenes, const Params& params,
                       const NoiseSpec& noise, std::span<const int> levels,
                       NoiseMode mode, double tolerance);

struct Spearman {
  double rho = 0.0;
  double p_value = 1.0;  // two-sided, Student-t approximation
};

// Rank correlation with average ranks for ties.
Spearman spearman(std::span<const double> x, std::span<const double> y);

}  // namespace gcff

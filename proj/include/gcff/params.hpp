#pragma once

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace gcff {

// Solver parameters. All lengths share the unit of the scene they are applied
// to; nothing here converts units.
struct Params {
  double stride_d = 30.0;
  double sigma = 80.0;
  // Per-label activation cost. Defaults to sigma^2 so the prior stays on the
  // same scale as the squared-distance data term.
  double mdl_weight = 80.0 * 80.0;
  // Scale applied to the (dimensionless) occlusion penalty inside the
  // objective; defaults to sigma^2 for the same reason as mdl_weight.
  double visibility_weight = 80.0 * 80.0;
  double theta_hat = std::numbers::pi / 4.0;
  double k_repulsion = 1.0;
  int max_iterations = 100;
  bool visibility = true;
  // Besides the current centres and group means, propose the means that one
  // join, leave or merge would produce. Off restricts each iteration to the
  // two proposals per active group.
  bool move_proposals = true;
  // Use the gating exactly as printed (penalty only outside the cone) instead
  // of the occlusion-cone gating.
  bool literal_visibility_gate = false;

  // stride/sigma with every derived weight at its default.
  static Params with_defaults(double stride_d, double sigma);

  // Throws InvalidInput when an invariant does not hold.
  void validate() const;
};

struct ParamProfile {
  std::string_view name;
  double stride_d;
  double sigma;
};

// Tuned (stride, sigma) pairs for the public benchmark datasets.
const std::vector<ParamProfile>& param_profiles();

// Throws InvalidInput for an unknown profile name.
Params profile_params(std::string_view name);

}  // namespace gcff

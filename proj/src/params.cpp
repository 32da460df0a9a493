#include "gcff/params.hpp"

#include <cmath>

#include "gcff/errors.hpp"

namespace gcff {

Params Params::with_defaults(double stride_d, double sigma) {
  Params p;
  p.stride_d = stride_d;
  p.sigma = sigma;
  p.mdl_weight = sigma * sigma;
  p.visibility_weight = sigma * sigma;
  return p;
}

void Params::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(stride_d)) throw InvalidInput("stride must be positive");
  if (!positive(sigma)) throw InvalidInput("sigma must be positive");
  if (!positive(mdl_weight)) throw InvalidInput("mdl weight must be positive");
  if (!std::isfinite(visibility_weight) || visibility_weight < 0.0) {
    throw InvalidInput("visibility weight must be non-negative");
  }
  if (!(theta_hat > 0.0 && theta_hat <= std::numbers::pi)) {
    throw InvalidInput("theta_hat must lie in (0, pi]");
  }
  if (!std::isfinite(k_repulsion)) throw InvalidInput("K must be finite");
  if (max_iterations < 1) throw InvalidInput("max_iterations must be >= 1");
}

const std::vector<ParamProfile>& param_profiles() {
  static const std::vector<ParamProfile> kProfiles = {
      {"synthetic", 30.0, 80.0},      {"idiap_poster", 20.0, 45.0},
      {"cocktail_party", 70.0, 170.0}, {"coffee_break", 30.0, 85.0},
      {"gdet", 30.0, 200.0},
  };
  return kProfiles;
}

Params profile_params(std::string_view name) {
  for (const auto& p : param_profiles()) {
    if (p.name == name) return Params::with_defaults(p.stride_d, p.sigma);
  }
  throw InvalidInput("unknown parameter profile '" + std::string(name) + "'");
}

}  // namespace gcff

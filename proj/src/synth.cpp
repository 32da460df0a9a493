#include "gcff/synth.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <random>

#include "gcff/errors.hpp"
#include "gcff/metrics.hpp"
#include "gcff/solver.hpp"

namespace gcff {
namespace {

struct Placed {
  double x;
  double y;
  double theta;
};

Point unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

double facing(Point from, Point to) {
  return std::atan2(to.v - from.v, to.u - from.u);
}

// Members sit on a circle of radius `spacing` about the anchor, at the given
// angular offsets, facing it.
std::vector<Placed> on_circle(Point anchor, double spacing,
                              std::span<const double> angles) {
  std::vector<Placed> out;
  for (double a : angles) {
    const Point p = anchor + spacing * unit(a);
    out.push_back({p.u, p.v, facing(p, anchor)});
  }
  return out;
}

std::vector<Placed> place(const ArrangementSpec& s, const Params& params,
                          double singleton_heading) {
  const double spacing = s.spacing.value_or(params.stride_d);
  const double o = s.orientation;
  constexpr double pi = std::numbers::pi;
  switch (s.kind) {
    case ArrangementKind::kVisAVis: {
      const double a[] = {o + pi, o};
      return on_circle(s.anchor, spacing, a);
    }
    case ArrangementKind::kLShape: {
      const double a[] = {o + pi, o + pi / 2.0};
      return on_circle(s.anchor, spacing, a);
    }
    case ArrangementKind::kSideBySide: {
      // Abreast, both turned 30 degrees in towards the shared point ahead.
      const double a[] = {o + pi - pi / 6.0, o + pi + pi / 6.0};
      return on_circle(s.anchor, spacing, a);
    }
    case ArrangementKind::kCircular: {
      std::vector<double> a;
      for (int k = 0; k < s.members; ++k) {
        a.push_back(o + pi + kTwoPi * k / s.members);
      }
      return on_circle(s.anchor, spacing, a);
    }
    case ArrangementKind::kSingleton:
      return {{s.anchor.u, s.anchor.v, singleton_heading}};
  }
  return {};
}

void validate_spec(const ArrangementSpec& s) {
  if (!is_finite(s.anchor) || !std::isfinite(s.orientation)) {
    throw InvalidInput("arrangement with non-finite anchor or orientation");
  }
  if (s.spacing && !(*s.spacing > 0.0 && std::isfinite(*s.spacing))) {
    throw InvalidInput("arrangement spacing must be positive");
  }
  if (s.kind == ArrangementKind::kCircular &&
      (s.members < 3 || s.members > 10)) {
    throw InvalidInput("circular arrangements need 3 to 10 members");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

ArrangementSpec ArrangementSpec::vis_a_vis(Point anchor, double orientation) {
  return {ArrangementKind::kVisAVis, 2, anchor, orientation, std::nullopt};
}
ArrangementSpec ArrangementSpec::l_shape(Point anchor, double orientation) {
  return {ArrangementKind::kLShape, 2, anchor, orientation, std::nullopt};
}
ArrangementSpec ArrangementSpec::side_by_side(Point anchor, double orientation) {
  return {ArrangementKind::kSideBySide, 2, anchor, orientation, std::nullopt};
}
ArrangementSpec ArrangementSpec::circular(int n, Point anchor,
                                          double orientation) {
  return {ArrangementKind::kCircular, n, anchor, orientation, std::nullopt};
}
ArrangementSpec ArrangementSpec::singleton(Point position, double orientation) {
  return {ArrangementKind::kSingleton, 1, position, orientation, std::nullopt};
}

std::string to_string(const ArrangementSpec& spec) {
  std::string kind;
  switch (spec.kind) {
    case ArrangementKind::kVisAVis: kind = "vis_a_vis"; break;
    case ArrangementKind::kLShape: kind = "l_shape"; break;
    case ArrangementKind::kSideBySide: kind = "side_by_side"; break;
    case ArrangementKind::kCircular:
      kind = "circular(" + std::to_string(spec.members) + ")";
      break;
    case ArrangementKind::kSingleton: kind = "singleton"; break;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, " at (%g, %g)", spec.anchor.u, spec.anchor.v);
  return kind + buf;
}

Scene generate_scene(std::span<const ArrangementSpec> specs,
                     const Params& params, std::string frame_id) {
  params.validate();
  for (const auto& s : specs) validate_spec(s);

  std::vector<std::vector<Placed>> placed;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    double heading = specs[k].orientation;
    if (specs[k].kind == ArrangementKind::kSingleton) {
      // Face directly away from the centroid of every other anchor.
      Point sum;
      std::size_t others = 0;
      for (std::size_t o = 0; o < specs.size(); ++o) {
        if (o == k) continue;
        sum = sum + specs[o].anchor;
        ++others;
      }
      if (others > 0) {
        const Point centroid = (1.0 / static_cast<double>(others)) * sum;
        if (!(centroid == specs[k].anchor)) {
          heading = facing(centroid, specs[k].anchor);
        }
      }
    }
    placed.push_back(place(specs[k], params, heading));
  }

  // Transactional segments of different arrangements must stay disjoint.
  std::vector<std::vector<Point>> mus(placed.size());
  for (std::size_t k = 0; k < placed.size(); ++k) {
    for (const auto& p : placed[k]) {
      mus[k].push_back(Point{p.x, p.y} +
                       params.stride_d * unit(normalize_angle(p.theta)));
    }
  }
  for (std::size_t a = 0; a < mus.size(); ++a) {
    for (std::size_t b = a + 1; b < mus.size(); ++b) {
      for (const auto& ma : mus[a]) {
        for (const auto& mb : mus[b]) {
          if (distance(ma, mb) < 2.0 * params.sigma) {
            throw InvalidInput("arrangements " + std::to_string(a) + " (" +
                               to_string(specs[a]) + ") and " +
                               std::to_string(b) + " (" + to_string(specs[b]) +
                               ") overlap");
          }
        }
      }
    }
  }

  std::vector<Person> persons;
  std::vector<Group> groups;
  int next_id = 1;
  for (const auto& members : placed) {
    Group g;
    for (const auto& p : members) {
      const std::string id = std::to_string(next_id++);
      persons.emplace_back(id, p.x, p.y, p.theta);
      g.push_back(id);
    }
    if (g.size() >= 2) groups.push_back(std::move(g));
  }
  return Scene(std::move(frame_id), std::move(persons),
               GroupSet(std::move(groups)));
}

std::vector<Scene> generate_benchmark(std::size_t count, std::uint64_t seed,
                                      const Params& params) {
  params.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_int_distribution<int> n_groups(2, 4);
  std::uniform_int_distribution<int> n_singletons(0, 3);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> circle_size(3, 6);
  // Formation radius varies between the stride and stride + sigma/2.
  std::uniform_real_distribution<double> spread(0.0, 0.5 * params.sigma);
  // Room side grows with sigma so rejection sampling rarely stalls.
  const double room = 12.0 * params.sigma + 4.0 * params.stride_d;
  std::uniform_real_distribution<double> coord(0.0, room);

  std::vector<Scene> scenes;
  while (scenes.size() < count) {
    std::vector<ArrangementSpec> specs;
    const int groups = n_groups(rng);
    const int singles = n_singletons(rng);
    for (int g = 0; g < groups; ++g) {
      const Point anchor{coord(rng), coord(rng)};
      const double o = angle(rng);
      switch (kind(rng)) {
        case 0: specs.push_back(ArrangementSpec::vis_a_vis(anchor, o)); break;
        case 1: specs.push_back(ArrangementSpec::l_shape(anchor, o)); break;
        case 2: specs.push_back(ArrangementSpec::side_by_side(anchor, o)); break;
        default:
          specs.push_back(
              ArrangementSpec::circular(circle_size(rng), anchor, o));
      }
      specs.back().spacing = params.stride_d + spread(rng);
    }
    for (int s = 0; s < singles; ++s) {
      specs.push_back(
          ArrangementSpec::singleton({coord(rng), coord(rng)}, angle(rng)));
    }
    // Re-draw anchors until the arrangements fit without overlapping.
    bool placed = false;
    for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
      try {
        scenes.push_back(generate_scene(specs, params,
                                        std::to_string(scenes.size())));
        placed = true;
      } catch (const InvalidInput&) {
        for (auto& s : specs) s.anchor = {coord(rng), coord(rng)};
      }
    }
  }
  return scenes;
}

Scene add_noise(const Scene& scene, const NoiseSpec& spec) {
  if (spec.sigma_x < 0.0 || spec.sigma_y < 0.0 || spec.sigma_theta < 0.0) {
    throw InvalidInput("noise deviations must be non-negative");
  }
  if (spec.level < 0) throw InvalidInput("noise level must be non-negative");
  if (spec.level == 0) return scene;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> z(0.0, 1.0);
  const double sx = spec.level * spec.sigma_x;
  const double sy = spec.level * spec.sigma_y;
  const double st = spec.level * spec.sigma_theta;
  std::vector<Person> persons;
  persons.reserve(scene.size());
  // Three draws per person in a fixed order, whatever the deviations.
  for (const auto& p : scene.persons()) {
    const double nx = z(rng);
    const double ny = z(rng);
    const double nt = z(rng);
    persons.emplace_back(p.id(), p.x() + sx * nx, p.y() + sy * ny,
                         p.theta() + st * nt);
  }
  return scene.with_persons(std::move(persons));
}

std::string to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::kPositionOnly: return "position";
    case NoiseMode::kOrientationOnly: return "orientation";
    case NoiseMode::kBoth: return "both";
  }
  return "both";
}

NoiseMode parse_noise_mode(std::string_view name) {
  if (name == "position") return NoiseMode::kPositionOnly;
  if (name == "orientation") return NoiseMode::kOrientationOnly;
  if (name == "both") return NoiseMode::kBoth;
  throw InvalidInput("unknown noise mode '" + std::string(name) + "'");
}

NoiseSweep noise_sweep(std::span<const Scene> scenes, const Params& params,
                       const NoiseSpec& noise, std::span<const int> levels,
                       NoiseMode mode, double tolerance) {
  for (const auto& s : scenes) {
    if (!s.ground_truth()) {
      throw InvalidInput("frame '" + s.frame_id() + "' has no ground truth");
    }
  }
  NoiseSpec base = noise;
  if (mode == NoiseMode::kPositionOnly) base.sigma_theta = 0.0;
  if (mode == NoiseMode::kOrientationOnly) base.sigma_x = base.sigma_y = 0.0;

  NoiseSweep out;
  for (int level : levels) {
    std::vector<FramePair> frames;
    for (std::size_t k = 0; k < scenes.size(); ++k) {
      NoiseSpec spec = base;
      spec.level = level;
      spec.seed = splitmix64(noise.seed ^ splitmix64(k * 1000003ULL +
                                                     static_cast<unsigned>(level)));
      const Scene noisy = add_noise(scenes[k], spec);
      frames.push_back({noisy.frame_id(), *noisy.ground_truth(),
                        detect_groups(noisy, params).groups});
      out.samples.push_back(
          {level,
           precision_recall_f1(
               match_frame(frames.back().gt, frames.back().det, tolerance))
               .f1});
    }
    out.curve.push_back(
        {level, precision_recall_f1(aggregate_counts(frames, tolerance)).f1});
  }
  return out;
}

Spearman spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw InvalidInput("spearman needs two equally sized samples of 3+");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  Spearman out;
  if (sxx == 0.0 || syy == 0.0) return out;
  out.rho = sxy / std::sqrt(sxx * syy);
  const double r2 = out.rho * out.rho;
  if (r2 >= 1.0) {
    out.p_value = 0.0;
    return out;
  }
  const double t = out.rho * std::sqrt((n - 2.0) / (1.0 - r2));
  boost::math::students_t dist(n - 2.0);
  out.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return out;
}

}  // namespace gcff

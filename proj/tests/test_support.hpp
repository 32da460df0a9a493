#pragma once

// Scene builders and independent oracles shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gcff/geometry.hpp"
#include "gcff/metrics.hpp"
#include "gcff/params.hpp"
#include "gcff/scene.hpp"
#include "gcff/solver.hpp"
#include "gcff/synth.hpp"

namespace gcff::testing {

inline constexpr double kPi = std::numbers::pi;

inline Params synthetic_params() { return profile_params("synthetic"); }

inline GroupSet gset(std::vector<Group> groups) {
  return GroupSet(std::move(groups));
}

inline Params j_only(Params p) {
  p.visibility = false;
  return p;
}

// n people uniformly placed in a side x side square with uniform headings.
inline Scene random_scene(std::mt19937_64& rng, std::size_t n, double side,
                          const std::string& frame = "r") {
  std::uniform_real_distribution<double> c(0.0, side);
  std::uniform_real_distribution<double> a(0.0, kTwoPi);
  std::vector<Person> ps;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = c(rng);
    const double y = c(rng);
    ps.emplace_back(std::to_string(i + 1), x, y, a(rng));
  }
  return Scene(frame, std::move(ps));
}

// Eleven people: a vis-a-vis pair (1,2), an L-shaped pair (3,4), a
// side-by-side pair (5,6), a three-person circle (7,8,9) with person 10
// standing right behind 7 and facing the same o-space, and a lone person 11.
// Units and spacing follow the synthetic profile (stride 30).
inline Scene blocked_outsider_scene() {
  const std::vector<ArrangementSpec> specs = {
      ArrangementSpec::vis_a_vis({0.0, 0.0}),
      ArrangementSpec::l_shape({400.0, 0.0}),
      ArrangementSpec::side_by_side({800.0, 0.0}, kPi / 2.0),
      ArrangementSpec::circular(3, {400.0, -400.0}, -kPi / 2.0),
  };
  const Scene base = generate_scene(specs, synthetic_params(), "fig");
  auto persons = base.persons();
  // Person 7 stands at (400, -370) facing -y; 10 stands 45 further out.
  const Person& seven = persons[6];
  persons.emplace_back("10", seven.x(), seven.y() + 45.0, seven.theta());
  persons.emplace_back("11", 0.0, -400.0, kPi);
  return Scene("fig", std::move(persons), base.ground_truth());
}

// Minimum J' over every map person -> candidate (L^n of them).
inline double enumerate_assignments(const Scene& scene,
                                    const std::vector<Point>& candidates,
                                    const Params& params) {
  const std::size_t n = scene.size();
  const std::size_t L = candidates.size();
  std::vector<std::size_t> digits(n, 0);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    Assignment a;
    a.centers = candidates;
    for (auto d : digits) a.label_of.push_back(static_cast<int>(d));
    best = std::min(best, total_cost(scene, a, params));
    std::size_t k = 0;
    while (k < n && ++digits[k] == L) digits[k++] = 0;
    if (k == n) break;
  }
  return best;
}

// Largest number of disjoint (gt, det) pairs satisfying the tolerant match,
// by trying every injective partial map from gt groups to det groups.
inline std::size_t max_matching(const GroupSet& gt, const GroupSet& det,
                                double tolerance, bool (*matches)(const Group&,
                                                                  const Group&,
                                                                  double)) {
  const auto& g = gt.groups();
  const auto& d = det.groups();
  std::vector<bool> used(d.size(), false);
  std::size_t best = 0;
  auto rec = [&](auto& self, std::size_t gi, std::size_t found) -> void {
    if (gi == g.size()) {
      best = std::max(best, found);
      return;
    }
    self(self, gi + 1, found);
    for (std::size_t di = 0; di < d.size(); ++di) {
      if (used[di] || !matches(g[gi], d[di], tolerance)) continue;
      used[di] = true;
      self(self, gi + 1, found + 1);
      used[di] = false;
    }
  };
  rec(rec, 0, 0);
  return best;
}

// Applies x -> R(angle) x + shift to every person (headings rotate too).
inline Scene rigid_motion(const Scene& s, double angle, Point shift) {
  const double c = std::cos(angle), sn = std::sin(angle);
  std::vector<Person> ps;
  for (const auto& p : s.persons()) {
    ps.emplace_back(p.id(), c * p.x() - sn * p.y() + shift.u,
                    sn * p.x() + c * p.y() + shift.v, p.theta() + angle);
  }
  return s.with_persons(std::move(ps));
}

inline Scene scaled(const Scene& s, double factor) {
  std::vector<Person> ps;
  for (const auto& p : s.persons()) {
    ps.emplace_back(p.id(), factor * p.x(), factor * p.y(), p.theta());
  }
  return s.with_persons(std::move(ps));
}

inline Scene reversed_order(const Scene& s) {
  std::vector<Person> ps(s.persons().rbegin(), s.persons().rend());
  return s.with_persons(std::move(ps));
}

// Three hand-scored frames. Expected totals (tp, fp, fn) per tolerance:
//   1/2: 6 1 0   2/3: 5 2 1   5/6: 3 4 3   1: 2 5 4
inline std::vector<FramePair> metric_fixture() {
  return {
      {"A", gset({{"1", "2", "3", "4", "5", "6"}, {"7", "8"}}),
       gset({{"1", "2", "3", "4", "5", "9"}, {"7", "8"}})},
      {"B", gset({{"1", "2", "3"}, {"4", "5"}}),
       gset({{"1", "2"}, {"3", "4", "5"}})},
      {"C", gset({{"1", "2"}, {"5", "6", "7", "8"}}),
       gset({{"1", "2"}, {"3", "4"}, {"5", "6", "7"}})},
  };
}

struct FixtureRow {
  double tolerance;
  MatchCounts counts;
};

inline const std::vector<FixtureRow>& metric_fixture_counts() {
  static const std::vector<FixtureRow> rows = {
      {1.0 / 2.0, {6, 1, 0}},
      {2.0 / 3.0, {5, 2, 1}},
      {5.0 / 6.0, {3, 4, 3}},
      {1.0, {2, 5, 4}},
  };
  return rows;
}

// Random partition of ids 1..n into groups, some ids left out.
inline GroupSet random_groups(std::mt19937_64& rng, int n) {
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(ids.begin(), ids.end(), rng);
  std::uniform_int_distribution<int> size(1, 6);
  std::vector<Group> groups;
  std::size_t at = 0;
  while (at < ids.size()) {
    const auto k = static_cast<std::size_t>(size(rng));
    if (k >= 2 && at + k <= ids.size()) {
      Group g;
      for (std::size_t j = 0; j < k; ++j) g.push_back(std::to_string(ids[at + j]));
      groups.push_back(std::move(g));
    }
    at += k;
  }
  return GroupSet(std::move(groups));
}

}  // namespace gcff::testing

#include <doctest.h>

#include <random>

#include "gcff/errors.hpp"
#include "gcff/geometry.hpp"
#include "gcff/params.hpp"
#include "gcff/scene.hpp"
#include "test_support.hpp"

using namespace gcff;
using gcff::testing::gset;
using gcff::testing::kPi;

TEST_CASE("transactional centre lies one stride ahead") {
  auto c = transactional_center(Person("1", 0, 0, 0), 30);
  CHECK(c.u == doctest::Approx(30));
  CHECK(c.v == doctest::Approx(0));

  c = transactional_center(Person("1", 10, 20, kPi / 2), 30);
  CHECK(c.u == doctest::Approx(10));
  CHECK(c.v == doctest::Approx(50));

  c = transactional_center(Person("1", 0, 0, kPi), 20);
  CHECK(c.u == doctest::Approx(-20));
  CHECK(c.v == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("transactional centre rejects bad input") {
  CHECK_THROWS_AS(transactional_center(Person("1", NAN, 0, 0), 30), InvalidInput);
  CHECK_THROWS_AS(transactional_center(Person("1", 0, INFINITY, 0), 30),
                  InvalidInput);
  CHECK_THROWS_AS(transactional_center(Person("1", 0, 0, 0), 0), InvalidInput);
}

TEST_CASE("angle about a centre") {
  CHECK(angle_about({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(kPi / 2));
  CHECK(angle_about({0, 0}, {1, 0}, {2, 0}) == doctest::Approx(0));
  CHECK(angle_about({0, 0}, {1, 0}, {-3, 0}) == doctest::Approx(kPi));
  CHECK_THROWS_AS(angle_about({1, 1}, {1, 1}, {0, 0}), DegenerateGeometry);
  CHECK_THROWS_AS(angle_about({1, 1}, {0, 0}, {1, 1}), DegenerateGeometry);
}

TEST_CASE("distance") {
  CHECK(distance({0, 0}, {3, 4}) == 5);
  CHECK(distance({2, 2}, {2, 2}) == 0);
  CHECK(distance({-1, 0}, {1, 0}) == 2);
}

TEST_CASE("heading is normalized to [0, 2pi)") {
  CHECK(Person("a", 0, 0, -kPi / 2).theta() == doctest::Approx(3 * kPi / 2));
  CHECK(Person("a", 0, 0, kTwoPi).theta() == 0.0);
  CHECK(Person("a", 0, 0, 5 * kPi).theta() == doctest::Approx(kPi));
  CHECK(Person("a", 0, 0, -1e-18).theta() < kTwoPi);
}

TEST_CASE("geometry properties on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> c(-1000, 1000), a(-10, 10),
      d(0.1, 500);
  for (int k = 0; k < 2000; ++k) {
    const Person p("p", c(rng), c(rng), a(rng));
    const double stride = d(rng);
    const Point mu = transactional_center(p, stride);
    CHECK(distance(p.position(), mu) == doctest::Approx(stride).epsilon(1e-9));

    // Rigid motion commutes with the transactional centre.
    const double rot = a(rng);
    const Point shift{c(rng), c(rng)};
    auto move = [&](Point q) {
      return Point{std::cos(rot) * q.u - std::sin(rot) * q.v + shift.u,
                   std::sin(rot) * q.u + std::cos(rot) * q.v + shift.v};
    };
    const Point moved_pos = move(p.position());
    const Person q("p", moved_pos.u, moved_pos.v, p.theta() + rot);
    const Point expect = move(mu);
    const Point got = transactional_center(q, stride);
    CHECK(distance(expect, got) <= 1e-9 * (1000 + stride));

    const Point ctr{c(rng), c(rng)}, pa{c(rng), c(rng)}, pb{c(rng), c(rng)};
    const double ab = angle_about(ctr, pa, pb);
    CHECK(ab == angle_about(ctr, pb, pa));
    CHECK(ab >= 0.0);
    CHECK(ab <= kPi);
  }
}

TEST_CASE("group sets are canonical, disjoint and at least pairs") {
  const GroupSet g({{"3", "1"}, {"10", "2", "4"}});
  REQUIRE(g.size() == 2);
  CHECK(g.groups()[0] == Group{"1", "3"});
  CHECK(g.groups()[1] == Group{"2", "4", "10"});

  CHECK_THROWS_AS(gset({{"1", "2"}, {"2", "3"}}), InvalidInput);
  CHECK_THROWS_AS(gset({{"1"}}), InvalidInput);
  CHECK_THROWS_AS(gset({{"1", "1"}}), InvalidInput);

  const std::vector<PersonId> ids = {"a", "b", "c", "d", "e"};
  const std::vector<int> labels = {4, 0, 4, 2, 0};
  const auto from = GroupSet::from_labels(ids, labels);
  CHECK(from == gset({{"a", "c"}, {"b", "e"}}));
}

TEST_CASE("natural id order") {
  CHECK(id_less("2", "10"));
  CHECK_FALSE(id_less("10", "2"));
  CHECK(id_less("9", "a"));
  CHECK(id_less("alice", "bob"));
  CHECK(id_less("007", "7"));  // equal value, tie broken lexicographically
}

TEST_CASE("scene invariants") {
  CHECK_THROWS_AS(Scene("f", {Person("1", 0, 0, 0), Person("1", 1, 1, 0)}),
                  InvalidInput);
  CHECK_THROWS_AS(
      Scene("f", {Person("1", 0, 0, 0), Person("2", 1, 1, 0)},
            gset({{"1", "3"}})),
      InvalidInput);
  const Scene ok("f", {Person("1", 0, 0, 0), Person("2", 1, 1, 0)},
                 gset({{"1", "2"}}));
  CHECK(ok.size() == 2);
  CHECK(ok.ids() == std::vector<PersonId>{"1", "2"});
}

TEST_CASE("parameter profiles") {
  struct Row {
    const char* name;
    double stride, sigma;
  };
  for (const Row& r : {Row{"synthetic", 30, 80}, Row{"idiap_poster", 20, 45},
                       Row{"cocktail_party", 70, 170}, Row{"coffee_break", 30, 85},
                       Row{"gdet", 30, 200}}) {
    const auto p = profile_params(r.name);
    CHECK(p.stride_d == r.stride);
    CHECK(p.sigma == r.sigma);
    CHECK(p.mdl_weight == r.sigma * r.sigma);
  }
  CHECK_THROWS_AS(profile_params("nope"), InvalidInput);

  Params p = profile_params("synthetic");
  p.theta_hat = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = profile_params("synthetic");
  p.max_iterations = 0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = profile_params("synthetic");
  p.mdl_weight = -1;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
}

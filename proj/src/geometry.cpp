#include "gcff/geometry.hpp"

#include <algorithm>
#include <utility>

#include "gcff/errors.hpp"

namespace gcff {

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod of a tiny negative value can round back up to exactly 2pi.
  if (t >= kTwoPi) t = 0.0;
  return t;
}

Person::Person(std::string id, double x, double y, double theta)
    : id_(std::move(id)), x_(x), y_(y), theta_(theta) {
  if (std::isfinite(theta_)) theta_ = normalize_angle(theta_);
}

double distance(Point a, Point b) { return std::hypot(a.u - b.u, a.v - b.v); }

Point transactional_center(const Person& p, double stride) {
  if (!std::isfinite(p.x()) || !std::isfinite(p.y()) ||
      !std::isfinite(p.theta())) {
    throw InvalidInput("person '" + p.id() + "' has non-finite coordinates");
  }
  if (!(stride > 0.0) || !std::isfinite(stride)) {
    throw InvalidInput("stride must be positive and finite");
  }
  return {p.x() + stride * std::cos(p.theta()),
          p.y() + stride * std::sin(p.theta())};
}

double angle_about(Point center, Point a, Point b) {
  const Point da = a - center;
  const Point db = b - center;
  if ((da.u == 0.0 && da.v == 0.0) || (db.u == 0.0 && db.v == 0.0)) {
    throw DegenerateGeometry("angle about a centre coincident with an arm");
  }
  // atan2 of cross/dot is accurate near 0 and pi, unlike acos.
  const double cross = da.u * db.v - da.v * db.u;
  const double dot = da.u * db.u + da.v * db.v;
  return std::clamp(std::atan2(std::abs(cross), dot), 0.0,
                    std::numbers::pi);
}

}  // namespace gcff

#pragma once

// Planar geometry about candidate o-space centres.

#include <cmath>
#include <numbers>
#include <string>

namespace gcff {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.u + b.u, a.v + b.v}; }
inline Point operator-(Point a, Point b) { return {a.u - b.u, a.v - b.v}; }
inline Point operator*(double s, Point p) { return {s * p.u, s * p.v}; }

inline bool is_finite(Point p) {
  return std::isfinite(p.u) && std::isfinite(p.v);
}

// Wraps an angle into [0, 2pi).
double normalize_angle(double theta);

// One individual's proxemic state. Orientation is radians, counter-clockwise
// from +x, and is normalized to [0, 2pi) on construction.
class Person {
 public:
  Person() = default;
  Person(std::string id, double x, double y, double theta);

  const std::string& id() const { return id_; }
  double x() const { return x_; }
  double y() const { return y_; }
  double theta() const { return theta_; }
  Point position() const { return {x_, y_}; }

  friend bool operator==(const Person&, const Person&) = default;

 private:
  std::string id_;
  double x_ = 0.0;
  double y_ = 0.0;
  double theta_ = 0.0;
};

double distance(Point a, Point b);

// Centre of the person's transactional segment: `stride` ahead along the
// head orientation. Throws InvalidInput on non-finite coordinates or a
// non-positive stride.
Point transactional_center(const Person& p, double stride);

// Unsigned angle in [0, pi] between (a - center) and (b - center). Throws
// DegenerateGeometry when a or b coincides with center.
double angle_about(Point center, Point a, Point b);

}  // namespace gcff

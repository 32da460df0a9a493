#include "gcff/render.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace gcff {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double cross(Point o, Point a, Point b) {
  return (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u);
}

// Andrew's monotone chain, counter-clockwise.
std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.u < b.u || (a.u == b.u && a.v < b.v);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

std::string render_svg(const Scene& scene, const Detection& detection,
                       const Params& params) {
  const auto& persons = scene.persons();
  const double glyph = 0.25 * params.stride_d;

  double lo_u = std::numeric_limits<double>::infinity(), lo_v = lo_u;
  double hi_u = -lo_u, hi_v = -lo_u;
  auto extend = [&](Point p) {
    lo_u = std::min(lo_u, p.u);
    lo_v = std::min(lo_v, p.v);
    hi_u = std::max(hi_u, p.u);
    hi_v = std::max(hi_v, p.v);
  };
  for (const auto& p : persons) {
    extend(p.position());
    extend(transactional_center(p, params.stride_d));
  }
  if (persons.empty()) lo_u = lo_v = hi_u = hi_v = 0.0;
  const double margin = 2.0 * params.stride_d;
  // SVG's y axis points down; scene y is flipped on output.
  const double x0 = lo_u - margin;
  const double y0 = -hi_v - margin;
  const double w = hi_u - lo_u + 2 * margin;
  const double h = hi_v - lo_v + 2 * margin;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0) << ' '
      << num(y0) << ' ' << num(w) << ' ' << num(h) << "\">\n";
  out << "<title>frame " << escape(scene.frame_id()) << "</title>\n";

  std::vector<std::size_t> index_of;
  const auto ids = scene.ids();
  for (const auto& g : detection.groups.groups()) {
    std::vector<Point> pts;
    for (const auto& id : g) {
      const auto it = std::find(ids.begin(), ids.end(), id);
      pts.push_back(persons[static_cast<std::size_t>(it - ids.begin())].position());
    }
    out << "<polygon class=\"hull\" fill=\"#4a90d9\" fill-opacity=\"0.15\" "
           "stroke=\"#4a90d9\" stroke-width=\""
        << num(glyph / 3) << "\" points=\"";
    const auto hull = convex_hull(pts);
    for (std::size_t k = 0; k < hull.size(); ++k) {
      if (k) out << ' ';
      out << num(hull[k].u) << ',' << num(-hull[k].v);
    }
    out << "\"/>\n";
  }

  // O-space centres of labels shared by two or more people.
  const auto& asg = detection.assignment;
  std::vector<int> members(asg.centers.size(), 0);
  for (int l : asg.label_of) ++members[static_cast<std::size_t>(l)];
  for (std::size_t l = 0; l < asg.centers.size(); ++l) {
    if (members[l] < 2) continue;
    const Point c = asg.centers[l];
    out << "<path class=\"ospace\" stroke=\"#d0021b\" stroke-width=\""
        << num(glyph / 3) << "\" d=\"M" << num(c.u - glyph) << ','
        << num(-c.v - glyph) << " L" << num(c.u + glyph) << ','
        << num(-c.v + glyph) << " M" << num(c.u - glyph) << ','
        << num(-c.v + glyph) << " L" << num(c.u + glyph) << ','
        << num(-c.v - glyph) << "\"/>\n";
  }

  for (const auto& p : persons) {
    const Point mu = transactional_center(p, params.stride_d);
    out << "<circle class=\"segment\" cx=\"" << num(mu.u) << "\" cy=\""
        << num(-mu.v) << "\" r=\"" << num(glyph / 2)
        << "\" fill=\"#888888\"/>\n";
  }
  for (const auto& p : persons) {
    const Point tip = p.position() + glyph * 2.0 *
                                         Point{std::cos(p.theta()), std::sin(p.theta())};
    out << "<g class=\"person\" id=\"person-" << escape(p.id()) << "\">"
        << "<circle cx=\"" << num(p.x()) << "\" cy=\"" << num(-p.y())
        << "\" r=\"" << num(glyph) << "\" fill=\"#ffffff\" stroke=\"#000000\" "
        << "stroke-width=\"" << num(glyph / 4) << "\"/>"
        << "<line x1=\"" << num(p.x()) << "\" y1=\"" << num(-p.y())
        << "\" x2=\"" << num(tip.u) << "\" y2=\"" << num(-tip.v)
        << "\" stroke=\"#000000\" stroke-width=\"" << num(glyph / 4) << "\"/>"
        << "<text x=\"" << num(p.x()) << "\" y=\"" << num(-p.y() - 1.5 * glyph)
        << "\" font-size=\"" << num(glyph) << "\" text-anchor=\"middle\">"
        << escape(p.id()) << "</text></g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace gcff

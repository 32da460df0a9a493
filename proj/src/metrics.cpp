#include "gcff/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gcff/errors.hpp"

namespace gcff {
namespace {

void check_tolerance(double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw InvalidInput("tolerance must lie in (0, 1]");
  }
}

std::size_t overlap(const Group& a, const Group& b) {
  std::size_t n = 0;
  for (const auto& id : a) {
    if (std::find(b.begin(), b.end(), id) != b.end()) ++n;
  }
  return n;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::size_t required_members(double tolerance, std::size_t group_size) {
  check_tolerance(tolerance);
  const double need = tolerance * static_cast<double>(group_size);
  return static_cast<std::size_t>(std::ceil(need - 1e-9));
}

bool group_matches(const Group& gt, const Group& det, double tolerance) {
  const std::size_t need = required_members(tolerance, gt.size());
  const std::size_t common = overlap(gt, det);
  const std::size_t false_subjects = det.size() - common;
  return common >= need && false_subjects <= gt.size() - need;
}

FrameMatch match_groups(const GroupSet& gt, const GroupSet& det,
                        double tolerance) {
  check_tolerance(tolerance);
  const auto& g = gt.groups();
  const auto& d = det.groups();
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  // Groups are canonical, so index order already breaks ties by smallest id.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g[a].size() > g[b].size();
  });

  FrameMatch out;
  std::vector<bool> taken(d.size(), false);
  for (std::size_t gi : order) {
    std::size_t best = d.size();
    std::size_t best_overlap = 0;
    for (std::size_t di = 0; di < d.size(); ++di) {
      if (taken[di] || !group_matches(g[gi], d[di], tolerance)) continue;
      const std::size_t ov = overlap(g[gi], d[di]);
      if (best == d.size() || ov > best_overlap) {
        best = di;
        best_overlap = ov;
      }
    }
    if (best != d.size()) {
      taken[best] = true;
      out.pairs.emplace_back(gi, best);
    }
  }
  out.counts.tp = out.pairs.size();
  out.counts.fn = g.size() - out.pairs.size();
  out.counts.fp = d.size() - out.pairs.size();
  return out;
}

Rates precision_recall_f1(const MatchCounts& c) {
  Rates r;
  r.precision = ratio(c.tp, c.tp + c.fp);
  r.recall = ratio(c.tp, c.tp + c.fn);
  const double s = r.precision + r.recall;
  r.f1 = s == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / s;
  return r;
}

MatchCounts aggregate_counts(std::span<const FramePair> frames,
                             double tolerance) {
  MatchCounts total;
  for (const auto& f : frames) total += match_frame(f.gt, f.det, tolerance);
  return total;
}

double gtm_from_curve(std::span<const double> f1) {
  if (f1.size() < 2) throw InvalidInput("GTM needs at least two curve points");
  double area = 0.0;
  for (std::size_t k = 1; k < f1.size(); ++k) area += 0.5 * (f1[k - 1] + f1[k]);
  return area / static_cast<double>(f1.size() - 1);
}

double gtm(std::span<const FramePair> frames) {
  if (frames.empty()) throw InvalidInput("GTM needs at least one frame");
  std::array<double, kGtmTolerances.size()> curve{};
  for (std::size_t k = 0; k < kGtmTolerances.size(); ++k) {
    curve[k] =
        precision_recall_f1(aggregate_counts(frames, kGtmTolerances[k])).f1;
  }
  return gtm_from_curve(curve);
}

CardinalityReport cardinality_report(std::span<const FramePair> frames,
                                     double tolerance) {
  std::map<std::size_t, MatchCounts> by_size;
  std::set<std::size_t> present;
  for (const auto& f : frames) {
    const auto m = match_groups(f.gt, f.det, tolerance);
    const auto& g = f.gt.groups();
    const auto& d = f.det.groups();
    std::vector<bool> gt_hit(g.size(), false);
    std::vector<bool> det_hit(d.size(), false);
    for (auto [gi, di] : m.pairs) {
      gt_hit[gi] = true;
      det_hit[di] = true;
      ++by_size[g[gi].size()].tp;
    }
    for (std::size_t gi = 0; gi < g.size(); ++gi) {
      present.insert(g[gi].size());
      if (!gt_hit[gi]) ++by_size[g[gi].size()].fn;
    }
    for (std::size_t di = 0; di < d.size(); ++di) {
      if (!det_hit[di]) ++by_size[d[di].size()].fp;
    }
  }

  CardinalityReport out;
  for (std::size_t k : present) {
    CardinalityRow row;
    row.cardinality = k;
    row.counts = by_size[k];
    row.f1 = precision_recall_f1(row.counts).f1;
    out.rows.push_back(row);
  }
  if (!out.rows.empty()) {
    double sum = 0.0;
    for (const auto& r : out.rows) sum += r.f1;
    out.mean = sum / static_cast<double>(out.rows.size());
    double var = 0.0;
    for (const auto& r : out.rows) var += (r.f1 - out.mean) * (r.f1 - out.mean);
    out.stddev = std::sqrt(var / static_cast<double>(out.rows.size()));
  }
  return out;
}

EvalReport evaluate(std::span<const FramePair> frames, double tolerance,
                    bool with_gtm, bool with_cardinality) {
  check_tolerance(tolerance);
  EvalReport report;
  report.tolerance = tolerance;
  for (const auto& f : frames) {
    FrameScore s;
    s.frame_id = f.frame_id;
    s.counts = match_frame(f.gt, f.det, tolerance);
    s.rates = precision_recall_f1(s.counts);
    report.total += s.counts;
    report.frames.push_back(std::move(s));
  }
  report.aggregate = precision_recall_f1(report.total);
  if (with_gtm && !frames.empty()) {
    std::array<double, 4> curve{};
    for (std::size_t k = 0; k < kGtmTolerances.size(); ++k) {
      curve[k] =
          precision_recall_f1(aggregate_counts(frames, kGtmTolerances[k])).f1;
    }
    report.gtm_curve = curve;
    report.gtm = gtm_from_curve(curve);
  }
  if (with_cardinality) {
    report.cardinality = cardinality_report(frames, tolerance);
  }
  return report;
}

}  // namespace gcff

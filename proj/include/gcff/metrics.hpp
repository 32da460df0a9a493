#pragma once

// Tolerant-match scoring of detected groups against ground truth.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gcff/scene.hpp"

namespace gcff {

struct MatchCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  MatchCounts& operator+=(const MatchCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const MatchCounts&, const MatchCounts&) = default;
};

struct Rates {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// One ground-truth / detection pair of a frame.
struct FramePair {
  std::string frame_id;
  GroupSet gt;
  GroupSet det;
};

// ceil(T * |G|), robust to T being a rounded fraction such as 2/3.
std::size_t required_members(double tolerance, std::size_t group_size);

// A detected group matches a ground-truth group when it holds at least
// ceil(T|G|) true members and no more than |G| - ceil(T|G|) false ones.
// Throws InvalidInput for T outside (0, 1].
bool group_matches(const Group& gt, const Group& det, double tolerance);

// Indices of matched (gt, det) groups plus the resulting counts.
struct FrameMatch {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  MatchCounts counts;
};

// One-to-one greedy matching: ground-truth groups in descending size (ties by
// smallest member) each claim the unmatched detected group with the largest
// overlap that satisfies group_matches (ties to the lower detected index).
FrameMatch match_groups(const GroupSet& gt, const GroupSet& det,
                        double tolerance);

inline MatchCounts match_frame(const GroupSet& gt, const GroupSet& det,
                               double tolerance) {
  return match_groups(gt, det, tolerance).counts;
}

// 0/0 is taken as 0 throughout.
Rates precision_recall_f1(const MatchCounts& counts);

// Micro-averaged counts over all frames.
MatchCounts aggregate_counts(std::span<const FramePair> frames,
                             double tolerance);

inline constexpr std::array<double, 4> kGtmTolerances = {1.0 / 2.0, 2.0 / 3.0,
                                                         5.0 / 6.0, 1.0};

// Normalized trapezoidal area under F1(T) sampled at kGtmTolerances.
double gtm_from_curve(std::span<const double> f1_at_tolerances);

// Global tolerant matching score over a set of frames.
double gtm(std::span<const FramePair> frames);

struct CardinalityRow {
  std::size_t cardinality = 0;
  MatchCounts counts;
  double f1 = 0.0;
};

struct CardinalityReport {
  std::vector<CardinalityRow> rows;  // one per ground-truth cardinality
  double mean = 0.0;
  double stddev = 0.0;               // population
};

// Per-cardinality F1. Matched detections count toward the size of the ground
// truth they match; unmatched detections count as false positives of their
// own size.
CardinalityReport cardinality_report(std::span<const FramePair> frames,
                                     double tolerance);

struct FrameScore {
  std::string frame_id;
  MatchCounts counts;
  Rates rates;
};

struct EvalReport {
  double tolerance = 2.0 / 3.0;
  std::vector<FrameScore> frames;
  MatchCounts total;
  Rates aggregate;
  std::optional<double> gtm;
  std::optional<std::array<double, 4>> gtm_curve;
  std::optional<CardinalityReport> cardinality;
};

EvalReport evaluate(std::span<const FramePair> frames, double tolerance,
                    bool with_gtm, bool with_cardinality);

}  // namespace gcff

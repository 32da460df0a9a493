#pragma once

// Label-cost clustering of people around shared o-space centres.
//
// The objective for an assignment of people to centres is
//
//   J'(O | TS) = sum_i |O_{G_i} - mu_i|^2            (data term)
//              + mdl_weight * |active centres|        (model-selection prior)
//              + visibility_weight * sum_i R_i(O_{G_i})  (occlusion penalty)
//
// where mu_i is person i's transactional centre. Every term is unary in the
// person (R_i depends on everyone's position but not on their labels), so
// for a fixed candidate set the assignment step is an uncapacitated facility
// location problem: pick a subset of centres, pay mdl_weight for each, and
// let every person take its cheapest open centre.

#include <cstddef>
#include <span>
#include <vector>

#include "gcff/geometry.hpp"
#include "gcff/params.hpp"
#include "gcff/scene.hpp"

namespace gcff {

// label_of[i] indexes centers. Centers not referenced by any person are
// inactive and cost nothing.
struct Assignment {
  std::vector<int> label_of;
  std::vector<Point> centers;

  std::size_t active_count() const;
};

struct SolveTrace {
  // J' of the initial state followed by every accepted iteration.
  std::vector<double> objective;
  int iterations = 0;
  bool converged = false;
  // Person pairs in the final state where the blocker stands on the centre.
  int degenerate_pairs = 0;
};

struct Detection {
  GroupSet groups;
  SolveTrace trace;
  Assignment assignment;
};

struct BruteForceResult {
  GroupSet groups;
  double cost = 0.0;
  std::vector<int> labels;
};

// Largest candidate pool solved by exhaustive subset enumeration.
inline constexpr std::size_t kExactLabelLimit = 16;
// Largest scene whose assignment step is solved exactly for any pool size.
inline constexpr std::size_t kExactPersonLimit = 14;
// Largest scene brute_force_detect agrees to enumerate.
inline constexpr std::size_t kBruteForceLimit = 10;

double data_cost(const Person& p, Point center, const Params& params);

struct VisibilityTerm {
  double cost = 0.0;
  int degenerate_pairs = 0;
};

// Occlusion penalty sum_{j != i} R_ij for person i joining `center`, before
// visibility_weight is applied. A j standing exactly on the centre is
// treated as non-blocking and reported in degenerate_pairs.
VisibilityTerm visibility_term(std::size_t i, const Scene& scene, Point center,
                               const Params& params);

inline double visibility_cost(std::size_t i, const Scene& scene, Point center,
                              const Params& params) {
  return visibility_term(i, scene, center, params).cost;
}

// Data + visibility cost for person i joining `center`, as it enters J'.
double unary_cost(std::size_t i, const Scene& scene, Point center,
                  const Params& params);

// J' of a complete assignment. Throws std::logic_error on a label that does
// not index a centre, or a size mismatch with the scene.
double total_cost(const Scene& scene, const Assignment& asg,
                  const Params& params);

// One assignment step over the candidate centres. Unused candidates are
// dropped from the returned assignment. The result never costs more than
// `warm_start` (whose centres are added to the pool when missing); pools of
// up to kExactLabelLimit candidates are solved exactly. Throws InvalidInput
// on an empty candidate list.
Assignment assign_labels(const Scene& scene, std::span<const Point> candidates,
                         const Assignment& warm_start, const Params& params);
Assignment assign_labels(const Scene& scene, std::span<const Point> candidates,
                         const Params& params);

// Mean transactional centre of each non-empty label, in label order.
std::vector<Point> update_centers(const Scene& scene, const Assignment& asg,
                                  const Params& params);

// Alternates assignment and centre updates from one centre per person until
// J' stops decreasing. Singleton labels are dropped from the groups.
Detection detect_groups(const Scene& scene, const Params& params);

// Exact minimum of J' over all set partitions, with each block's centre at the
// mean of its members' transactional centres. Throws SizeError above
// kBruteForceLimit persons.
BruteForceResult brute_force_detect(const Scene& scene, const Params& params);

namespace detail {

// Row-major person x candidate matrix of unary costs.
struct UnaryTable {
  std::size_t persons = 0;
  std::size_t labels = 0;
  std::vector<double> cost;

  double at(std::size_t i, std::size_t l) const {
    return cost[i * labels + l];
  }
};

UnaryTable build_unary_table(const Scene& scene,
                             std::span<const Point> candidates,
                             const Params& params);

// Open-label subsets, as sorted candidate indices.
std::vector<std::size_t> exact_label_subset(const UnaryTable& table,
                                            double label_cost);
std::vector<std::size_t> exact_person_partition(const UnaryTable& table,
                                                double label_cost);
std::vector<std::size_t> local_search_label_subset(
    const UnaryTable& table, double label_cost,
    std::vector<std::size_t> start);

double subset_cost(const UnaryTable& table, double label_cost,
                   std::span<const std::size_t> open);

}  // namespace detail

}  // namespace gcff

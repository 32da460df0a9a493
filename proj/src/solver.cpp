#include "gcff/solver.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gcff/errors.hpp"

namespace gcff {
namespace {

constexpr double kConvergenceTolerance = 1e-9;

// Two candidates closer than this (relative to their magnitude) are merged
// when building a proposal pool.
constexpr double kDuplicateTolerance = 1e-9;

bool near_duplicate(Point a, Point b) {
  const double scale =
      std::max({1.0, std::abs(a.u), std::abs(a.v), std::abs(b.u), std::abs(b.v)});
  return std::abs(a.u - b.u) <= kDuplicateTolerance * scale &&
         std::abs(a.v - b.v) <= kDuplicateTolerance * scale;
}

void append_unique(std::vector<Point>& pool, Point p) {
  for (const auto& q : pool) {
    if (near_duplicate(p, q)) return;
  }
  pool.push_back(p);
}

std::vector<Point> transactional_centers(const Scene& scene,
                                         const Params& params) {
  std::vector<Point> mus;
  mus.reserve(scene.size());
  for (const auto& p : scene.persons()) {
    mus.push_back(transactional_center(p, params.stride_d));
  }
  return mus;
}

// Centres that would follow one local change of the current partition: a
// person joining or leaving a group, or two groups merging.
std::vector<Point> move_proposals(const Scene& scene, const Assignment& asg,
                                  const Params& params) {
  const auto mus = transactional_centers(scene, params);
  std::vector<std::vector<std::size_t>> members(asg.centers.size());
  for (std::size_t i = 0; i < scene.size(); ++i) {
    members[static_cast<std::size_t>(asg.label_of[i])].push_back(i);
  }
  std::erase_if(members, [](const auto& m) { return m.empty(); });
  auto mean_of = [&](std::span<const std::size_t> idx, std::size_t extra,
                     std::size_t skip) {
    Point sum;
    double count = 0.0;
    for (std::size_t i : idx) {
      if (i == skip) continue;
      sum = sum + mus[i];
      count += 1.0;
    }
    if (extra < mus.size()) {
      sum = sum + mus[extra];
      count += 1.0;
    }
    return (1.0 / count) * sum;
  };
  const std::size_t none = mus.size();
  std::vector<Point> out;
  for (std::size_t g = 0; g < members.size(); ++g) {
    const auto& m = members[g];
    for (std::size_t i = 0; i < mus.size(); ++i) {
      const bool inside = std::find(m.begin(), m.end(), i) != m.end();
      if (!inside) {
        out.push_back(mean_of(m, i, none));
      } else if (m.size() > 2) {
        out.push_back(mean_of(m, none, i));
      }
    }
    for (std::size_t h = g + 1; h < members.size(); ++h) {
      std::vector<std::size_t> both = m;
      both.insert(both.end(), members[h].begin(), members[h].end());
      out.push_back(mean_of(both, none, none));
    }
  }
  return out;
}

// Each person takes its cheapest open label; ties go to the lower index.
std::vector<int> best_labels(const detail::UnaryTable& table,
                             std::span<const std::size_t> open) {
  std::vector<int> labels(table.persons, -1);
  for (std::size_t i = 0; i < table.persons; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t l : open) {
      const double c = table.at(i, l);
      if (c < best) {
        best = c;
        labels[i] = static_cast<int>(l);
      }
    }
  }
  return labels;
}

// Re-indexes labels onto the referenced centres only, in first-use order of
// the candidate index.
Assignment compact(std::span<const int> labels,
                   std::span<const Point> candidates) {
  std::vector<int> remap(candidates.size(), -1);
  std::vector<bool> used(candidates.size(), false);
  for (int l : labels) used[static_cast<std::size_t>(l)] = true;
  Assignment out;
  for (std::size_t l = 0; l < candidates.size(); ++l) {
    if (!used[l]) continue;
    remap[l] = static_cast<int>(out.centers.size());
    out.centers.push_back(candidates[l]);
  }
  out.label_of.reserve(labels.size());
  for (int l : labels) out.label_of.push_back(remap[static_cast<std::size_t>(l)]);
  return out;
}

void check_assignment(const Scene& scene, const Assignment& asg) {
  if (asg.label_of.size() != scene.size()) {
    throw std::logic_error("assignment covers " +
                           std::to_string(asg.label_of.size()) +
                           " persons, scene has " +
                           std::to_string(scene.size()));
  }
  for (int l : asg.label_of) {
    if (l < 0 || static_cast<std::size_t>(l) >= asg.centers.size()) {
      throw std::logic_error("dangling label " + std::to_string(l));
    }
  }
}

}  // namespace

std::size_t Assignment::active_count() const {
  std::vector<bool> used(centers.size(), false);
  std::size_t n = 0;
  for (int l : label_of) {
    if (l < 0 || static_cast<std::size_t>(l) >= centers.size()) continue;
    if (!used[static_cast<std::size_t>(l)]) {
      used[static_cast<std::size_t>(l)] = true;
      ++n;
    }
  }
  return n;
}

double data_cost(const Person& p, Point center, const Params& params) {
  const Point mu = transactional_center(p, params.stride_d);
  const double du = center.u - mu.u;
  const double dv = center.v - mu.v;
  return du * du + dv * dv;
}

VisibilityTerm visibility_term(std::size_t i, const Scene& scene, Point center,
                               const Params& params) {
  const auto& persons = scene.persons();
  if (i >= persons.size()) throw InvalidInput("person index out of range");
  VisibilityTerm term;
  const Point pi = persons[i].position();
  const double di = distance(pi, center);
  // Someone standing on the centre sees it regardless of the others.
  if (di == 0.0) return term;
  for (std::size_t j = 0; j < persons.size(); ++j) {
    if (j == i) continue;
    const Point pj = persons[j].position();
    const double dj = distance(pj, center);
    if (dj == 0.0) {
      ++term.degenerate_pairs;
      continue;
    }
    const double theta = angle_about(center, pi, pj);
    const bool blocked = params.literal_visibility_gate
                             ? !(theta <= params.theta_hat || di < dj)
                             : (theta < params.theta_hat && di > dj);
    if (!blocked) continue;
    term.cost += std::exp(params.k_repulsion * std::cos(theta)) * (di - dj) / dj;
  }
  return term;
}

double unary_cost(std::size_t i, const Scene& scene, Point center,
                  const Params& params) {
  double c = data_cost(scene.persons()[i], center, params);
  if (params.visibility) {
    c += params.visibility_weight *
         visibility_term(i, scene, center, params).cost;
  }
  return c;
}

double total_cost(const Scene& scene, const Assignment& asg,
                  const Params& params) {
  check_assignment(scene, asg);
  double cost = params.mdl_weight * static_cast<double>(asg.active_count());
  for (std::size_t i = 0; i < scene.size(); ++i) {
    cost += unary_cost(
        i, scene, asg.centers[static_cast<std::size_t>(asg.label_of[i])],
        params);
  }
  return cost;
}

namespace detail {

UnaryTable build_unary_table(const Scene& scene,
                             std::span<const Point> candidates,
                             const Params& params) {
  UnaryTable t;
  t.persons = scene.size();
  t.labels = candidates.size();
  t.cost.resize(t.persons * t.labels);
  for (std::size_t i = 0; i < t.persons; ++i) {
    for (std::size_t l = 0; l < t.labels; ++l) {
      t.cost[i * t.labels + l] = unary_cost(i, scene, candidates[l], params);
    }
  }
  return t;
}

double subset_cost(const UnaryTable& table, double label_cost,
                   std::span<const std::size_t> open) {
  double cost = label_cost * static_cast<double>(open.size());
  for (std::size_t i = 0; i < table.persons; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t l : open) best = std::min(best, table.at(i, l));
    cost += best;
  }
  return cost;
}

std::vector<std::size_t> exact_label_subset(const UnaryTable& table,
                                            double label_cost) {
  const std::size_t L = table.labels;
  if (L == 0) throw InvalidInput("no candidate centres");
  if (L > kExactLabelLimit) {
    throw SizeError("exact label search limited to " +
                    std::to_string(kExactLabelLimit) + " candidates");
  }
  const std::size_t masks = std::size_t{1} << L;
  std::vector<double> total(masks, 0.0);
  std::vector<double> best(masks);
  for (std::size_t m = 1; m < masks; ++m) {
    total[m] = label_cost * static_cast<double>(std::popcount(m));
  }
  // best[m] = min over labels in m of this person's cost, built from the mask
  // with its lowest bit cleared.
  for (std::size_t i = 0; i < table.persons; ++i) {
    best[0] = std::numeric_limits<double>::infinity();
    for (std::size_t m = 1; m < masks; ++m) {
      const auto low = static_cast<std::size_t>(std::countr_zero(m));
      best[m] = std::min(table.at(i, low), best[m & (m - 1)]);
      total[m] += best[m];
    }
  }
  std::size_t arg = 1;
  for (std::size_t m = 2; m < masks; ++m) {
    if (total[m] < total[arg]) arg = m;
  }
  std::vector<std::size_t> open;
  for (std::size_t l = 0; l < L; ++l) {
    if (arg & (std::size_t{1} << l)) open.push_back(l);
  }
  return open;
}

std::vector<std::size_t> exact_person_partition(const UnaryTable& table,
                                                double label_cost) {
  const std::size_t n = table.persons;
  const std::size_t L = table.labels;
  if (L == 0) throw InvalidInput("no candidate centres");
  if (n > kExactPersonLimit) {
    throw SizeError("exact partition search limited to " +
                    std::to_string(kExactPersonLimit) + " persons");
  }
  if (n == 0) return {};
  const std::size_t masks = std::size_t{1} << n;
  // block[m]: cheapest single centre shared by the persons in m.
  std::vector<double> block(masks, std::numeric_limits<double>::infinity());
  std::vector<std::uint32_t> block_label(masks, 0);
  std::vector<double> sum(masks, 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    for (std::size_t m = 1; m < masks; ++m) {
      const auto low = static_cast<std::size_t>(std::countr_zero(m));
      sum[m] = sum[m & (m - 1)] + table.at(low, l);
      if (sum[m] < block[m]) {
        block[m] = sum[m];
        block_label[m] = static_cast<std::uint32_t>(l);
      }
    }
  }
  // best[S]: optimal cost of covering S; the block holding S's lowest person
  // is enumerated explicitly.
  std::vector<double> best(masks, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> choice(masks, 0);
  best[0] = 0.0;
  for (std::size_t S = 1; S < masks; ++S) {
    const std::size_t low = S & (~S + 1);
    const std::size_t rest = S ^ low;
    for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
      const std::size_t g = sub | low;
      const double c = best[S ^ g] + label_cost + block[g];
      if (c < best[S]) {
        best[S] = c;
        choice[S] = g;
      }
      if (sub == 0) break;
    }
  }
  std::vector<std::size_t> open;
  for (std::size_t S = masks - 1; S != 0; S ^= choice[S]) {
    open.push_back(block_label[choice[S]]);
  }
  std::sort(open.begin(), open.end());
  open.erase(std::unique(open.begin(), open.end()), open.end());
  return open;
}

std::vector<std::size_t> local_search_label_subset(
    const UnaryTable& table, double label_cost,
    std::vector<std::size_t> start) {
  const std::size_t L = table.labels;
  if (L == 0) throw InvalidInput("no candidate centres");
  std::vector<bool> is_open(L, false);
  std::vector<std::size_t> open;
  for (std::size_t l : start) {
    if (l < L && !is_open[l]) {
      is_open[l] = true;
      open.push_back(l);
    }
  }
  if (open.empty()) {
    // Best single centre.
    std::size_t arg = 0;
    double arg_cost = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < L; ++l) {
      const std::size_t one[] = {l};
      const double c = subset_cost(table, label_cost, one);
      if (c < arg_cost) {
        arg_cost = c;
        arg = l;
      }
    }
    open.push_back(arg);
    is_open[arg] = true;
  }
  std::sort(open.begin(), open.end());
  double cost = subset_cost(table, label_cost, open);

  // First-best improvement over add / drop / swap neighbourhoods; strict
  // improvement only, so the cost never increases.
  for (;;) {
    double best_cost = cost;
    std::vector<std::size_t> best_open;
    std::vector<std::size_t> trial;
    for (std::size_t l = 0; l < L; ++l) {
      if (is_open[l]) continue;
      trial = open;
      trial.push_back(l);
      const double c = subset_cost(table, label_cost, trial);
      if (c < best_cost - 1e-12) {
        best_cost = c;
        best_open = trial;
      }
    }
    if (open.size() > 1) {
      for (std::size_t k = 0; k < open.size(); ++k) {
        trial = open;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
        const double c = subset_cost(table, label_cost, trial);
        if (c < best_cost - 1e-12) {
          best_cost = c;
          best_open = trial;
        }
      }
    }
    for (std::size_t k = 0; k < open.size(); ++k) {
      for (std::size_t l = 0; l < L; ++l) {
        if (is_open[l]) continue;
        trial = open;
        trial[k] = l;
        const double c = subset_cost(table, label_cost, trial);
        if (c < best_cost - 1e-12) {
          best_cost = c;
          best_open = trial;
        }
      }
    }
    if (best_open.empty()) break;
    std::sort(best_open.begin(), best_open.end());
    open = std::move(best_open);
    cost = best_cost;
    std::fill(is_open.begin(), is_open.end(), false);
    for (std::size_t l : open) is_open[l] = true;
  }
  return open;
}

}  // namespace detail

Assignment assign_labels(const Scene& scene, std::span<const Point> candidates,
                         const Params& params) {
  return assign_labels(scene, candidates, Assignment{}, params);
}

Assignment assign_labels(const Scene& scene, std::span<const Point> candidates,
                         const Assignment& warm_start, const Params& params) {
  if (candidates.empty()) throw InvalidInput("empty candidate list");
  params.validate();
  const bool has_warm = !warm_start.label_of.empty();
  if (has_warm) check_assignment(scene, warm_start);

  std::vector<Point> pool(candidates.begin(), candidates.end());
  std::vector<std::size_t> warm_open;
  if (has_warm) {
    // Map every active warm-start centre onto the pool.
    std::vector<bool> used(warm_start.centers.size(), false);
    for (int l : warm_start.label_of) used[static_cast<std::size_t>(l)] = true;
    for (std::size_t w = 0; w < warm_start.centers.size(); ++w) {
      if (!used[w]) continue;
      const Point c = warm_start.centers[w];
      auto it = std::find(pool.begin(), pool.end(), c);
      if (it == pool.end()) {
        pool.push_back(c);
        it = pool.end() - 1;
      }
      warm_open.push_back(static_cast<std::size_t>(it - pool.begin()));
    }
  }

  if (scene.empty()) return Assignment{};

  const auto table = detail::build_unary_table(scene, pool, params);
  std::vector<std::size_t> open;
  if (pool.size() <= kExactLabelLimit) {
    open = detail::exact_label_subset(table, params.mdl_weight);
  } else if (scene.size() <= kExactPersonLimit) {
    open = detail::exact_person_partition(table, params.mdl_weight);
  } else {
    open = detail::local_search_label_subset(table, params.mdl_weight, {});
    if (has_warm) {
      auto from_warm = detail::local_search_label_subset(
          table, params.mdl_weight, warm_open);
      if (detail::subset_cost(table, params.mdl_weight, from_warm) <=
          detail::subset_cost(table, params.mdl_weight, open)) {
        open = std::move(from_warm);
      }
    }
  }
  const auto labels = best_labels(table, open);
  return compact(labels, pool);
}

std::vector<Point> update_centers(const Scene& scene, const Assignment& asg,
                                  const Params& params) {
  check_assignment(scene, asg);
  const auto mus = transactional_centers(scene, params);
  std::vector<Point> sum(asg.centers.size());
  std::vector<std::size_t> count(asg.centers.size(), 0);
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const auto l = static_cast<std::size_t>(asg.label_of[i]);
    sum[l] = sum[l] + mus[i];
    ++count[l];
  }
  std::vector<Point> out;
  for (std::size_t l = 0; l < sum.size(); ++l) {
    if (count[l] == 0) continue;
    out.push_back((1.0 / static_cast<double>(count[l])) * sum[l]);
  }
  return out;
}

Detection detect_groups(const Scene& scene, const Params& params) {
  params.validate();
  Detection out;
  if (scene.empty()) return out;

  Assignment state;
  state.centers = transactional_centers(scene, params);
  state.label_of.resize(scene.size());
  std::iota(state.label_of.begin(), state.label_of.end(), 0);
  double cost = total_cost(scene, state, params);
  out.trace.objective.push_back(cost);

  for (int it = 1; it <= params.max_iterations; ++it) {
    // Proposals: every active centre as it stands plus the current mean of
    // its members.
    std::vector<Point> pool;
    for (const auto& c : state.centers) append_unique(pool, c);
    for (const auto& c : update_centers(scene, state, params)) {
      append_unique(pool, c);
    }
    if (params.move_proposals) {
      for (const auto& c : move_proposals(scene, state, params)) {
        append_unique(pool, c);
      }
    }
    Assignment next = assign_labels(scene, pool, state, params);
    const double next_cost = total_cost(scene, next, params);
    out.trace.iterations = it;
    if (!(next_cost < cost - kConvergenceTolerance)) {
      out.trace.converged = true;
      break;
    }
    state = std::move(next);
    cost = next_cost;
    out.trace.objective.push_back(cost);
  }

  if (params.visibility) {
    for (std::size_t i = 0; i < scene.size(); ++i) {
      out.trace.degenerate_pairs +=
          visibility_term(
              i, scene,
              state.centers[static_cast<std::size_t>(state.label_of[i])],
              params)
              .degenerate_pairs;
    }
  }
  const auto ids = scene.ids();
  out.groups = GroupSet::from_labels(ids, state.label_of);
  out.assignment = std::move(state);
  return out;
}

BruteForceResult brute_force_detect(const Scene& scene, const Params& params) {
  params.validate();
  const std::size_t n = scene.size();
  if (n > kBruteForceLimit) {
    throw SizeError("brute force limited to " +
                    std::to_string(kBruteForceLimit) + " persons, got " +
                    std::to_string(n));
  }
  BruteForceResult best;
  if (n == 0) return best;

  const auto mus = transactional_centers(scene, params);
  // Restricted growth strings enumerate each set partition exactly once.
  std::vector<int> rgs(n, 0);
  std::vector<int> prefix_max(n, 0);
  best.cost = std::numeric_limits<double>::infinity();
  std::vector<Point> means;
  for (;;) {
    const int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    means.assign(static_cast<std::size_t>(blocks), Point{});
    std::vector<int> count(static_cast<std::size_t>(blocks), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto b = static_cast<std::size_t>(rgs[i]);
      means[b] = means[b] + mus[i];
      ++count[b];
    }
    for (std::size_t b = 0; b < means.size(); ++b) {
      means[b] = (1.0 / count[b]) * means[b];
    }
    double cost = params.mdl_weight * blocks;
    for (std::size_t i = 0; i < n && cost < best.cost; ++i) {
      cost += unary_cost(i, scene, means[static_cast<std::size_t>(rgs[i])],
                         params);
    }
    if (cost < best.cost) {
      best.cost = cost;
      best.labels = rgs;
    }

    // Next restricted growth string.
    std::size_t k = n;
    while (k-- > 1) {
      if (rgs[k] <= prefix_max[k - 1]) break;
    }
    if (k == 0 || k >= n) break;
    ++rgs[k];
    prefix_max[k] = std::max(prefix_max[k - 1], rgs[k]);
    for (std::size_t j = k + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[k];
    }
  }
  const auto ids = scene.ids();
  best.groups = GroupSet::from_labels(ids, best.labels);
  return best;
}

}  // namespace gcff

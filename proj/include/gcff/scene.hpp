#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcff/geometry.hpp"

namespace gcff {

using PersonId = std::string;
using Group = std::vector<PersonId>;

// Natural order on ids: all-digit ids compare numerically, everything else
// lexicographically (numeric ids sort before non-numeric ones).
bool id_less(const PersonId& a, const PersonId& b);

// A partition of (some of the) person ids into disjoint groups of two or more.
// Groups are stored canonically: members sorted by id_less, groups sorted by
// their smallest member.
class GroupSet {
 public:
  GroupSet() = default;
  // Throws InvalidInput on overlapping groups, groups smaller than two, or
  // repeated members.
  explicit GroupSet(std::vector<Group> groups);

  // Builds the partition induced by a per-person label vector. Labels shared
  // by a single person are dropped.
  static GroupSet from_labels(std::span<const PersonId> ids,
                              std::span<const int> labels);

  const std::vector<Group>& groups() const { return groups_; }
  std::size_t size() const { return groups_.size(); }
  bool empty() const { return groups_.empty(); }

  friend bool operator==(const GroupSet&, const GroupSet&) = default;

 private:
  std::vector<Group> groups_;
};

// One frame of proxemic data.
class Scene {
 public:
  Scene() = default;
  // Throws InvalidInput on duplicate person ids or ground-truth members that
  // are not in the scene.
  Scene(std::string frame_id, std::vector<Person> persons,
        std::optional<GroupSet> ground_truth = std::nullopt);

  const std::string& frame_id() const { return frame_id_; }
  const std::vector<Person>& persons() const { return persons_; }
  const std::optional<GroupSet>& ground_truth() const { return ground_truth_; }
  std::size_t size() const { return persons_.size(); }
  bool empty() const { return persons_.empty(); }

  std::vector<PersonId> ids() const;

  Scene with_persons(std::vector<Person> persons) const;
  Scene with_ground_truth(std::optional<GroupSet> gt) const;

  friend bool operator==(const Scene&, const Scene&) = default;

 private:
  std::string frame_id_;
  std::vector<Person> persons_;
  std::optional<GroupSet> ground_truth_;
};

}  // namespace gcff

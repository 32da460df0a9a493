#include "gcff/scene.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "gcff/errors.hpp"

namespace gcff {
namespace {

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) {
           return c >= '0' && c <= '9';
         });
}

std::string_view strip_leading_zeros(std::string_view s) {
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  return s;
}

}  // namespace

bool id_less(const PersonId& a, const PersonId& b) {
  const bool da = all_digits(a);
  const bool db = all_digits(b);
  if (da && db) {
    const auto sa = strip_leading_zeros(a);
    const auto sb = strip_leading_zeros(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
    return a < b;
  }
  if (da != db) return da;
  return a < b;
}

GroupSet::GroupSet(std::vector<Group> groups) : groups_(std::move(groups)) {
  std::set<PersonId> seen;
  for (auto& g : groups_) {
    if (g.size() < 2) {
      throw InvalidInput("group with fewer than two members");
    }
    for (const auto& id : g) {
      if (!seen.insert(id).second) {
        throw InvalidInput("person '" + id + "' appears in more than one group");
      }
    }
    std::sort(g.begin(), g.end(), id_less);
  }
  std::sort(groups_.begin(), groups_.end(), [](const Group& a, const Group& b) {
    return id_less(a.front(), b.front());
  });
}

GroupSet GroupSet::from_labels(std::span<const PersonId> ids,
                               std::span<const int> labels) {
  if (ids.size() != labels.size()) {
    throw InvalidInput("id and label counts differ");
  }
  std::map<int, Group> by_label;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    by_label[labels[i]].push_back(ids[i]);
  }
  std::vector<Group> groups;
  for (auto& [label, members] : by_label) {
    if (members.size() >= 2) groups.push_back(std::move(members));
  }
  return GroupSet(std::move(groups));
}

Scene::Scene(std::string frame_id, std::vector<Person> persons,
             std::optional<GroupSet> ground_truth)
    : frame_id_(std::move(frame_id)),
      persons_(std::move(persons)),
      ground_truth_(std::move(ground_truth)) {
  std::set<PersonId> ids;
  for (const auto& p : persons_) {
    if (!ids.insert(p.id()).second) {
      throw InvalidInput("duplicate person id '" + p.id() + "' in frame '" +
                         frame_id_ + "'");
    }
  }
  if (ground_truth_) {
    for (const auto& g : ground_truth_->groups()) {
      for (const auto& id : g) {
        if (!ids.contains(id)) {
          throw InvalidInput("group member '" + id + "' is not in frame '" +
                             frame_id_ + "'");
        }
      }
    }
  }
}

std::vector<PersonId> Scene::ids() const {
  std::vector<PersonId> out;
  out.reserve(persons_.size());
  for (const auto& p : persons_) out.push_back(p.id());
  return out;
}

Scene Scene::with_persons(std::vector<Person> persons) const {
  return Scene(frame_id_, std::move(persons), ground_truth_);
}

Scene Scene::with_ground_truth(std::optional<GroupSet> gt) const {
  return Scene(frame_id_, persons_, std::move(gt));
}

}  // namespace gcff

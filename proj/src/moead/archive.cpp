#include "uavisac/moead/archive.hpp"

#include <algorithm>

namespace uavisac::moead {

bool Archive::add(const DecisionVector& genes, const ObjectiveVector& f) {
  for (const auto& e : entries_)
    if (same_objectives(e.objectives, f) || dominates(e.objectives, f))
      return false;
  // Nothing here dominates f, so erasing what f dominates cannot remove a
  // point that would have rejected it.
  std::erase_if(entries_, [&](const ArchiveEntry& e) {
    return dominates(f, e.objectives);
  });
  entries_.push_back({genes, f});
  return true;
}

std::vector<ObjectiveVector> Archive::objective_snapshot() const {
  std::vector<ObjectiveVector> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.objectives);
  return out;
}

}  // namespace uavisac::moead

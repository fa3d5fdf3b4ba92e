#pragma once

#include <cstddef>
#include <vector>

#include "uavisac/objective.hpp"

namespace uavisac::moead {

struct ArchiveEntry {
  DecisionVector genes;
  ObjectiveVector objectives;
};

// External archive of mutually non-dominated solutions, insertion-ordered.
class Archive {
 public:
  // Removes entries the candidate dominates, then inserts it unless some
  // remaining entry dominates it or matches its objectives exactly.
  // Returns true when the candidate was added.
  bool add(const DecisionVector& genes, const ObjectiveVector& f);

  const std::vector<ArchiveEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  std::vector<ObjectiveVector> objective_snapshot() const;

 private:
  std::vector<ArchiveEntry> entries_;
};

}  // namespace uavisac::moead

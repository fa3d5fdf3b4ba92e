#pragma once

#include <vector>

namespace uavisac {

// A candidate solution: 4 genes per UAV (x, y, total power, comm share),
// every gene normalized to [0, 1].
using DecisionVector = std::vector<double>;

// Both objectives are minimized. f1_tilde is the negated network utility,
// f2_tilde the log of the summed localization error bounds.
struct ObjectiveVector {
  double f1_tilde = 0.0;
  double f2_tilde = 0.0;
};

// Pareto dominance for minimization: no worse in both, strictly better in one.
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.f1_tilde <= b.f1_tilde && a.f2_tilde <= b.f2_tilde &&
         (a.f1_tilde < b.f1_tilde || a.f2_tilde < b.f2_tilde);
}

inline bool same_objectives(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.f1_tilde == b.f1_tilde && a.f2_tilde == b.f2_tilde;
}

}  // namespace uavisac

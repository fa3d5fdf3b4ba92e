#pragma once

#include <vector>

#include "uavisac/objective.hpp"

namespace uavisac::metrics {

// Objective values at or above this are penalty sentinels (the model writes
// 1e12); they stay in exported fronts but are excluded from normalization
// bounds and hypervolume point sets, where one such point would flatten
// everything real to a speck.
inline constexpr double kPenaltyThreshold = 1e11;

inline bool penalized(const ObjectiveVector& p) {
  return p.f1_tilde >= kPenaltyThreshold || p.f2_tilde >= kPenaltyThreshold;
}

std::vector<ObjectiveVector> drop_penalized(
    const std::vector<ObjectiveVector>& points);

// Per-objective affine map fitted on a point set: min -> 0, max -> 1.
struct FrontBounds {
  double f1_min = 0.0;
  double f1_max = 0.0;
  double f2_min = 0.0;
  double f2_max = 0.0;

  void validate() const;  // throws std::invalid_argument when degenerate
};

// Plain componentwise min/max. Throws when points is empty or the spread of
// either objective is zero (no affine map exists then).
FrontBounds fit_bounds(const std::vector<ObjectiveVector>& points);

// Values outside the fitted range map outside [0, 1] and are kept as-is.
ObjectiveVector normalize_point(const ObjectiveVector& p, const FrontBounds& b);

std::vector<ObjectiveVector> normalize_front(
    const std::vector<ObjectiveVector>& points, const FrontBounds& b);

}  // namespace uavisac::metrics

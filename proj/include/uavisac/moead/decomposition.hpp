#pragma once

#include <vector>

#include "uavisac/objective.hpp"

namespace uavisac::moead {

// Weight coordinates are kept strictly inside (0, 1): a zero weight would
// make the scalarization blind to one objective.
inline constexpr double kWeightEps = 1e-6;

struct WeightVector {
  double w1 = 0.0;
  double w2 = 0.0;
};

// Componentwise minimum of all objective vectors seen so far.
struct ReferencePoint {
  double z1 = 0.0;
  double z2 = 0.0;
};

// n evenly spaced two-objective weights w1 = j/(n-1), w2 = 1-w1, with the
// endpoint coordinates clamped to kWeightEps (sum stays 1). Throws for n < 2.
std::vector<WeightVector> das_dennis_weights(int n);

// For each weight, the indices of its s nearest weights by Euclidean
// distance, self always included, distance ties broken towards the lower
// index. Each neighborhood is returned sorted ascending.
std::vector<std::vector<int>> build_neighborhoods(
    const std::vector<WeightVector>& weights, int s);

// Weighted Chebyshev scalarization (minimized).
double tchebycheff(const ObjectiveVector& f, const WeightVector& w,
                   const ReferencePoint& z);

ReferencePoint update_reference(const ReferencePoint& z,
                                const ObjectiveVector& f);

}  // namespace uavisac::moead

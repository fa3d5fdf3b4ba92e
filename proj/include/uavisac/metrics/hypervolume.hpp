#pragma once

#include <random>
#include <vector>

#include "uavisac/objective.hpp"

namespace uavisac::metrics {

// Exact hypervolume dominated by a 2-D minimization point set relative to a
// reference point (staircase sweep). Points not strictly better than the
// reference in both coordinates contribute nothing; an empty effective set
// gives 0.
double hypervolume_2d(std::vector<ObjectiveVector> points,
                      const ObjectiveVector& reference);

// Monte-Carlo estimate of the same quantity, used to cross-check the exact
// sweep. Samples uniformly over the bounding box spanned by the effective
// points and the reference.
double hypervolume_mc(const std::vector<ObjectiveVector>& points,
                      const ObjectiveVector& reference, long long samples,
                      std::mt19937_64& rng);

}  // namespace uavisac::metrics

#include "uavisac/moead/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace uavisac::moead {

std::vector<WeightVector> das_dennis_weights(int n) {
  if (n < 2)
    throw std::invalid_argument("das_dennis_weights: need at least 2 vectors");
  std::vector<WeightVector> w(n);
  for (int j = 0; j < n; ++j) {
    double w1 = static_cast<double>(j) / (n - 1);
    double w2 = 1.0 - w1;
    // Only the lattice endpoints can violate the open interval; pull them in
    // while keeping w1 + w2 == 1 exactly.
    if (w1 < kWeightEps) {
      w1 = kWeightEps;
      w2 = 1.0 - kWeightEps;
    } else if (w2 < kWeightEps) {
      w1 = 1.0 - kWeightEps;
      w2 = kWeightEps;
    }
    w[j] = {w1, w2};
  }
  return w;
}

std::vector<std::vector<int>> build_neighborhoods(
    const std::vector<WeightVector>& weights, int s) {
  const int n = static_cast<int>(weights.size());
  if (s < 1 || s > n)
    throw std::invalid_argument("build_neighborhoods: s must be in [1, n]");
  std::vector<std::vector<int>> hoods(n);
  std::vector<int> order(n);
  for (int j = 0; j < n; ++j) {
    std::iota(order.begin(), order.end(), 0);
    auto d2 = [&](int i) {
      const double a = weights[j].w1 - weights[i].w1;
      const double b = weights[j].w2 - weights[i].w2;
      return a * a + b * b;
    };
    // stable_sort on distance keeps index order for ties, which pins the
    // neighborhood deterministically.
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return d2(a) < d2(b); });
    hoods[j].assign(order.begin(), order.begin() + s);
    std::sort(hoods[j].begin(), hoods[j].end());
  }
  return hoods;
}

double tchebycheff(const ObjectiveVector& f, const WeightVector& w,
                   const ReferencePoint& z) {
  return std::max(w.w1 * (f.f1_tilde - z.z1), w.w2 * (f.f2_tilde - z.z2));
}

ReferencePoint update_reference(const ReferencePoint& z,
                                const ObjectiveVector& f) {
  return {std::min(z.z1, f.f1_tilde), std::min(z.z2, f.f2_tilde)};
}

}  // namespace uavisac::moead

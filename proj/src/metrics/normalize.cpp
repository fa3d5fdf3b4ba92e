#include "uavisac/metrics/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uavisac::metrics {

std::vector<ObjectiveVector> drop_penalized(
    const std::vector<ObjectiveVector>& points) {
  std::vector<ObjectiveVector> out;
  out.reserve(points.size());
  for (const auto& p : points)
    if (!penalized(p)) out.push_back(p);
  return out;
}

void FrontBounds::validate() const {
  if (!std::isfinite(f1_min) || !std::isfinite(f1_max) ||
      !std::isfinite(f2_min) || !std::isfinite(f2_max) || f1_min >= f1_max ||
      f2_min >= f2_max)
    throw std::invalid_argument(
        "front bounds: need finite min < max in both objectives");
}

FrontBounds fit_bounds(const std::vector<ObjectiveVector>& points) {
  if (points.empty())
    throw std::invalid_argument("fit_bounds: point set is empty");
  FrontBounds b{std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity()};
  for (const auto& p : points) {
    b.f1_min = std::min(b.f1_min, p.f1_tilde);
    b.f1_max = std::max(b.f1_max, p.f1_tilde);
    b.f2_min = std::min(b.f2_min, p.f2_tilde);
    b.f2_max = std::max(b.f2_max, p.f2_tilde);
  }
  b.validate();
  return b;
}

ObjectiveVector normalize_point(const ObjectiveVector& p,
                                const FrontBounds& b) {
  return {(p.f1_tilde - b.f1_min) / (b.f1_max - b.f1_min),
          (p.f2_tilde - b.f2_min) / (b.f2_max - b.f2_min)};
}

std::vector<ObjectiveVector> normalize_front(
    const std::vector<ObjectiveVector>& points, const FrontBounds& b) {
  b.validate();
  std::vector<ObjectiveVector> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(normalize_point(p, b));
  return out;
}

}  // namespace uavisac::metrics

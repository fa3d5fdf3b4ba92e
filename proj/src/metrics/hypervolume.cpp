#include "uavisac/metrics/hypervolume.hpp"

#include <algorithm>
#include <limits>

#include "uavisac/rng.hpp"

namespace uavisac::metrics {

namespace {

void drop_outside(std::vector<ObjectiveVector>& pts,
                  const ObjectiveVector& ref) {
  std::erase_if(pts, [&](const ObjectiveVector& p) {
    return !(p.f1_tilde < ref.f1_tilde && p.f2_tilde < ref.f2_tilde);
  });
}

}  // namespace

double hypervolume_2d(std::vector<ObjectiveVector> points,
                      const ObjectiveVector& reference) {
  drop_outside(points, reference);
  if (points.empty()) return 0.0;

  std::sort(points.begin(), points.end(),
            [](const ObjectiveVector& a, const ObjectiveVector& b) {
              if (a.f1_tilde != b.f1_tilde) return a.f1_tilde < b.f1_tilde;
              return a.f2_tilde < b.f2_tilde;
            });

  // Keep the strictly descending-f2 staircase; everything else is dominated.
  std::vector<ObjectiveVector> front;
  for (const auto& p : points)
    if (front.empty() || p.f2_tilde < front.back().f2_tilde)
      front.push_back(p);

  double hv = 0.0;
  for (std::size_t i = 0; i < front.size(); ++i) {
    const double next_x =
        i + 1 < front.size() ? front[i + 1].f1_tilde : reference.f1_tilde;
    hv += (next_x - front[i].f1_tilde) * (reference.f2_tilde - front[i].f2_tilde);
  }
  return hv;
}

double hypervolume_mc(const std::vector<ObjectiveVector>& points,
                      const ObjectiveVector& reference, long long samples,
                      std::mt19937_64& rng) {
  std::vector<ObjectiveVector> pts = points;
  drop_outside(pts, reference);
  if (pts.empty() || samples <= 0) return 0.0;

  double lo1 = std::numeric_limits<double>::infinity();
  double lo2 = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    lo1 = std::min(lo1, p.f1_tilde);
    lo2 = std::min(lo2, p.f2_tilde);
  }

  std::sort(pts.begin(), pts.end(),
            [](const ObjectiveVector& a, const ObjectiveVector& b) {
              return a.f1_tilde < b.f1_tilde;
            });
  // prefix_min[i] = best f2 among pts[0..i]; a sample (s1, s2) is dominated
  // iff some point has f1 <= s1 and f2 <= s2, i.e. prefix_min at the last
  // f1 <= s1 position is <= s2.
  std::vector<double> f1s(pts.size()), prefix_min(pts.size());
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    f1s[i] = pts[i].f1_tilde;
    running = std::min(running, pts[i].f2_tilde);
    prefix_min[i] = running;
  }

  const double area = (reference.f1_tilde - lo1) * (reference.f2_tilde - lo2);
  long long hits = 0;
  for (long long s = 0; s < samples; ++s) {
    const double s1 = rng::uniform(rng, lo1, reference.f1_tilde);
    const double s2 = rng::uniform(rng, lo2, reference.f2_tilde);
    const auto it = std::upper_bound(f1s.begin(), f1s.end(), s1);
    if (it == f1s.begin()) continue;
    if (prefix_min[static_cast<std::size_t>(it - f1s.begin()) - 1] <= s2)
      ++hits;
  }
  return area * static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace uavisac::metrics

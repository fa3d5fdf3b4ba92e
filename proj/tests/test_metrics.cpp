#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "uavisac/metrics/hypervolume.hpp"
#include "uavisac/metrics/normalize.hpp"
#include "uavisac/rng.hpp"

using namespace uavisac;

namespace {

// Independent oracle: the dominated region is a union of axis-aligned boxes
// [p, ref]; its area follows from inclusion-exclusion over all subsets,
// where a subset's intersection box has the componentwise-max lower corner.
// Exponential in the point count, which is fine for the small sets here.
double hv_inclusion_exclusion(const std::vector<ObjectiveVector>& pts,
                              const ObjectiveVector& ref) {
  const int n = static_cast<int>(pts.size());
  double total = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double x = -1e300, y = -1e300;
    int bits = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        ++bits;
        x = std::max(x, pts[i].f1_tilde);
        y = std::max(y, pts[i].f2_tilde);
      }
    const double area =
        std::max(0.0, ref.f1_tilde - x) * std::max(0.0, ref.f2_tilde - y);
    total += (bits % 2 == 1) ? area : -area;
  }
  return total;
}

std::vector<ObjectiveVector> random_points(std::mt19937_64& gen, int count) {
  std::vector<ObjectiveVector> pts(count);
  for (auto& p : pts) {
    p.f1_tilde = rng::uniform01(gen);
    p.f2_tilde = rng::uniform01(gen);
  }
  return pts;
}

}  // namespace

TEST_CASE("closed-form hypervolume cases") {
  const ObjectiveVector ref{1.1, 1.1};
  CHECK(metrics::hypervolume_2d({}, ref) == 0.0);
  CHECK(metrics::hypervolume_2d({{0.0, 0.0}}, ref) ==
        doctest::Approx(1.21).epsilon(1e-12));
  CHECK(metrics::hypervolume_2d({{0.0, 1.0}, {1.0, 0.0}}, ref) ==
        doctest::Approx(0.21).epsilon(1e-12));
  // At or beyond the reference there is nothing dominated.
  CHECK(metrics::hypervolume_2d({{2.0, 2.0}}, ref) == 0.0);
  CHECK(metrics::hypervolume_2d({{1.1, 0.0}}, ref) == 0.0);
  CHECK(metrics::hypervolume_2d({{0.0, 1.1}}, ref) == 0.0);
}

TEST_CASE("dominated and duplicate points contribute nothing") {
  const ObjectiveVector ref{1.1, 1.1};
  const double base = metrics::hypervolume_2d({{0.0, 0.0}}, ref);
  CHECK(metrics::hypervolume_2d({{0.0, 0.0}, {0.5, 0.5}}, ref) == base);
  CHECK(metrics::hypervolume_2d({{0.0, 0.0}, {0.0, 0.0}}, ref) == base);
}

TEST_CASE("input order never changes the sweep result") {
  std::mt19937_64 gen(3);
  for (int rep = 0; rep < 20; ++rep) {
    auto pts = random_points(gen, 7);
    const ObjectiveVector ref{1.1, 1.1};
    const double a = metrics::hypervolume_2d(pts, ref);
    for (int shuffle = 0; shuffle < 3; ++shuffle) {
      for (std::size_t i = pts.size(); i > 1; --i)
        std::swap(pts[i - 1],
                  pts[rng::uniform_int(gen, 0, static_cast<int>(i) - 1)]);
      CHECK(metrics::hypervolume_2d(pts, ref) == a);
    }
  }
}

TEST_CASE("adding a point never shrinks the dominated region") {
  std::mt19937_64 gen(5);
  const ObjectiveVector ref{1.1, 1.1};
  for (int rep = 0; rep < 30; ++rep) {
    auto pts = random_points(gen, 5);
    const double before = metrics::hypervolume_2d(pts, ref);
    pts.push_back({rng::uniform01(gen), rng::uniform01(gen)});
    CHECK(metrics::hypervolume_2d(pts, ref) >= before);
  }
}

TEST_CASE("sweep agrees with the inclusion-exclusion oracle") {
  std::mt19937_64 gen(7);
  const ObjectiveVector ref{1.1, 1.1};
  for (int count = 1; count <= 8; ++count) {
    for (int rep = 0; rep < 25; ++rep) {
      auto pts = random_points(gen, count);
      // Mix in a point beyond the reference now and then.
      if (rep % 5 == 0) pts.push_back({1.5, 1.5});
      const double expect = hv_inclusion_exclusion(pts, ref);
      CHECK(metrics::hypervolume_2d(pts, ref) ==
            doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("the Monte-Carlo estimate brackets the exact sweep") {
  std::mt19937_64 gen(11);
  const ObjectiveVector ref{1.1, 1.1};
  for (int rep = 0; rep < 5; ++rep) {
    const auto pts = random_points(gen, 6);
    const double exact = metrics::hypervolume_2d(pts, ref);
    std::mt19937_64 mc_rng(1000 + rep);
    const double est = metrics::hypervolume_mc(pts, ref, 200000, mc_rng);
    CHECK(std::fabs(est - exact) < 0.01);
  }

  std::mt19937_64 a(17), b(17);
  const auto pts = random_points(gen, 4);
  CHECK(metrics::hypervolume_mc(pts, ref, 50000, a) ==
        metrics::hypervolume_mc(pts, ref, 50000, b));
}

TEST_CASE("affine normalization maps the fitted bounds to the unit square") {
  const std::vector<ObjectiveVector> pts = {{0.0, 10.0}, {5.0, 20.0},
                                            {2.5, 15.0}};
  const auto b = metrics::fit_bounds(pts);
  CHECK(b.f1_min == 0.0);
  CHECK(b.f1_max == 5.0);
  CHECK(b.f2_min == 10.0);
  CHECK(b.f2_max == 20.0);

  const auto lo = metrics::normalize_point({0.0, 10.0}, b);
  CHECK(lo.f1_tilde == 0.0);
  CHECK(lo.f2_tilde == 0.0);
  const auto hi = metrics::normalize_point({5.0, 20.0}, b);
  CHECK(hi.f1_tilde == 1.0);
  CHECK(hi.f2_tilde == 1.0);
  const auto mid = metrics::normalize_point({2.5, 15.0}, b);
  CHECK(mid.f1_tilde == 0.5);
  CHECK(mid.f2_tilde == 0.5);

  // Values outside the fitted range stay outside the unit square.
  const auto out = metrics::normalize_point({10.0, 25.0}, b);
  CHECK(out.f1_tilde == 2.0);
  CHECK(out.f2_tilde == 1.5);

  const auto front = metrics::normalize_front(pts, b);
  REQUIRE(front.size() == 3);
  CHECK(front[2].f1_tilde == 0.5);
}

TEST_CASE("degenerate bounds are rejected") {
  CHECK_THROWS_AS(metrics::fit_bounds({}), std::invalid_argument);
  CHECK_THROWS_AS(metrics::fit_bounds({{1.0, 2.0}}), std::invalid_argument);
  // Zero spread in one objective only.
  CHECK_THROWS_AS(metrics::fit_bounds({{1.0, 2.0}, {1.0, 3.0}}),
                  std::invalid_argument);

  metrics::FrontBounds b{0.0, 1.0, 5.0, 5.0};
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
}

TEST_CASE("penalty sentinels are detected and filtered") {
  CHECK(metrics::penalized({1e12, 0.0}));
  CHECK(metrics::penalized({0.0, 1e12}));
  CHECK(metrics::penalized({1e11, 0.0}));       // threshold is inclusive
  CHECK(!metrics::penalized({9.9e10, -50.0}));  // just below
  CHECK(!metrics::penalized({-70.0, 1.3}));

  const std::vector<ObjectiveVector> pts = {
      {-70.0, 1.3}, {1e12, 29.0}, {-60.0, 0.9}, {5.0, 1e12}};
  const auto kept = metrics::drop_penalized(pts);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].f1_tilde == -70.0);
  CHECK(kept[1].f1_tilde == -60.0);
}

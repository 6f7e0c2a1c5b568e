#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sac/leeyang.hpp"
#include "sac/mapspec.hpp"

using namespace sac;

TEST_CASE("cylinder map oracles") {
  const MapSpec& R = find_map("R");
  // the line z = 1 is invariant: z' = (1 + t^2)/(1 + t^2)
  CylinderPoint p = cyl_eval(R, {0.0, 0.3});
  CHECK(p.theta == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.t == doctest::Approx(0.36 / 1.1881).epsilon(1e-12));
  // at t = 0 the restriction is the circle map theta -> 4 theta
  CylinderPoint q = cyl_eval(R, {kPi / 3.0, 0.0});
  CHECK(q.theta == doctest::Approx(4.0 * kPi / 3.0));
  CHECK(q.t == 0.0);
}

TEST_CASE("the cylinder is forward invariant") {
  const MapSpec& R = find_map("R");
  CounterRng rng{0};
  for (std::uint64_t i = 0; i < 1000; ++i) {
    CylinderPoint x{rng.uniform(2 * i, 0, kTwoPi), rng.uniform(2 * i + 1, 0, 1)};
    CylinderPoint y = cyl_eval(R, x);  // asserts the invariant internally
    CHECK(y.t >= 0.0);
    CHECK(y.t <= 1.0);
    CHECK(y.theta >= 0.0);
    CHECK(y.theta < kTwoPi);
  }
}

TEST_CASE("zero pullback verifies forward and keeps conjugation symmetry") {
  const MapSpec& R = find_map("R");
  ZeroSet zs = seed_zeros(20, kPi, "test");
  for (int l = 0; l < 2; ++l) zs = pullback_zeros(R, zs);
  CHECK(zs.level == 2);
  CHECK(zs.points.size() > 100);
  for (const CylinderPoint& p : zs.points)
    CHECK(lands_in_seed(R, p, 2, kPi, 1e-6));
  // the seed is conjugation-symmetric, so each level is too
  int asym = 0;
  for (const CylinderPoint& p : zs.points) {
    double mirror = wrap_angle(-p.theta);
    bool found = false;
    for (const CylinderPoint& q : zs.points)
      if (circle_dist(q.theta, mirror) < 1e-6 && std::fabs(q.t - p.t) < 1e-6) {
        found = true;
        break;
      }
    if (!found) ++asym;
  }
  CHECK(asym == 0);
}

TEST_CASE("holonomy leaf through theta0 = 0 is the invariant line") {
  const MapSpec& R = find_map("R");
  Leaf leaf = holonomy_leaf(R, 0.0, 0.05);
  CHECK(leaf.samples.size() == 11);
  for (auto& [t, th] : leaf.samples) CHECK(std::fabs(th) < 1e-8);
}

TEST_CASE("a leaf with t_max = 0 is its base point") {
  const MapSpec& R = find_map("R");
  Leaf leaf = holonomy_leaf(R, 1.234, 0.0);
  REQUIRE(leaf.samples.size() == 1);
  CHECK(leaf.samples[0].second == 1.234);
}

TEST_CASE("leaves preserve circular order") {
  const MapSpec& R = find_map("R");
  std::vector<double> arrivals;
  for (double th0 : {0.0, kPi / 2, kPi, 3 * kPi / 2})
    arrivals.push_back(holonomy_leaf(R, th0, 0.05).samples.back().second);
  CHECK(circular_order_preserved(arrivals));
  CHECK(!circular_order_preserved({0.0, 2.0, 1.0, 3.0}));
}

TEST_CASE("density at t = 0 is exactly uniform") {
  const MapSpec& R = find_map("R");
  DensityHistogram h = density(R, 0.0, 3200);
  CHECK(h.bins.size() == 32);
  double total = 0;
  for (auto& b : h.bins) {
    CHECK(b.mass == doctest::Approx(1.0 / 32).epsilon(1e-12));
    total += b.mass;
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("density at positive height has full support") {
  const MapSpec& R = find_map("R");
  DensityHistogram h = density(R, 0.05, 3200);
  for (auto& b : h.bins) CHECK(b.mass > 0.0);
}

TEST_CASE("statistics helpers") {
  // KS of an equally spaced grid is 1/n
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back(kTwoPi * i / 100.0);
  CHECK(ks_uniform(grid) == doctest::Approx(0.01));
  DensityHistogram a = histogram_angles(grid, 10, 0.0);
  DensityHistogram b = histogram_angles(grid, 10, 0.0);
  CHECK(tv_distance(a, b) == 0.0);
  std::vector<double> half(grid.begin(), grid.begin() + 50);
  DensityHistogram c = histogram_angles(half, 10, 0.0);
  CHECK(tv_distance(a, c) == doctest::Approx(0.5));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sac/manifold.hpp"
#include "sac/mapspec.hpp"
#include "sac/series.hpp"

using namespace sac;

TEST_CASE("classify separates the three orbit fates") {
  const MapSpec& g = find_map("g");
  CHECK(classify(g, {g.frame.chart, cd(1.0, 0.0), cd(0.0, 0.0)}) ==
        OrbitClass::ToCircle);
  CHECK(classify(g, {g.frame.chart, std::polar(1.0, 2.1), cd(0.0, 0.0)}) ==
        OrbitClass::ToCircle);
  CHECK(classify(g, {g.frame.chart, cd(0.2, 0.0), cd(0.01, 0.0)}) ==
        OrbitClass::ToOtherAttractor);
  CHECK(classify(g, {g.frame.chart, cd(1.6, 0.0), cd(0.01, 0.0)}) ==
        OrbitClass::ToPInfinity);
}

TEST_CASE("bisected slice is a graph close to the unit circle") {
  const MapSpec& g = find_map("g");
  SliceSample s = bisect_slice(g, cd(0.02, 0.0), 16, 1e-8);
  REQUIRE(s.radii.size() == 16);
  for (double r : s.radii) {
    CHECK(r > 0.9);
    CHECK(r < 1.1);
  }
}

TEST_CASE("psi level set agrees with basin bisection") {
  const MapSpec& g = find_map("g");
  SliceSample a = bisect_slice(g, cd(0.02, 0.0), 8, 1e-7);
  SliceSample b = psi_zero_slice(g, cd(0.02, 0.0), 8, 1e-7);
  for (std::size_t i = 0; i < a.radii.size(); ++i)
    CHECK(std::abs(a.radii[i] - b.radii[i]) < 1e-6);
}

TEST_CASE("slice agrees with the leaf series at a small fiber") {
  const MapSpec& f = find_map("f");
  cd w(0.05, 0.0);
  CircleSeries s = solve_series(f, 24);
  SliceSample slice = bisect_slice(f, w, 16, 1e-9);
  // sup over rays of the distance from the bisected point to the series curve
  double sup = 0;
  for (std::size_t i = 0; i < slice.thetas.size(); ++i) {
    cd x = std::polar(slice.radii[i], slice.thetas[i]);
    auto dist = [&](double a) { return std::abs(s.eval_leaf(std::polar(1.0, a), w) - x); };
    double best = 1e9, best_a = 0;
    const int coarse = 1 << 12;
    for (int k = 0; k < coarse; ++k) {
      double a = kTwoPi * k / coarse;
      double d = dist(a);
      if (d < best) { best = d; best_a = a; }
    }
    // refine around the coarse minimizer so the check is not resolution-limited
    for (double step = kTwoPi / coarse; step > 1e-12; step /= 2) {
      for (double a : {best_a - step, best_a + step}) {
        double d = dist(a);
        if (d < best) { best = d; best_a = a; }
      }
    }
    sup = std::max(sup, best);
  }
  CHECK(sup < 1e-4);
}

TEST_CASE("slice moves continuously with the fiber") {
  const MapSpec& g = find_map("g");
  SliceSample a = bisect_slice(g, cd(0.02, 0.0), 16, 1e-8);
  SliceSample b = bisect_slice(g, cd(0.021, 0.0), 16, 1e-8);
  for (std::size_t i = 0; i < a.radii.size(); ++i)
    CHECK(std::abs(a.radii[i] - b.radii[i]) <= 0.05);
}

TEST_CASE("bracket failure raises a domain error") {
  const MapSpec& g = find_map("g");
  SliceOptions opt;
  opt.r_lo = 1.2;  // both endpoints on the escaping side
  opt.r_hi = 1.4;
  CHECK_THROWS_AS(bisect_slice(g, cd(0.02, 0.0), 4, 1e-6, opt), DomainError);
}

TEST_CASE("bullet membership and backward invariance") {
  ConeSpec cone{3, 1.0};
  CHECK(in_bullet({ChartId::PqAtInfinity, cd(0.01, 0), cd(0.1, 0)}, cone));
  CHECK(!in_bullet({ChartId::PqAtInfinity, cd(1e-5, 0), cd(0.1, 0)}, cone));
  BulletReport rep = bullet_backward_invariance_check(3, 0.05, 60, 0);
  CHECK(rep.checked_preimages > 0);
  CHECK(rep.violations == 0);
  CHECK(rep.success);
}

TEST_CASE("distortion ratios concentrate at n = 2") {
  DistortionReport rep = distortion_check(3, 0.05, 2, 60, 0);
  CHECK(rep.samples == 60);
  CHECK(rep.ratio_max / rep.ratio_min < 10.0);
  CHECK(rep.ratio_min > 0);
}

TEST_CASE("tension probe at k = 2") {
  TensionReport rep = tension_experiment(0.05, 2);
  CHECK(rep.vertical_len == 2);
  CHECK(rep.horizontal_exited);
  double eps4 = 0.05 * 0.05 * 0.05 * 0.05;
  CHECK(rep.horizontal_p_abs >= 0.5 * eps4);
  CHECK(rep.vertical_p_log10 < -5.0);
}

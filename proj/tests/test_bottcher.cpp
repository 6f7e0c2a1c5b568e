#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sac/bottcher.hpp"
#include "sac/mapspec.hpp"

using namespace sac;

TEST_CASE("line identity: phi(z, 0) = z") {
  const MapSpec& g = find_map("g");
  CounterRng rng{1};
  for (std::uint64_t i = 0; i < 100; ++i) {
    double r = rng.uniform(2 * i, 0.5, 2.0), th = rng.uniform(2 * i + 1, 0, kTwoPi);
    cd z = std::polar(r, th);
    BottcherResult res = bottcher_phi(g, {g.frame.chart, z, cd(0, 0)});
    CHECK(std::abs(res.value - z) < 1e-13);
  }
}

TEST_CASE("invariance: phi(g(x)) = phi(x)^b") {
  const MapSpec& g = find_map("g");
  RegionParams region = search_region(g, 0.5, 4000, 0);
  CounterRng rng{2};
  int done = 0;
  for (std::uint64_t i = 0; done < 50 && i < 2000; ++i) {
    ChartPoint x{g.frame.chart,
                 std::polar(rng.uniform(4 * i, 0.8, 1.2), rng.uniform(4 * i + 1, 0, kTwoPi)),
                 std::polar(rng.uniform(4 * i + 2, 0.0, 6e-4), rng.uniform(4 * i + 3, 0, kTwoPi))};
    if (!in_region(g, region, x)) continue;
    try {
      cd phi_x = bottcher_phi(g, x).value;
      cd phi_gx = bottcher_phi(g, eval(g, x)).value;
      CHECK(std::abs(phi_gx - std::pow(phi_x, g.b)) < 1e-8);
      ++done;
    } catch (const DomainError&) {
    }
  }
  CHECK(done == 50);
}

TEST_CASE("truncation bound is honest") {
  const MapSpec& g = find_map("g");
  ChartPoint x{g.frame.chart, cd(1.05, 0.02), cd(0.01, 0.01)};
  PhiOptions loose, tight;
  loose.tol = 1e-6;
  tight.tol = 1e-14;
  BottcherResult a = bottcher_phi(g, x, loose);
  BottcherResult b = bottcher_phi(g, x, tight);
  CHECK(std::abs(std::log(std::abs(a.value)) - std::log(std::abs(b.value))) <=
        a.truncation_bound + 1e-13);
}

TEST_CASE("a < b maps require the experimental flag") {
  const MapSpec& f = find_map("f");
  ChartPoint x{f.frame.chart, cd(1.02, 0.0), cd(1e-4, 0.0)};
  CHECK_THROWS_AS(bottcher_phi(f, x), DomainError);
  PhiOptions opt;
  opt.experimental = true;
  CHECK_NOTHROW(bottcher_phi(f, x, opt));
}

TEST_CASE("validated region exists for every a >= b map") {
  for (const std::string name : {"g", "m", "N"}) {
    const MapSpec& m = find_map(name);
    RegionParams r = search_region(m, 0.5, 4000, 0);
    RegionReport rep = validate_region(m, r, 4000, 1);
    CHECK(rep.success);
    CHECK(rep.violations == 0);
  }
}

TEST_CASE("psi is near zero on the circle and signed off it") {
  const MapSpec& g = find_map("g");
  CHECK(std::abs(bottcher_psi(g, {g.frame.chart, cd(1.0, 0.0), cd(0.0, 0.0)})) < 1e-13);
  CHECK(bottcher_psi(g, {g.frame.chart, cd(1.1, 0.0), cd(0.005, 0.0)}) > 0);
  CHECK(bottcher_psi(g, {g.frame.chart, cd(0.9, 0.0), cd(0.005, 0.0)}) < 0);
}

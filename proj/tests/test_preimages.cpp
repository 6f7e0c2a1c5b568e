#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sac/eval.hpp"
#include "sac/mapspec.hpp"
#include "sac/preimages.hpp"

using namespace sac;

TEST_CASE("poly_roots solves factored polynomials") {
  // (x - 2)(x + 1)(x - i) = x^3 + (-1 - i) x^2 + (-2 + i) x + 2i
  std::vector<cd> c{cd(0, 2), cd(-2, 1), cd(-1, -1), cd(1, 0)};
  auto roots = poly_roots(c);
  REQUIRE(roots.size() == 3);
  for (cd want : {cd(2, 0), cd(-1, 0), cd(0, 1)}) {
    double best = 1e9;
    for (cd r : roots) best = std::min(best, std::abs(r - want));
    CHECK(best < 1e-10);
  }
}

TEST_CASE("preimage soundness and completeness") {
  // Soundness: every returned point forward-maps onto the target.
  // Completeness: the forward image of a random point appears among the
  // preimages of its image.
  CounterRng rng{5};
  for (const std::string name : {"R", "g", "f"}) {
    const MapSpec& m = find_map(name);
    int done = 0;
    for (std::uint64_t i = 0; done < 100 && i < 400; ++i) {
      ChartPoint x{m.frame.chart,
                   cd(rng.uniform(4 * i, -0.9, 0.9), rng.uniform(4 * i + 1, -0.9, 0.9)),
                   cd(rng.uniform(4 * i + 2, -0.9, 0.9), rng.uniform(4 * i + 3, -0.9, 0.9))};
      ChartPoint y;
      std::vector<ChartPoint> pre;
      try {
        y = eval(m, x);
        if (y.chart != m.frame.chart) continue;
        pre = preimages(m, y);
      } catch (const DomainError&) {
        continue;
      }
      bool found = false;
      for (const ChartPoint& p : pre) {
        ChartPoint fwd = eval(m, p);
        CHECK(std::abs(fwd.c1 - y.c1) < 1e-7);
        CHECK(std::abs(fwd.c2 - y.c2) < 1e-7);
        if (std::abs(p.c1 - x.c1) + std::abs(p.c2 - x.c2) < 1e-6) found = true;
      }
      CHECK(found);
      ++done;
    }
    CHECK(done == 100);
  }
}

TEST_CASE("renormalization targets have eight preimages") {
  const MapSpec& R = find_map("R");
  CounterRng rng{9};
  int full = 0;
  for (std::uint64_t i = 0; i < 25; ++i) {
    ChartPoint target{ChartId::PhysicalZT,
                      cd(rng.uniform(4 * i, -0.8, 0.8), rng.uniform(4 * i + 1, -0.8, 0.8)),
                      cd(rng.uniform(4 * i + 2, -0.8, 0.8), rng.uniform(4 * i + 3, -0.8, 0.8))};
    try {
      if (preimages(R, target).size() == 8) ++full;
    } catch (const DomainError&) {
    }
  }
  CHECK(full >= 24);  // rare degenerate targets may be skipped
}

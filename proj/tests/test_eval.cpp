#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sac/eval.hpp"
#include "sac/mapspec.hpp"

using namespace sac;

TEST_CASE("eval matches the declared formulas") {
  const MapSpec& f = find_map("f");
  // f(z, w) = (z^3 + 2 w z^2, w^2)
  ChartPoint p{ChartId::AffineZero, cd(0.7, 0.2), cd(0.1, -0.05)};
  ChartPoint q = eval(f, p);
  cd z = p.c1, w = p.c2;
  CHECK(std::abs(q.c1 - (z * z * z + 2.0 * w * z * z)) < 1e-14);
  CHECK(std::abs(q.c2 - w * w) < 1e-14);
}

TEST_CASE("restriction to the invariant line is c1 -> c1^b") {
  for (const auto& m : catalog()) {
    ChartPoint p{m.frame.chart, cd(0.83, 0.41), cd(0.0, 0.0)};
    ChartPoint q = eval(m, p);
    cd expect = std::pow(p.c1, m.b);
    CHECK(std::abs(q.c1 - expect) < 1e-12);
    CHECK(std::abs(q.c2) < 1e-15);
  }
}

TEST_CASE("jacobian agrees with central differences") {
  CounterRng rng{3};
  for (const auto& m : catalog()) {
    for (std::uint64_t i = 0; i < 20; ++i) {
      ChartPoint p{m.frame.chart,
                   cd(rng.uniform(4 * i, 0.5, 1.2), rng.uniform(4 * i + 1, -0.3, 0.3)),
                   cd(rng.uniform(4 * i + 2, -0.2, 0.2), rng.uniform(4 * i + 3, -0.2, 0.2))};
      Jacobian2 J;
      try {
        J = jacobian(m, p);
      } catch (const DomainError&) {
        continue;
      }
      double h = 1e-6;
      const RationalPair& rp = m.formula(p.chart);
      auto F = [&](cd c1, cd c2) { return rp.eval(c1, c2); };
      auto [f1p, f2p] = F(p.c1 + h, p.c2);
      auto [f1m, f2m] = F(p.c1 - h, p.c2);
      CHECK(std::abs(J.a11 - (f1p - f1m) / (2 * h)) < 1e-5);
      CHECK(std::abs(J.a21 - (f2p - f2m) / (2 * h)) < 1e-5);
      auto [g1p, g2p] = F(p.c1, p.c2 + h);
      auto [g1m, g2m] = F(p.c1, p.c2 - h);
      CHECK(std::abs(J.a12 - (g1p - g1m) / (2 * h)) < 1e-5);
      CHECK(std::abs(J.a22 - (g2p - g2m) / (2 * h)) < 1e-5);
    }
  }
}

TEST_CASE("orbits on the invariant circle stay there") {
  const MapSpec& g = find_map("g");
  ChartPoint p{g.frame.chart, std::polar(1.0, 0.5), cd(0.0, 0.0)};
  OrbitRecord rec = orbit(g, p, 15);  // |c1| drift doubles per step
  CHECK(rec.status == OrbitStatus::BudgetExhausted);
  CHECK(std::abs(std::abs(rec.points.back().c1) - 1.0) < 1e-9);
  CHECK(std::abs(rec.points.back().c2) < 1e-12);
}

TEST_CASE("degree-2 Lee-Yang semiconjugacy residual vanishes") {
  CounterRng rng{11};
  double worst = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    cd z(rng.uniform(4 * i, -1.2, 1.2), rng.uniform(4 * i + 1, -1.2, 1.2));
    cd t(rng.uniform(4 * i + 2, -1.2, 1.2), rng.uniform(4 * i + 3, -1.2, 1.2));
    worst = std::max(worst, semiconjugacy_residual(z, t));
  }
  CHECK(worst < 1e-10);
}

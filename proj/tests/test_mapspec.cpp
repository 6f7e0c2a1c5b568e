#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sac/eval.hpp"
#include "sac/mapspec.hpp"
#include "sac/numeric.hpp"

using namespace sac;

TEST_CASE("catalog loads and passes normal-form checks") {
  const auto& maps = catalog();
  REQUIRE(maps.size() == 5);
  for (const auto& m : maps) CHECK_NOTHROW(m.verify_normal_form());
  CHECK(find_map("R").topological_degree == 8);
  CHECK(find_map("f").b == 3);
  CHECK(find_map("f").a == 2);
  CHECK(find_map("m").a == find_map("m").b);
  CHECK_THROWS_AS(find_map("nope"), UsageError);
}

TEST_CASE("declared twists") {
  CHECK(find_map("f").frame.inf_twist == 1);
  CHECK(find_map("m").frame.inf_twist == 1);
  CHECK(find_map("g").frame.inf_twist == -1);
  CHECK(find_map("N").frame.inf_twist == 0);
  CHECK(find_map("R").frame.inf_twist == 0);
}

TEST_CASE("chart transitions round-trip") {
  CounterRng rng{7};
  for (const auto& m : catalog()) {
    if (m.charts.size() < 2) continue;
    ChartId c0 = m.charts[0].first, c1 = m.charts[1].first;
    int done = 0;
    for (std::uint64_t i = 0; done < 1000 && i < 4000; ++i) {
      ChartPoint p{c0,
                   cd(rng.uniform(4 * i, -1.5, 1.5), rng.uniform(4 * i + 1, -1.5, 1.5)),
                   cd(rng.uniform(4 * i + 2, -1.5, 1.5), rng.uniform(4 * i + 3, -1.5, 1.5))};
      ChartPoint q, back;
      try {
        q = to_chart(m, p, c1);
        back = to_chart(m, q, c0);
      } catch (const DomainError&) {
        continue;  // singular locus of the change
      }
      double scale = std::max(1.0, std::max(std::abs(p.c1), std::abs(p.c2)));
      CHECK(std::abs(back.c1 - p.c1) / scale < 1e-9);
      CHECK(std::abs(back.c2 - p.c2) / scale < 1e-9);
      ++done;
    }
    CHECK(done == 1000);
  }
}

TEST_CASE("json round-trip of the catalog") {
  for (const auto& m : catalog()) {
    MapSpec back = mapspec_from_json(mapspec_to_json(m));
    CHECK(back.name == m.name);
    CHECK(back.a == m.a);
    CHECK(back.b == m.b);
    CHECK(back.charts.size() == m.charts.size());
    CHECK_NOTHROW(back.verify_normal_form());
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "sac/csvio.hpp"
#include "sac/errors.hpp"
#include "sac/numeric.hpp"
#include "sac/svg.hpp"

using namespace sac;
namespace fs = std::filesystem;

TEST_CASE("csv write/read round-trip with exact doubles") {
  fs::path p = fs::temp_directory_path() / "sac_test_roundtrip.csv";
  double v = 0.1 + 0.2;  // not representable prettily
  write_csv_atomic(p.string(), {"a", "b"}, {{fmt(v), fmt(-1.5e-300)}});
  Csv csv = read_csv(p.string());
  REQUIRE(csv.header.size() == 2);
  REQUIRE(csv.rows.size() == 1);
  CHECK(std::strtod(csv.rows[0][0].c_str(), nullptr) == v);
  CHECK(std::strtod(csv.rows[0][1].c_str(), nullptr) == -1.5e-300);
  fs::remove(p);
}

TEST_CASE("atomic write leaves no temp files behind") {
  fs::path dir = fs::temp_directory_path() / "sac_test_atomic";
  fs::create_directories(dir);
  fs::path p = dir / "out.txt";
  write_text_atomic(p.string(), "hello");
  int entries = 0;
  for (auto& e : fs::directory_iterator(dir)) {
    ++entries;
    CHECK(e.path() == p);
  }
  CHECK(entries == 1);
  fs::remove_all(dir);
}

namespace {

Csv slice_csv() {
  Csv c;
  c.header = {"theta", "radius"};
  for (int i = 0; i < 16; ++i)
    c.rows.push_back({fmt(kTwoPi * i / 16.0), fmt(1.0 + 0.01 * (i % 3))});
  return c;
}

}  // namespace

TEST_CASE("svg output is deterministic and kind-checked") {
  Csv c = slice_csv();
  std::string a = render_svg(c, SvgKind::Slice);
  std::string b = render_svg(c, SvgKind::Slice);
  CHECK(a == b);
  CHECK(a.find("width=\"800\"") != std::string::npos);
  CHECK(a.find("height=\"800\"") != std::string::npos);
  CHECK_THROWS_AS(render_svg(c, SvgKind::Density), UsageError);
}

TEST_CASE("all four svg kinds render") {
  CHECK(render_svg(slice_csv(), SvgKind::Slice).find("polygon") != std::string::npos);

  Csv d;
  d.header = {"bin_lo", "bin_hi", "mass"};
  for (int i = 0; i < 8; ++i)
    d.rows.push_back({fmt(kTwoPi * i / 8), fmt(kTwoPi * (i + 1) / 8), fmt(0.125)});
  CHECK(render_svg(d, SvgKind::Density).find("rect") != std::string::npos);

  Csv z;
  z.header = {"level", "theta", "t"};
  z.rows.push_back({"1", fmt(3.1), fmt(0.5)});
  CHECK(render_svg(z, SvgKind::Zeros).find("circle") != std::string::npos);

  Csv pr;
  pr.header = {"j", "bandwidth"};
  for (int j = 1; j <= 16; ++j)
    pr.rows.push_back({std::to_string(j), std::to_string(j * j)});
  CHECK(render_svg(pr, SvgKind::Probe).find("circle") != std::string::npos);

  CHECK_THROWS_AS(svg_kind_from_name("heatmap"), UsageError);
}

// Integration tests for the sacirc binary; its path arrives via SACIRC_BIN.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

std::string bin() {
  const char* p = std::getenv("SACIRC_BIN");
  REQUIRE(p != nullptr);
  return p;
}

int run(const std::string& args, std::string* out = nullptr) {
  fs::path tmp = fs::temp_directory_path() / "sac_cli_out.txt";
  int rc = std::system((bin() + " " + args + " > " + tmp.string() + " 2>&1").c_str());
  if (out) {
    std::ifstream f(tmp);
    std::stringstream ss;
    ss << f.rdbuf();
    *out = ss.str();
  }
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int line_count(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("unknown subcommand exits 2 and writes nothing") {
  fs::path out = fs::temp_directory_path() / "sac_cli_none.csv";
  fs::remove(out);
  CHECK(run("frobnicate --out " + out.string()) == 2);
  CHECK(!fs::exists(out));
}

TEST_CASE("slice writes the requested number of rows") {
  fs::path out = fs::temp_directory_path() / "sac_cli_slice.csv";
  CHECK(run("slice --map g --fiber 0.05 --thetas 8 --tol 1e-6 --out " +
            out.string()) == 0);
  std::string text = slurp(out);
  CHECK(line_count(text) == 9);  // header + 8 rows
  CHECK(text.rfind("theta,radius", 0) == 0);
  fs::remove(out);
}

TEST_CASE("series emits the exact first-order coefficient") {
  fs::path out = fs::temp_directory_path() / "sac_cli_series.csv";
  CHECK(run("series --map f --order 8 --exact --out " + out.string()) == 0);
  std::string text = slurp(out);
  CHECK(text.find("\n1,0,-0.66666666666666663,0\n") != std::string::npos);
  fs::remove(out);
}

TEST_CASE("domain errors exit 1") {
  fs::path out = fs::temp_directory_path() / "sac_cli_fail.csv";
  // both bracket endpoints on the same side of the boundary
  CHECK(run("slice --map g --fiber 0.02 --thetas 4 --r-lo 1.2 --r-hi 1.4 "
            "--out " + out.string()) == 1);
  fs::remove(out);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("slice --map g --thetas notanumber --out /tmp/x.csv") == 2);
  CHECK(run("slice --map g --thetas 4") == 2);  // --out required
}

TEST_CASE("dump-config round-trips through --config") {
  std::string dump1;
  CHECK(run("slice --map g --fiber 0.07 --thetas 12 --dump-config", &dump1) == 0);
  fs::path cfg = fs::temp_directory_path() / "sac_cli_cfg.json";
  std::ofstream(cfg) << dump1;
  std::string dump2;
  CHECK(run("slice --config " + cfg.string() + " --dump-config", &dump2) == 0);
  CHECK(dump1 == dump2);
  // flags still override the file
  std::string dump3;
  CHECK(run("slice --config " + cfg.string() + " --thetas 5 --dump-config",
            &dump3) == 0);
  CHECK(dump3.find("\"thetas\": 5") != std::string::npos);
  fs::remove(cfg);
}

TEST_CASE("svg rendering is byte-identical across runs") {
  fs::path out = fs::temp_directory_path() / "sac_cli_svg.csv";
  fs::path svg = fs::temp_directory_path() / "sac_cli_svg.svg";
  CHECK(run("slice --map g --fiber 0.05 --thetas 8 --tol 1e-6 --svg --out " +
            out.string()) == 0);
  std::string first = slurp(svg);
  CHECK(run("slice --map g --fiber 0.05 --thetas 8 --tol 1e-6 --svg --out " +
            out.string()) == 0);
  CHECK(slurp(svg) == first);
  CHECK(!first.empty());
  fs::remove(out);
  fs::remove(svg);
}

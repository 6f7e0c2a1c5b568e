// sacirc: command-line front end for the superattracting-circle toolkit.
//
// Exit codes: 0 success, 1 domain error (guard violation, bracket failure,
// ...), 2 usage/schema error.  Every subcommand accepts --config <json>
// (flags override file values) and --dump-config (print the effective
// configuration and exit without running).

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sac/bottcher.hpp"
#include "sac/csvio.hpp"
#include "sac/errors.hpp"
#include "sac/eval.hpp"
#include "sac/leeyang.hpp"
#include "sac/manifold.hpp"
#include "sac/mapspec.hpp"
#include "sac/parallel.hpp"
#include "sac/preimages.hpp"
#include "sac/series.hpp"
#include "sac/svg.hpp"

using nlohmann::json;
using namespace sac;

namespace {

// Effective configuration: JSON file values overridden by flags, dumpable.
struct Config {
  json values = json::object();
  bool dump = false;
  std::string subcommand;

  double num(const std::string& k, double dflt) {
    if (!values.contains(k)) values[k] = dflt;
    return values[k].get<double>();
  }
  int integer(const std::string& k, int dflt) {
    if (!values.contains(k)) values[k] = dflt;
    return values[k].get<int>();
  }
  std::string str(const std::string& k, const std::string& dflt) {
    if (!values.contains(k)) values[k] = dflt;
    return values[k].get<std::string>();
  }
  bool flag(const std::string& k, bool dflt) {
    if (!values.contains(k)) values[k] = dflt;
    return values[k].get<bool>();
  }
};

// Register a numeric/string/bool option whose default may come from the
// config file; a passed flag wins.
void opt_num(CLI::App* cmd, Config& cfg, const std::string& flag,
             const std::string& key, const std::string& help) {
  cmd->add_option_function<double>(
      flag, [&cfg, key](double v) { cfg.values[key] = v; }, help);
}

void opt_int(CLI::App* cmd, Config& cfg, const std::string& flag,
             const std::string& key, const std::string& help) {
  cmd->add_option_function<int>(
      flag, [&cfg, key](int v) { cfg.values[key] = v; }, help);
}

void opt_str(CLI::App* cmd, Config& cfg, const std::string& flag,
             const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&cfg, key](const std::string& v) { cfg.values[key] = v; }, help);
}

void opt_bool(CLI::App* cmd, Config& cfg, const std::string& flag,
              const std::string& key, const std::string& help) {
  cmd->add_flag_function(
      flag, [&cfg, key](std::int64_t n) { cfg.values[key] = n > 0; }, help);
}

void common_options(CLI::App* cmd, Config& cfg) {
  cmd->add_option_function<std::string>(
      "--config",
      [&cfg](const std::string&) {},  // consumed in the pre-scan
      "JSON config file; flags override its values");
  cmd->add_flag_function(
      "--dump-config", [&cfg](std::int64_t) { cfg.dump = true; },
      "print the effective configuration and exit");
  opt_int(cmd, cfg, "--rng-seed", "rng_seed", "deterministic RNG seed");
  opt_int(cmd, cfg, "--threads", "threads", "worker cap");
  opt_str(cmd, cfg, "--out", "output_path", "output artifact path");
  opt_bool(cmd, cfg, "--svg", "emit_svg",
           "also render an SVG next to the CSV artifact");
}

ChartPoint point_from_cfg(const MapSpec& m, Config& cfg) {
  ChartPoint p;
  std::string chart = cfg.str("chart", "");
  p.chart = chart.empty() ? m.frame.chart : chart_from_name(chart);
  p.c1 = {cfg.num("c1_re", 1.1), cfg.num("c1_im", 0.0)};
  p.c2 = {cfg.num("c2_re", 0.01), cfg.num("c2_im", 0.0)};
  return p;
}

std::string svg_path(const std::string& csv_path) {
  auto dot = csv_path.find_last_of('.');
  return (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) +
         ".svg";
}

void maybe_svg(Config& cfg, const std::string& csv_path, SvgKind kind) {
  if (cfg.flag("emit_svg", false))
    render_svg_file(csv_path, kind, svg_path(csv_path));
}

// Per-subcommand defaults, merged under config-file values and flags.
json defaults_for(const std::string& sub) {
  json d{{"rng_seed", 0},
         {"threads", max_threads()},
         {"output_path", ""},
         {"emit_svg", false}};
  if (sub == "phi")
    d.update({{"map", "g"}, {"tol", 1e-12}, {"n_max", 96},
              {"experimental", false}, {"working_digits", 40}, {"chart", ""},
              {"c1_re", 1.1}, {"c1_im", 0.0}, {"c2_re", 0.01}, {"c2_im", 0.0}});
  else if (sub == "region")
    d.update({{"map", "g"}, {"guard", 0.5}, {"samples", 20000}});
  else if (sub == "slice")
    d.update({{"map", "g"}, {"fiber_re", 0.02}, {"fiber_im", 0.0},
              {"thetas", 64}, {"tol", 1e-6}, {"r_lo", 0.5}, {"r_hi", 1.5},
              {"psi", false}});
  else if (sub == "series")
    d.update({{"map", "f"}, {"order", 24}, {"exact", true}});
  else if (sub == "probe")
    d.update({{"map", "f"}, {"order", 64}, {"radii", "1.05"}, {"fit_lo", 8},
              {"fit_hi", -1}});
  else if (sub == "preimages")
    d.update({{"map", "R"}, {"chart", ""}, {"c1_re", 0.3}, {"c1_im", 0.2},
              {"c2_re", 0.4}, {"c2_im", 0.1}, {"tol", 1e-9}});
  else if (sub == "distortion")
    d.update({{"map", "R"}, {"gamma", 3}, {"eps", 0.05}, {"n", 4},
              {"samples", 500}});
  else if (sub == "tension")
    d.update({{"map", "R"}, {"eps", 0.05}, {"k", 3}});
  else if (sub == "ly-zeros")
    d.update({{"map", "R"}, {"levels", 4}, {"seed_points", 50},
              {"seed_theta", kPi}, {"max_points", 8000},
              {"seed_id", "default"}});
  else if (sub == "ly-density")
    d.update({{"map", "R"}, {"t0", 0.05}, {"leaves", 3200}, {"step", 0.005},
              {"tol", 1e-10}});
  return d;
}

std::string require_out(Config& cfg) {
  std::string out = cfg.str("output_path", "");
  if (out.empty()) throw UsageError("--out is required for this subcommand");
  return out;
}

// ---------------------------------------------------------------- commands

int cmd_phi(Config& cfg) {
  const MapSpec& m = find_map(cfg.str("map", "g"));
  PhiOptions opt;
  opt.tol = cfg.num("tol", 1e-12);
  opt.n_max = cfg.integer("n_max", 96);
  opt.experimental = cfg.flag("experimental", false);
  opt.working_digits = cfg.integer("working_digits", 40);
  BottcherResult r = bottcher_phi(m, point_from_cfg(m, cfg), opt);
  std::string out = cfg.str("output_path", "");
  std::vector<std::string> row{fmt(r.value.real()),      fmt(r.value.imag()),
                               fmt(r.log_value.real()),  fmt(r.log_value.imag()),
                               fmt(r.truncation_bound),  std::to_string(r.terms)};
  if (!out.empty())
    write_csv_atomic(out,
                     {"value_re", "value_im", "log_re", "log_im",
                      "truncation_bound", "terms"},
                     {row});
  std::printf("phi = %.17g + %.17gi  (terms=%d, tail<=%.3g)\n", r.value.real(),
              r.value.imag(), r.terms, r.truncation_bound);
  return 0;
}

int cmd_region(Config& cfg) {
  const MapSpec& m = find_map(cfg.str("map", "g"));
  double K = cfg.num("guard", 0.5);
  int n = cfg.integer("samples", 20000);
  auto seed = static_cast<std::uint64_t>(cfg.integer("rng_seed", 0));
  RegionParams params = search_region(m, K, n, seed);
  RegionReport rep = validate_region(m, params, n, seed, true);
  std::string out = require_out(cfg);
  std::vector<std::vector<std::string>> rows;
  for (const RegionSampleRow& r : rep.rows)
    rows.push_back({fmt(r.z.real()), fmt(r.z.imag()), fmt(r.w.real()),
                    fmt(r.w.imag()), fmt(r.guard),
                    r.violated ? "1" : "0"});
  write_csv_atomic(out,
                   {"sample_z_re", "sample_z_im", "sample_w_re", "sample_w_im",
                    "guard_value", "violated"},
                   rows);
  std::printf("region params: %s\n", params.to_json().c_str());
  std::printf("region: %d samples, %d violations, guard_max=%.3g, %s\n",
              rep.n_samples, rep.violations, rep.guard_max,
              rep.success ? "valid" : "invalid");
  return rep.success ? 0 : 1;
}

int cmd_slice(Config& cfg) {
  const MapSpec& m = find_map(cfg.str("map", "g"));
  cd fiber{cfg.num("fiber_re", 0.02), cfg.num("fiber_im", 0.0)};
  int n = cfg.integer("thetas", 64);
  double tol = cfg.num("tol", 1e-6);
  SliceOptions opt;
  opt.r_lo = cfg.num("r_lo", 0.5);
  opt.r_hi = cfg.num("r_hi", 1.5);
  bool use_psi = cfg.flag("psi", false);
  SliceSample s = use_psi ? psi_zero_slice(m, fiber, n, tol, opt)
                          : bisect_slice(m, fiber, n, tol, opt);
  std::string out = require_out(cfg);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < s.thetas.size(); ++i)
    rows.push_back({fmt(s.thetas[i]), fmt(s.radii[i])});
  write_csv_atomic(out, {"theta", "radius"}, rows);
  maybe_svg(cfg, out, SvgKind::Slice);
  return 0;
}

int cmd_series(Config& cfg) {
  const MapSpec& m = find_map(cfg.str("map", "f"));
  int J = cfg.integer("order", 24);
  CircleSeries s = solve_series(m, J);
  std::string out = require_out(cfg);
  std::vector<std::vector<std::string>> rows;
  for (int j = 0; j <= s.J; ++j) {
    const LaurentQ& c = s.coeffs[j];
    if (c.is_zero()) continue;
    double denom = std::pow(double(c.base()), double(c.denom_exp()));
    for (long i = 0; i < static_cast<long>(c.nums().size()); ++i) {
      if (c.nums()[i] == 0) continue;
      rows.push_back({std::to_string(j), std::to_string(c.lo() + i),
                      fmt(c.nums()[i].get_d() / denom), fmt(0.0)});
    }
  }
  write_csv_atomic(out, {"j", "mode", "coeff_re", "coeff_im"}, rows);
  std::printf("series: J=%d, residual valuation %ld\n", s.J,
              residual_valuation(m, s));
  return 0;
}

int cmd_probe(Config& cfg) {
  const MapSpec& m = find_map(cfg.str("map", "f"));
  int J = cfg.integer("order", 64);
  CircleSeries s = solve_series(m, J);
  std::vector<double> radii;
  {
    std::string spec = cfg.str("radii", "1.05");
    std::size_t pos = 0;
    while (pos < spec.size()) {
      std::size_t comma = spec.find(',', pos);
      radii.push_back(std::strtod(spec.substr(pos, comma - pos).c_str(), nullptr));
      pos = comma == std::string::npos ? spec.size() : comma + 1;
    }
  }
  ProbeReport rep = analyticity_probe(s, radii, cfg.integer("fit_lo", 8),
                                      cfg.integer("fit_hi", -1));
  std::string out = require_out(cfg);
  std::vector<std::string> header{"j", "bandwidth"};
  for (std::size_t r = 0; r < radii.size(); ++r)
    header.push_back("rho_" + std::to_string(r));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t j = 0; j < rep.bandwidth.size(); ++j) {
    std::vector<std::string> row{std::to_string(j),
                                 std::to_string(rep.bandwidth[j])};
    for (std::size_t r = 0; r < radii.size(); ++r)
      row.push_back(fmt(rep.rho[r][j]));
    rows.push_back(row);
  }
  write_csv_atomic(out, header, rows);
  maybe_svg(cfg, out, SvgKind::Probe);
  std::printf("probe: growth exponent %.4f (fit residual %.3g)\n",
              rep.growth_exponent, rep.fit_residual);
  return 0;
}

int cmd_preimages(Config& cfg) {
  const MapSpec& m = find_map(cfg.str("map", "R"));
  ChartPoint target = point_from_cfg(m, cfg);
  PreimageOptions opt;
  opt.verify_tol = cfg.num("tol", 1e-9);
  std::vector<ChartPoint> pre = preimages(m, target, opt);
  std::string out = require_out(cfg);
  std::vector<std::vector<std::string>> rows;
  for (const ChartPoint& p : pre)
    rows.push_back({fmt(p.c1.real()), fmt(p.c1.imag()), fmt(p.c2.real()),
                    fmt(p.c2.imag())});
  write_csv_atomic(out, {"c1_re", "c1_im", "c2_re", "c2_im"}, rows);
  std::printf("preimages: %zu solutions\n", pre.size());
  return 0;
}

int cmd_distortion(Config& cfg) {
  DistortionReport rep = distortion_check(
      cfg.integer("gamma", 3), cfg.num("eps", 0.05), cfg.integer("n", 4),
      cfg.integer("samples", 500),
      static_cast<std::uint64_t>(cfg.integer("rng_seed", 0)));
  std::string out = cfg.str("output_path", "");
  if (!out.empty())
    write_csv_atomic(out,
                     {"gamma", "eps", "n", "samples", "ratio_min", "ratio_max",
                      "q_samples", "q_ratio_min", "q_ratio_max"},
                     {{std::to_string(rep.gamma), fmt(rep.eps),
                       std::to_string(rep.n_used), std::to_string(rep.samples),
                       fmt(rep.ratio_min), fmt(rep.ratio_max),
                       std::to_string(rep.q_samples), fmt(rep.q_ratio_min),
                       fmt(rep.q_ratio_max)}});
  std::printf("distortion: n=%d, %d survivors, ratio in [%.6g, %.6g]\n",
              rep.n_used, rep.samples, rep.ratio_min, rep.ratio_max);
  return 0;
}

int cmd_tension(Config& cfg) {
  TensionReport rep =
      tension_experiment(cfg.num("eps", 0.05), cfg.integer("k", 3));
  std::string out = cfg.str("output_path", "");
  if (!out.empty())
    write_csv_atomic(
        out,
        {"eps", "k", "gamma", "vertical_len", "vertical_p_log10",
         "vertical_q_log10", "horizontal_len", "horizontal_exited",
         "horizontal_p_abs", "horizontal_q_abs"},
        {{fmt(rep.eps), std::to_string(rep.k), std::to_string(rep.gamma),
          std::to_string(rep.vertical_len), fmt(rep.vertical_p_log10),
          fmt(rep.vertical_q_log10), std::to_string(rep.horizontal_len),
          rep.horizontal_exited ? "1" : "0", fmt(rep.horizontal_p_abs),
          fmt(rep.horizontal_q_abs)}});
  std::printf("tension: k=%d vertical log10|p|=%.3f, horizontal |p|=%.6g%s\n",
              rep.k, rep.vertical_p_log10, rep.horizontal_p_abs,
              rep.horizontal_exited ? " (chain exits the bidisc)" : "");
  return 0;
}

int cmd_ly_zeros(Config& cfg) {
  const MapSpec& m = find_map(cfg.str("map", "R"));
  int levels = cfg.integer("levels", 4);
  PullbackOptions opt;
  opt.max_points = static_cast<std::size_t>(cfg.integer("max_points", 8000));
  ZeroSet zs = seed_zeros(cfg.integer("seed_points", 50),
                          cfg.num("seed_theta", kPi), cfg.str("seed_id", "default"));
  std::vector<std::vector<std::string>> rows;
  auto append = [&rows](const ZeroSet& z) {
    for (const CylinderPoint& p : z.points)
      rows.push_back({std::to_string(z.level), fmt(p.theta), fmt(p.t)});
  };
  append(zs);
  for (int l = 0; l < levels; ++l) {
    zs = pullback_zeros(m, zs, opt);
    append(zs);
  }
  std::string out = require_out(cfg);
  write_csv_atomic(out, {"level", "theta", "t"}, rows);
  maybe_svg(cfg, out, SvgKind::Zeros);
  std::printf("ly-zeros: level %d has %zu points (%d targets skipped)\n",
              zs.level, zs.points.size(), zs.skipped);
  return 0;
}

int cmd_ly_density(Config& cfg) {
  const MapSpec& m = find_map(cfg.str("map", "R"));
  LeafOptions opt;
  opt.step = cfg.num("step", 0.005);
  opt.tol = cfg.num("tol", 1e-10);
  DensityHistogram h =
      density(m, cfg.num("t0", 0.05), cfg.integer("leaves", 3200), opt);
  std::string out = require_out(cfg);
  std::vector<std::vector<std::string>> rows;
  for (const auto& b : h.bins)
    rows.push_back({fmt(b.lo), fmt(b.hi), fmt(b.mass)});
  write_csv_atomic(out, {"bin_lo", "bin_hi", "mass"}, rows);
  maybe_svg(cfg, out, SvgKind::Density);
  std::printf("ly-density: t0=%.4g, %d leaves, %zu bins\n", h.t, h.n_samples,
              h.bins.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sacirc: dynamics near superattracting invariant circles"};
  app.require_subcommand(1);

  Config cfg;
  // Pre-scan for --config so file values become flag defaults.
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    std::string path;
    if (a == "--config" && i + 1 < argc) path = argv[i + 1];
    else if (a.rfind("--config=", 0) == 0) path = a.substr(9);
    if (path.empty()) continue;
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) {
      std::fprintf(stderr, "error: cannot open config '%s'\n", path.c_str());
      return 2;
    }
    std::string text;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, fp)) > 0) text.append(buf, got);
    std::fclose(fp);
    try {
      cfg.values = json::parse(text);
      if (!cfg.values.is_object()) throw UsageError("config must be an object");
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: bad config: %s\n", e.what());
      return 2;
    }
  }

  std::map<std::string, int (*)(Config&)> handlers{
      {"phi", cmd_phi},           {"region", cmd_region},
      {"slice", cmd_slice},       {"series", cmd_series},
      {"probe", cmd_probe},       {"preimages", cmd_preimages},
      {"distortion", cmd_distortion}, {"tension", cmd_tension},
      {"ly-zeros", cmd_ly_zeros}, {"ly-density", cmd_ly_density}};

  for (auto& [name, fn] : handlers) {
    CLI::App* cmd = app.add_subcommand(name);
    common_options(cmd, cfg);
    opt_str(cmd, cfg, "--map", "map",
            "catalog map name");
    if (name == "phi") {
      opt_num(cmd, cfg, "--tol", "tol", "product truncation tolerance");
      opt_int(cmd, cfg, "--n-max", "n_max", "factor budget");
      opt_bool(cmd, cfg, "--experimental", "experimental",
               "allow a < b maps");
      opt_int(cmd, cfg, "--working-digits", "working_digits", "precision");
      opt_str(cmd, cfg, "--chart", "chart", "chart of the input point");
      opt_num(cmd, cfg, "--c1-re", "c1_re", "first coordinate, real");
      opt_num(cmd, cfg, "--c1-im", "c1_im", "first coordinate, imag");
      opt_num(cmd, cfg, "--c2-re", "c2_re", "second coordinate, real");
      opt_num(cmd, cfg, "--c2-im", "c2_im", "second coordinate, imag");
    } else if (name == "region") {
      opt_num(cmd, cfg, "--guard", "guard", "guard bound K");
      opt_int(cmd, cfg, "--samples", "samples", "Monte-Carlo samples");
    } else if (name == "slice") {
      opt_num(cmd, cfg, "--fiber", "fiber_re", "transverse fiber, real");
      opt_num(cmd, cfg, "--fiber-im", "fiber_im", "transverse fiber, imag");
      opt_int(cmd, cfg, "--thetas", "thetas", "number of rays");
      opt_num(cmd, cfg, "--tol", "tol", "radial bisection tolerance");
      opt_num(cmd, cfg, "--r-lo", "r_lo", "radial bracket, inner");
      opt_num(cmd, cfg, "--r-hi", "r_hi", "radial bracket, outer");
      opt_bool(cmd, cfg, "--psi", "psi",
               "use the psi=0 level set instead of basin bisection");
    } else if (name == "series") {
      opt_int(cmd, cfg, "--order", "order", "truncation order J");
      opt_bool(cmd, cfg, "--exact", "exact",
               "exact rational arithmetic (always on)");
    } else if (name == "probe") {
      opt_int(cmd, cfg, "--order", "order", "truncation order J");
      opt_str(cmd, cfg, "--radii", "radii", "annulus radii, comma list");
      opt_int(cmd, cfg, "--fit-lo", "fit_lo", "fit window start");
      opt_int(cmd, cfg, "--fit-hi", "fit_hi", "fit window end (-1: J)");
    } else if (name == "preimages") {
      opt_str(cmd, cfg, "--chart", "chart", "chart of the target");
      opt_num(cmd, cfg, "--c1-re", "c1_re", "target c1, real");
      opt_num(cmd, cfg, "--c1-im", "c1_im", "target c1, imag");
      opt_num(cmd, cfg, "--c2-re", "c2_re", "target c2, real");
      opt_num(cmd, cfg, "--c2-im", "c2_im", "target c2, imag");
      opt_num(cmd, cfg, "--tol", "tol", "forward-verification tolerance");
    } else if (name == "distortion") {
      opt_int(cmd, cfg, "--gamma", "gamma", "cone exponent");
      opt_num(cmd, cfg, "--eps", "eps", "bidisc radius");
      opt_int(cmd, cfg, "--n", "n", "orbit length");
      opt_int(cmd, cfg, "--samples", "samples", "surviving sample quota");
    } else if (name == "tension") {
      opt_num(cmd, cfg, "--eps", "eps", "bidisc radius");
      opt_int(cmd, cfg, "--k", "k", "preorbit depth");
    } else if (name == "ly-zeros") {
      opt_int(cmd, cfg, "--levels", "levels", "pullback levels");
      opt_int(cmd, cfg, "--seed-points", "seed_points", "seed resolution");
      opt_num(cmd, cfg, "--seed-theta", "seed_theta",
              "seed curve angle (default curve {theta, t in [0,1]})");
      opt_int(cmd, cfg, "--max-points", "max_points",
              "per-level cap (deterministic subsampling)");
      opt_str(cmd, cfg, "--seed-id", "seed_id", "seed label");
    } else if (name == "ly-density") {
      opt_num(cmd, cfg, "--t0", "t0", "target cylinder height");
      opt_int(cmd, cfg, "--leaves", "leaves", "holonomy leaf count");
      opt_num(cmd, cfg, "--step", "step", "leaf continuation step");
      opt_num(cmd, cfg, "--tol", "tol", "corrector tolerance");
    }
    cmd->callback([&cfg, name = name]() { cfg.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  json merged = defaults_for(cfg.subcommand);
  merged.update(cfg.values);  // file values and flags override defaults
  cfg.values = std::move(merged);
  cfg.values["subcommand"] = cfg.subcommand;
  max_threads() = std::max(1, cfg.integer("threads", max_threads()));

  if (cfg.dump) {
    std::cout << cfg.values.dump(2) << "\n";
    return 0;
  }

  try {
    return handlers.at(cfg.subcommand)(cfg);
  } catch (const DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 1;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

// End-to-end acceptance suite: one pass/fail line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "sac/bottcher.hpp"
#include "sac/eval.hpp"
#include "sac/leeyang.hpp"
#include "sac/manifold.hpp"
#include "sac/mapspec.hpp"
#include "sac/preimages.hpp"
#include "sac/series.hpp"

using namespace sac;
using clock_t_ = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, double seconds,
            const std::string& detail) {
  std::printf("[%s] %2d %-28s (%6.1fs) %s\n", ok ? "PASS" : "FAIL", id, name,
              seconds, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class Fn>
void criterion(int id, const char* name, Fn fn) {
  auto t0 = clock_t_::now();
  bool ok = false;
  std::string detail;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(id, name, ok, std::chrono::duration<double>(clock_t_::now() - t0).count(),
         detail);
}

std::string g3(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

}  // namespace

int main() {
  // 1. Functional-equation invariance of the Boettcher coordinate on a
  //    validated region: phi(g(x)) = phi(x)^2 to 1e-8 on 1000 points.
  criterion(1, "boettcher-invariance", [](std::string& d) {
    const MapSpec& g = find_map("g");
    RegionParams region = search_region(g, 0.5, 8000, 0);
    PhiOptions opt;
    opt.tol = 1e-9;
    CounterRng rng{17};
    double worst = 0;
    int done = 0;
    for (std::uint64_t i = 0; done < 1000 && i < 200000; ++i) {
      ChartPoint x{g.frame.chart,
                   std::polar(rng.uniform(4 * i, 0.7, 1.4), rng.uniform(4 * i + 1, 0, kTwoPi)),
                   std::polar(rng.uniform(4 * i + 2, 0.0, 1e-3), rng.uniform(4 * i + 3, 0, kTwoPi))};
      if (!in_region(g, region, x)) continue;
      try {
        cd phi_x = bottcher_phi(g, x, opt).value;
        cd phi_gx = bottcher_phi(g, eval(g, x), opt).value;
        worst = std::max(worst, std::abs(phi_gx - phi_x * phi_x));
        ++done;
      } catch (const DomainError&) {
      }
    }
    d = "n=" + std::to_string(done) + " max|phi(g(x))-phi(x)^2|=" + g3(worst);
    return done == 1000 && worst <= 1e-8;
  });

  // 2. Identity on the invariant line: phi(z, 0) = z.
  criterion(2, "line-identity", [](std::string& d) {
    const MapSpec& g = find_map("g");
    CounterRng rng{23};
    double worst = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      cd z = std::polar(rng.uniform(2 * i, 0.5, 2.0), rng.uniform(2 * i + 1, 0, kTwoPi));
      worst = std::max(
          worst, std::abs(bottcher_phi(g, {g.frame.chart, z, cd(0, 0)}).value - z));
    }
    d = "max|phi(z,0)-z|=" + g3(worst);
    return worst <= 1e-13;
  });

  // 3. The psi = 0 level set equals the basin boundary located by bisection.
  criterion(3, "level-set-vs-bisection", [](std::string& d) {
    const MapSpec& g = find_map("g");
    SliceSample a = bisect_slice(g, cd(0.02, 0.0), 64, 1e-8);
    SliceSample b = psi_zero_slice(g, cd(0.02, 0.0), 64, 1e-8);
    double sup = 0;
    for (std::size_t i = 0; i < a.radii.size(); ++i)
      sup = std::max(sup, std::fabs(a.radii[i] - b.radii[i]));
    d = "sup|r_psi - r_bisect|=" + g3(sup);
    return sup <= 1e-6;
  });

  // 4. The Newton-map slice at x = 0 is the known vertical line of the
  //    y-plane circle (Re y = 1/2; theta = 0 maps to y = infinity and is
  //    excluded).
  criterion(4, "newton-circle", [](std::string& d) {
    const MapSpec& N = find_map("N");
    SliceSample s = bisect_slice(N, cd(0.0, 0.0), 64, 1e-11);
    double worst = 0;
    int used = 0;
    for (std::size_t i = 0; i < s.thetas.size(); ++i) {
      cd sv = std::polar(s.radii[i], s.thetas[i]);
      if (std::abs(sv - cd(1.0, 0.0)) < 1e-2) continue;  // y = infinity
      cd y = sv / (sv - cd(1.0, 0.0));  // s = y/(y-1) inverts to y = s/(s-1)
      worst = std::max(worst, std::fabs(y.real() - 0.5));
      ++used;
    }
    d = "rays=" + std::to_string(used) + " max|Re y - 1/2|=" + g3(worst);
    return used >= 60 && worst <= 1e-9;
  });

  // 5. The renormalization map has topological degree eight.
  criterion(5, "degree-eight-preimages", [](std::string& d) {
    const MapSpec& R = find_map("R");
    CounterRng rng{31};
    int full = 0, tried = 0;
    double worst = 0;
    for (std::uint64_t i = 0; tried < 100 && i < 200; ++i) {
      ChartPoint tgt{ChartId::PhysicalZT,
                     cd(rng.uniform(4 * i, -0.8, 0.8), rng.uniform(4 * i + 1, -0.8, 0.8)),
                     cd(rng.uniform(4 * i + 2, -0.8, 0.8), rng.uniform(4 * i + 3, -0.8, 0.8))};
      std::vector<ChartPoint> pre;
      try {
        pre = preimages(R, tgt);
      } catch (const DomainError&) {
        continue;  // degenerate target; resample
      }
      ++tried;
      if (pre.size() != 8) continue;
      double err = 0;
      for (const ChartPoint& p : pre) {
        ChartPoint fwd = eval(R, p);
        err = std::max(err, std::abs(fwd.c1 - tgt.c1) + std::abs(fwd.c2 - tgt.c2));
      }
      worst = std::max(worst, err);
      if (err <= 1e-9) ++full;
    }
    d = std::to_string(full) + "/100 targets, max fwd err=" + g3(worst);
    return full == 100;
  });

  // 6. Exact low-order series coefficients and residual valuation.
  criterion(6, "series-oracles", [](std::string& d) {
    const MapSpec& f = find_map("f");
    CircleSeries s = solve_series(f, 24);
    // a_1 = -2/3: single mode 0 with value -2/3 (exact)
    const LaurentQ& a1 = s.coeffs[1];
    bool ok1 = a1.bandwidth() == 0 && a1.lo() == 0;
    if (ok1) {
      mpz_class b3(3), p;
      mpz_pow_ui(p.get_mpz_t(), b3.get_mpz_t(), a1.denom_exp());
      ok1 = 3 * a1.nums()[0] == -2 * p;
    }
    // a_2 = (4 z0 - 2) / (9 z0^2): modes -2 and -1 with -2/9 and 4/9
    const LaurentQ& a2 = s.coeffs[2];
    bool ok2 = a2.lo() == -2 && a2.hi() == -1;
    if (ok2) {
      mpz_class b3(3), p;
      mpz_pow_ui(p.get_mpz_t(), b3.get_mpz_t(), a2.denom_exp());
      ok2 = 9 * a2.nums()[0] == -2 * p && 9 * a2.nums()[1] == 4 * p;
    }
    long val = residual_valuation(f, s);
    d = "a1 " + std::string(ok1 ? "exact" : "WRONG") + ", a2 " +
        std::string(ok2 ? "exact" : "WRONG") + ", residual valuation " +
        std::to_string(val);
    return ok1 && ok2 && val > 24;
  });

  // 7. Laurent-bandwidth dichotomy between f (a < b) and the control map m.
  criterion(7, "analyticity-dichotomy", [](std::string& d) {
    ProbeReport pf = analyticity_probe(solve_series(find_map("f"), 128), {1.05}, 8, 128);
    ProbeReport pm = analyticity_probe(solve_series(find_map("m"), 128), {1.05}, 8, 128);
    d = "exponent f=" + g3(pf.growth_exponent) + " m=" + g3(pm.growth_exponent);
    return pf.growth_exponent >= 1.4 && pf.growth_exponent <= 1.8 &&
           pm.growth_exponent <= 1.1;
  });

  // 8. Distortion of the bullet orbits: tight ratio interval, stable in n.
  criterion(8, "distortion", [](std::string& d) {
    DistortionReport r3 = distortion_check(3, 0.05, 3, 500, 0);
    DistortionReport r4 = distortion_check(3, 0.05, 4, 500, 0);
    bool overlap = r3.ratio_min <= r4.ratio_max && r4.ratio_min <= r3.ratio_max;
    double spread = r4.ratio_max / r4.ratio_min;
    d = "n=4 survivors=" + std::to_string(r4.samples) +
        " spread=" + g3(spread) + (overlap ? " intervals overlap" : " DISJOINT");
    return r4.samples == 500 && spread < 10.0 && overlap;
  });

  // 9. Preorbit tension: vertical proxy sinks, horizontal proxy stays
  //    bounded below by eps^4 / 2.
  criterion(9, "preorbit-tension", [](std::string& d) {
    double eps = 0.05, eps4 = eps * eps * eps * eps;
    double prev = 1e9;
    bool mono = true, hor = true;
    double v2 = 0, v6 = 0;
    for (int k = 2; k <= 6; ++k) {
      TensionReport r = tension_experiment(eps, k);
      if (k == 2) v2 = r.vertical_p_log10;
      if (k == 6) v6 = r.vertical_p_log10;
      if (r.vertical_p_log10 >= prev) mono = false;
      prev = r.vertical_p_log10;
      if (r.horizontal_p_abs < 0.5 * eps4) hor = false;
    }
    bool tenfold = (v2 - v6) >= 1.0;  // >= 10x decrease in |p|
    d = "vertical log10|p| k=2..6: " + g3(v2) + " -> " + g3(v6) +
        (mono ? ", monotone" : ", NOT monotone") +
        (hor ? ", horizontal >= eps^4/2" : ", horizontal TOO SMALL");
    return mono && tenfold && hor;
  });

  // 10. Lee-Yang cylinder pipeline: invariance, uniform base density,
  //     seed-independent level-8 zero histograms.
  criterion(10, "cylinder-pipeline", [](std::string& d) {
    const MapSpec& R = find_map("R");
    CounterRng rng{41};
    int inv_fail = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
      CylinderPoint x{rng.uniform(2 * i, 0, kTwoPi), rng.uniform(2 * i + 1, 0, 1)};
      try {
        cyl_eval(R, x);
      } catch (const DomainError&) {
        ++inv_fail;
      }
    }
    DensityHistogram mu0 = density(R, 0.0, 10000);
    std::vector<double> arrivals;
    for (int i = 0; i < 10000; ++i)
      arrivals.push_back(
          holonomy_leaf(R, kTwoPi * i / 10000.0, 0.0).samples.back().second);
    double ks = ks_uniform(arrivals);
    (void)mu0;
    auto level8 = [&](double theta_seed, const char* id) {
      ZeroSet zs = seed_zeros(50, theta_seed, id);
      for (int l = 0; l < 8; ++l) {
        PullbackOptions o;
        o.max_points = (l == 7) ? std::size_t(-1) : 2000;
        zs = pullback_zeros(R, zs, o);
      }
      return zs;
    };
    ZeroSet za = level8(kPi, "a"), zb = level8(2 * kPi / 3, "b");
    double tv = tv_distance(zero_histogram(za, 16), zero_histogram(zb, 16));
    d = "invariance fails=" + std::to_string(inv_fail) + " KS=" + g3(ks) +
        " level-8 two-seed TV=" + g3(tv);
    return inv_fail == 0 && ks <= 0.01 && tv < 0.05;
  });

  std::printf("%s: %d/10 criteria passed\n", failures == 0 ? "SUCCESS" : "FAILURE",
              10 - failures);
  return failures == 0 ? 0 : 1;
}

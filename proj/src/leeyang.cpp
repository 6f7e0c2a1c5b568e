#include "sac/leeyang.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "sac/errors.hpp"
#include "sac/eval.hpp"
#include "sac/parallel.hpp"
#include "sac/preimages.hpp"

namespace sac {

namespace {

constexpr double kCircleTol = 1e-12;

const RationalPair& physical_formula(const MapSpec& m) {
  return m.formula(ChartId::PhysicalZT);
}

// Evaluate the physical-chart map at (exp(i theta), t) with mpf arithmetic,
// renormalizing z onto the circle first so only theta carries rounding error.
std::pair<cd, cd> big_cyl_step(const RationalPair& rp, double theta, double t,
                               int bits) {
  PrecGuard guard(bits);
  BigComplex z(cd(std::cos(theta), std::sin(theta)));
  mpf_class r = babs(z);
  z = BigComplex(z.re / r, z.im / r);
  BigComplex tt((mpf_class(t)), mpf_class(0));
  auto [zp, tp] = rp.eval(z, tt);
  return {to_cd(zp), to_cd(tp)};
}

}  // namespace

CylinderPoint cyl_eval(const MapSpec& m, const CylinderPoint& x) {
  if (x.t < 0.0 || x.t > 1.0)
    throw UsageError("cyl_eval: t outside [0,1]");
  if (x.t == 0.0) return {wrap_angle(4.0 * x.theta), 0.0};

  const RationalPair& rp = physical_formula(m);
  cd z(std::cos(x.theta), std::sin(x.theta));
  auto [zp, tp] = rp.eval(z, cd(x.t, 0.0));

  auto on_cylinder = [](const cd& zi, const cd& ti) {
    return std::isfinite(zi.real()) && std::isfinite(zi.imag()) &&
           std::fabs(std::abs(zi) - 1.0) <= kCircleTol &&
           std::fabs(ti.imag()) <= kCircleTol &&
           ti.real() >= -kCircleTol && ti.real() <= 1.0 + kCircleTol;
  };
  if (!on_cylinder(zp, tp)) {
    // Numerical drift: retry at 256 bits before declaring failure.
    std::tie(zp, tp) = big_cyl_step(rp, x.theta, x.t, 256);
    if (!on_cylinder(zp, tp))
      throw DomainError(ErrorCode::GuardViolation,
                        "cyl_eval: image left the cylinder at theta=" +
                            std::to_string(x.theta) +
                            " t=" + std::to_string(x.t));
  }
  double t_new = std::clamp(tp.real(), 0.0, 1.0);
  return {wrap_angle(std::arg(zp)), t_new};
}

ZeroSet seed_zeros(int n_points, double theta_seed,
                   const std::string& seed_id) {
  if (n_points < 2) throw UsageError("seed_zeros: need at least 2 points");
  ZeroSet zs;
  zs.level = 0;
  zs.seed_id = seed_id;
  zs.points.reserve(n_points);
  for (int i = 0; i < n_points; ++i)
    zs.points.push_back(
        {wrap_angle(theta_seed), double(i) / double(n_points - 1)});
  return zs;
}

ZeroSet pullback_zeros(const MapSpec& m, const ZeroSet& zs,
                       const PullbackOptions& opt) {
  if (zs.level < 0) throw UsageError("pullback_zeros: negative level");
  std::size_t n = zs.points.size();
  std::vector<std::vector<CylinderPoint>> found(n);
  std::vector<int> failed(n, 0);
  double fv_tol = 100.0 * opt.verify_tol;

  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const CylinderPoint& tgt = zs.points[i];
      ChartPoint target{ChartId::PhysicalZT,
                        cd(std::cos(tgt.theta), std::sin(tgt.theta)),
                        cd(tgt.t, 0.0)};
      std::vector<ChartPoint> pre;
      try {
        pre = preimages(m, target);
      } catch (const DomainError&) {
        failed[i] = 1;
        continue;
      }
      for (const ChartPoint& p : pre) {
        if (std::fabs(std::abs(p.c1) - 1.0) > opt.cyl_tol) continue;
        if (std::fabs(p.c2.imag()) > opt.cyl_tol) continue;
        double t = p.c2.real();
        if (t < -opt.cyl_tol || t > 1.0 + opt.cyl_tol) continue;
        CylinderPoint cp{wrap_angle(std::arg(p.c1)), std::clamp(t, 0.0, 1.0)};
        // One forward cylinder step must reproduce the target.
        try {
          CylinderPoint fwd = cyl_eval(m, cp);
          if (circle_dist(fwd.theta, tgt.theta) > fv_tol ||
              std::fabs(fwd.t - tgt.t) > fv_tol)
            continue;
        } catch (const DomainError&) {
          continue;
        }
        found[i].push_back(cp);
      }
    }
  });

  ZeroSet out;
  out.level = zs.level + 1;
  out.seed_id = zs.seed_id;
  out.skipped = zs.skipped +
                std::accumulate(failed.begin(), failed.end(), 0);
  for (auto& v : found)
    out.points.insert(out.points.end(), v.begin(), v.end());
  if (out.points.size() > opt.max_points) {
    std::vector<CylinderPoint> kept;
    kept.reserve(opt.max_points);
    for (std::size_t i = 0; i < opt.max_points; ++i)
      kept.push_back(out.points[i * out.points.size() / opt.max_points]);
    out.points = std::move(kept);
  }
  return out;
}

bool lands_in_seed(const MapSpec& m, const CylinderPoint& x, int level,
                   double theta_seed, double tol) {
  CylinderPoint p = x;
  for (int i = 0; i < level; ++i) p = cyl_eval(m, p);
  return circle_dist(p.theta, theta_seed) <= tol && p.t >= -tol &&
         p.t <= 1.0 + tol;
}

namespace {

// Orbit-shadowing distance: iterate from (theta, t) and compare the angular
// itinerary against the base circle itinerary 4^n theta0, over n = 1..N.
double shadow_dist(const MapSpec& m, double theta, double t,
                   const std::vector<double>& itinerary, int depth) {
  CylinderPoint p{wrap_angle(theta), t};
  double worst = 0.0;
  for (int n = 1; n <= depth; ++n) {
    p = cyl_eval(m, p);
    worst = std::max(worst, circle_dist(p.theta, itinerary[n]));
  }
  return worst;
}

// Golden-section minimization on [lo, hi] down to bracket width `width_tol`.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double width_tol) {
  const double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Leaf holonomy_leaf(const MapSpec& m, double theta0, double t_max,
                   const LeafOptions& opt) {
  if (opt.step <= 0.0 || opt.step > 0.01)
    throw UsageError("holonomy_leaf: step must be in (0, 0.01]");
  if (t_max < 0.0) throw UsageError("holonomy_leaf: t_max < 0");
  if (opt.n_shadow < 1) throw UsageError("holonomy_leaf: n_shadow < 1");

  std::vector<double> itinerary(opt.n_shadow + 1);
  itinerary[0] = wrap_angle(theta0);
  for (int n = 1; n <= opt.n_shadow; ++n)
    itinerary[n] = wrap_angle(4.0 * itinerary[n - 1]);

  Leaf leaf;
  leaf.theta0 = theta0;
  leaf.tol = opt.tol;
  leaf.samples.push_back({0.0, theta0});

  double theta = theta0;
  int steps = static_cast<int>(std::ceil(t_max / opt.step - 1e-12));
  for (int k = 1; k <= steps; ++k) {
    double t = std::min(t_max, k * opt.step);
    // Predictor: previous theta.  Corrector: shadowing distance has slope
    // ~4^n near the leaf, so deepen the itinerary progressively, keeping
    // each golden-section stage inside its unimodality radius pi/4^n.
    double lo = theta - 0.5 * opt.window, hi = theta + 0.5 * opt.window;
    double center = theta;
    for (int depth = 1; depth <= opt.n_shadow; ++depth) {
      auto f = [&](double th) { return shadow_dist(m, th, t, itinerary, depth); };
      double width_tol =
          std::max(opt.tol, kPi / std::pow(4.0, depth + 2));
      center = golden_min(f, lo, hi, width_tol);
      if (depth == 1) {
        double edge = 0.02 * opt.window;
        if (center - (theta - 0.5 * opt.window) < edge ||
            (theta + 0.5 * opt.window) - center < edge)
          throw DomainError(
              ErrorCode::CorrectorWindowExhausted,
              "holonomy_leaf: corrector hit the cone window edge at t=" +
                  std::to_string(t) + " (reduce t_max)");
      }
      double radius = std::max(opt.tol, 0.5 * kPi / std::pow(4.0, depth + 1));
      lo = center - radius;
      hi = center + radius;
    }
    auto f_full = [&](double th) {
      return shadow_dist(m, th, t, itinerary, opt.n_shadow);
    };
    theta = golden_min(f_full, lo, hi, opt.tol);
    leaf.samples.push_back({t, theta});
  }
  return leaf;
}

DensityHistogram histogram_angles(const std::vector<double>& thetas,
                                  int n_bins, double t) {
  if (n_bins < 1) throw UsageError("histogram_angles: n_bins < 1");
  if (thetas.empty()) throw UsageError("histogram_angles: no samples");
  DensityHistogram h;
  h.t = t;
  h.n_samples = static_cast<int>(thetas.size());
  std::vector<double> mass(n_bins, 0.0);
  double w = kTwoPi / n_bins;
  for (double th : thetas) {
    // nudge by a few ulp so samples landing on a bin edge bin consistently
    int b = std::min(n_bins - 1,
                     std::max(0, static_cast<int>(std::floor(
                                     wrap_angle(th) / w + 1e-9))));
    mass[b] += 1.0;
  }
  for (int b = 0; b < n_bins; ++b)
    h.bins.push_back({b * w, (b + 1) * w, mass[b] / thetas.size()});
  return h;
}

bool circular_order_preserved(const std::vector<double>& arrivals) {
  std::size_t n = arrivals.size();
  if (n < 3) return true;
  // Order is preserved iff the wrapped arrival sequence winds exactly once.
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = wrap_angle(arrivals[(i + 1) % n]) - wrap_angle(arrivals[i]);
    if (d < 0) d += kTwoPi;
    total += d;
  }
  return std::fabs(total - kTwoPi) < 1e-6;
}

DensityHistogram density(const MapSpec& m, double t0, int n_leaves,
                         const LeafOptions& opt) {
  if (n_leaves < 32) throw UsageError("density: need at least 32 leaves");
  if (t0 < 0.0) throw UsageError("density: t0 < 0");

  std::vector<double> arrival(n_leaves,
                              std::numeric_limits<double>::quiet_NaN());
  parallel_for(n_leaves, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      double theta0 = kTwoPi * double(i) / double(n_leaves);
      try {
        Leaf leaf = holonomy_leaf(m, theta0, t0, opt);
        arrival[i] = leaf.samples.back().second;
      } catch (const DomainError&) {
        // counted below
      }
    }
  });

  std::vector<double> ok;
  ok.reserve(n_leaves);
  for (double a : arrival)
    if (!std::isnan(a)) ok.push_back(a);
  double fail_frac = 1.0 - double(ok.size()) / double(n_leaves);
  if (fail_frac > 0.01)
    throw DomainError(ErrorCode::CorrectorWindowExhausted,
                      "density: " + std::to_string(100.0 * fail_frac) +
                          "% of leaves failed");
  if (!circular_order_preserved(ok))
    throw DomainError(ErrorCode::CorrectorWindowExhausted,
                      "density: arrival angles break circular order");
  int n_bins = std::max(32, n_leaves / 100);
  return histogram_angles(ok, n_bins, t0);
}

double ks_uniform(std::vector<double> thetas) {
  if (thetas.empty()) throw UsageError("ks_uniform: no samples");
  for (double& t : thetas) t = wrap_angle(t) / kTwoPi;
  std::sort(thetas.begin(), thetas.end());
  double n = double(thetas.size());
  double d = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    d = std::max(d, thetas[i] - double(i) / n);
    d = std::max(d, double(i + 1) / n - thetas[i]);
  }
  return d;
}

double tv_distance(const DensityHistogram& a, const DensityHistogram& b) {
  const DensityHistogram& coarse = a.bins.size() <= b.bins.size() ? a : b;
  const DensityHistogram& fine = a.bins.size() <= b.bins.size() ? b : a;
  std::size_t nc = coarse.bins.size(), nf = fine.bins.size();
  if (nf % nc != 0)
    throw UsageError("tv_distance: bin counts are not nested");
  std::size_t ratio = nf / nc;
  double tv = 0.0;
  for (std::size_t i = 0; i < nc; ++i) {
    double mf = 0.0;
    for (std::size_t j = 0; j < ratio; ++j) mf += fine.bins[i * ratio + j].mass;
    tv += std::fabs(coarse.bins[i].mass - mf);
  }
  return 0.5 * tv;
}

DensityHistogram zero_histogram(const ZeroSet& zs, int n_bins, double t0,
                                double half_width) {
  std::vector<double> thetas;
  for (const CylinderPoint& p : zs.points)
    if (std::fabs(p.t - t0) <= half_width) thetas.push_back(p.theta);
  return histogram_angles(thetas, n_bins, 0.0);
}

}  // namespace sac

#include "sac/manifold.hpp"

#include <algorithm>
#include <cmath>

#include "sac/eval.hpp"
#include "sac/parallel.hpp"

namespace sac {

std::string orbit_class_name(OrbitClass c) {
  switch (c) {
    case OrbitClass::ToCircle: return "to-circle";
    case OrbitClass::ToPInfinity: return "to-p-infinity";
    case OrbitClass::ToOtherAttractor: return "to-other-attractor";
    case OrbitClass::Undecided: return "undecided";
  }
  return "undecided";
}

static bool near_attractor(const MapSpec& m, const ChartPoint& p,
                           const Attractor& a, double radius) {
  ChartPoint q = p;
  if (p.chart != a.chart) {
    try {
      q = to_chart(m, p, a.chart);
    } catch (const DomainError&) {
      return false;
    }
  }
  return std::hypot(std::abs(q.c1 - a.c1), std::abs(q.c2 - a.c2)) < radius;
}

static double circle_proximity(const MapSpec& m, const ChartPoint& p) {
  try {
    ChartPoint f = p.chart == m.frame.chart ? p : to_chart(m, p, m.frame.chart);
    return std::hypot(std::abs(f.c1) - 1.0, std::abs(f.c2));
  } catch (const DomainError&) {
    return std::numeric_limits<double>::infinity();
  }
}

OrbitClass classify(const MapSpec& m, const ChartPoint& x,
                    const ClassifyOptions& opt) {
  // A point off the stable set by delta leaves the circle_tol neighborhood
  // within log_b(log(1+circle_tol)/delta) steps; staying near the circle for
  // longer than that horizon at input resolution (~1e-15) identifies the
  // stable set as sharply as double inputs allow.
  const int n_star = std::min(
      opt.budget,
      (int)std::ceil(std::log(std::log1p(opt.circle_tol) / 1e-15) /
                     std::log((double)m.b)));
  int near_run = 0;
  ChartPoint p = x;
  EvalOptions eo;
  for (int i = 0;; ++i) {
    for (const Attractor& a : m.attractors)
      if (near_attractor(m, p, a, opt.basin_radius))
        return a.label == "p-infinity" ? OrbitClass::ToPInfinity
                                       : OrbitClass::ToOtherAttractor;
    near_run = circle_proximity(m, p) < opt.circle_tol ? near_run + 1 : 0;
    if (near_run >= n_star) return OrbitClass::ToCircle;
    if (i == opt.budget) break;
    try {
      p = eval(m, p, eo);
    } catch (const DomainError&) {
      return OrbitClass::Undecided;
    }
    if (!(std::isfinite(p.c1.real()) && std::isfinite(p.c1.imag()) &&
          std::isfinite(p.c2.real()) && std::isfinite(p.c2.imag())))
      return OrbitClass::Undecided;
  }
  return OrbitClass::Undecided;
}

// ---------------------------------------------------------------------------
// Slices

static OrbitClass classify_retry(const MapSpec& m, const ChartPoint& p,
                                 const SliceOptions& opt) {
  OrbitClass c = classify(m, p, opt.cls);
  if (c == OrbitClass::Undecided && opt.retry_budget > opt.cls.budget) {
    ClassifyOptions big = opt.cls;
    big.budget = opt.retry_budget;
    c = classify(m, p, big);
  }
  return c;
}

template <class SignFn>
static double bisect_ray(double lo, double hi, double tol, const SignFn& side) {
  // side(r) returns -1 (inner class), +1 (outer class), or 0 when r sits on
  // the boundary to working resolution (the bisection target itself).  At
  // most ceil(log2(width/tol)) midpoint evaluations.
  double a = lo, b = hi;
  while (b - a > tol) {
    double mid = 0.5 * (a + b);
    int s = side(mid);
    if (s == 0) return mid;
    if (s < 0)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

SliceSample bisect_slice(const MapSpec& m, cd fiber, int n_thetas, double tol,
                         const SliceOptions& opt) {
  if (n_thetas <= 0) throw UsageError("bisect_slice: n_thetas must be positive");
  if (tol <= 0) throw UsageError("bisect_slice: tol must be positive");
  SliceSample out;
  out.fiber = fiber;
  out.tol = tol;
  out.thetas.resize(n_thetas);
  out.radii.resize(n_thetas);
  std::vector<std::exception_ptr> errs(n_thetas);
  parallel_for(n_thetas, [&](std::size_t b0, std::size_t e0) {
    for (std::size_t i = b0; i < e0; ++i) {
      double th = kTwoPi * double(i) / double(n_thetas);
      out.thetas[i] = th;
      try {
        auto point = [&](double r) {
          return ChartPoint{m.frame.chart, std::polar(r, th), fiber};
        };
        OrbitClass inner = classify_retry(m, point(opt.r_lo), opt);
        OrbitClass outer = classify_retry(m, point(opt.r_hi), opt);
        if (inner == OrbitClass::Undecided || outer == OrbitClass::Undecided ||
            inner == outer)
          throw DomainError(ErrorCode::BracketFailure,
                            "bisect_slice: bracket endpoints classify as " +
                                orbit_class_name(inner) + " / " +
                                orbit_class_name(outer) +
                                " (fiber too large?)");
        out.radii[i] = bisect_ray(opt.r_lo, opt.r_hi, tol, [&](double r) {
          OrbitClass c = classify_retry(m, point(r), opt);
          if (c == inner) return -1;
          if (c == outer) return +1;
          if (c == OrbitClass::ToCircle) return 0;  // on the slice itself
          throw DomainError(ErrorCode::UndecidedMidpoint,
                            "bisect_slice: midpoint classifies as " +
                                orbit_class_name(c) +
                                " even with the enlarged budget");
        });
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  });
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

// Sign of psi = log|phi| at a frame-chart point: partial telescoping sum with
// its geometric tail bound; once the product guard breaks, the orbit has left
// the neighborhood of the circle and the escape direction decides the sign.
// Returns 0 when undecided within the budget (on the level set to working
// resolution).
static int psi_sign(const MapSpec& m, const ChartPoint& start, int n_max,
                    int bits) {
  PrecGuard pg(bits);
  const int b = m.b;
  const double log2 = std::log(2.0);
  BigChartPoint x = to_big(start);
  EvalOptions eo;
  eo.allow_rechart = false;
  double logz = log_abs(x.c1);
  double logphi = logz;
  double bn1 = double(b);  // b^(n+1)
  bool product_ok = true;
  for (int n = 0; n < n_max; ++n) {
    BigChartPoint y;
    try {
      y = eval(m, x, eo);
    } catch (const DomainError&) {
      return logphi > 0 ? 1 : (logphi < 0 ? -1 : 0);
    }
    // snap an underflowing transverse coordinate to the invariant line before
    // its exponent outgrows the big-float representation
    if (log_abs(y.c2) < -1e6) y.c2 = BigComplex(0.0);
    double logy = log_abs(y.c1);
    if (product_ok) {
      double lr = logy - b * logz;
      if (std::fabs(lr) <= log2) {
        logphi += lr / bn1;
        double tail = log2 / (bn1 * (b - 1));
        if (std::fabs(logphi) > tail) return logphi > 0 ? 1 : -1;
      } else {
        product_ok = false;
      }
    }
    if (!product_ok && std::fabs(logy) > std::log(4.0))
      return logy > 0 ? 1 : -1;
    x = y;
    logz = logy;
    bn1 *= b;
  }
  return 0;
}

SliceSample psi_zero_slice(const MapSpec& m, cd fiber, int n_thetas,
                           double tol, const SliceOptions& opt) {
  if (n_thetas <= 0)
    throw UsageError("psi_zero_slice: n_thetas must be positive");
  if (tol <= 0) throw UsageError("psi_zero_slice: tol must be positive");
  SliceSample out;
  out.fiber = fiber;
  out.tol = tol;
  out.thetas.resize(n_thetas);
  out.radii.resize(n_thetas);
  std::vector<std::exception_ptr> errs(n_thetas);
  parallel_for(n_thetas, [&](std::size_t b0, std::size_t e0) {
    for (std::size_t i = b0; i < e0; ++i) {
      double th = kTwoPi * double(i) / double(n_thetas);
      out.thetas[i] = th;
      try {
        auto sgn = [&](double r) {
          return psi_sign(m, {m.frame.chart, std::polar(r, th), fiber},
                          opt.retry_budget, 256);
        };
        if (sgn(opt.r_lo) >= 0 || sgn(opt.r_hi) <= 0)
          throw DomainError(ErrorCode::BracketFailure,
                            "psi_zero_slice: psi does not change sign across "
                            "the bracket");
        out.radii[i] = bisect_ray(opt.r_lo, opt.r_hi, tol, [&](double r) {
          return sgn(r);  // 0 = on the level set to resolution
        });
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  });
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------------------
// Bullets, distortion, tension (renormalization map, pq chart)

bool in_bullet(const ChartPoint& x, const ConeSpec& cone) {
  if (cone.gamma < 1) throw UsageError("in_bullet: gamma must be >= 1");
  if (cone.c <= 0) throw UsageError("in_bullet: c must be positive");
  return std::abs(x.c1) >= cone.c * std::pow(std::abs(x.c2), cone.gamma);
}

BulletReport bullet_backward_invariance_check(int gamma, double eps,
                                              int n_samples,
                                              std::uint64_t seed) {
  if (gamma < 1) throw UsageError("gamma must be >= 1");
  if (eps <= 0 || eps >= 1) throw UsageError("eps must lie in (0,1)");
  if (n_samples <= 0) throw UsageError("n_samples must be positive");
  const MapSpec& R = find_map("R");
  const ConeSpec cone{gamma, 1.0};
  BulletReport rep;
  rep.gamma = gamma;
  rep.eps = eps;
  rep.n_samples = n_samples;
  CounterRng rng{seed};
  const double leps = std::log(eps);
  std::vector<int> checked(n_samples, 0), bad(n_samples, 0), failed(n_samples, 0);
  parallel_for(n_samples, [&](std::size_t b0, std::size_t e0) {
    for (std::size_t i = b0; i < e0; ++i) {
      // log-uniform magnitudes: preimage moduli are roots of the target's,
      // so area-uniform targets almost never pull back into the bidisc
      double lq = rng.uniform(16 * i, 8 * leps, leps);
      double lp = rng.uniform(16 * i + 1, gamma * lq, leps);
      cd q = std::polar(std::exp(lq), kTwoPi * rng.uniform(16 * i + 4));
      cd p = std::polar(std::exp(lp), kTwoPi * rng.uniform(16 * i + 5));
      ChartPoint target{ChartId::PqAtInfinity, p, q};
      try {
        for (const ChartPoint& y : preimages(R, target)) {
          if (std::abs(y.c1) > eps || std::abs(y.c2) > eps) continue;
          ++checked[i];
          if (!in_bullet(y, cone)) ++bad[i];
        }
      } catch (const DomainError&) {
        ++failed[i];
      }
    }
  });
  for (int i = 0; i < n_samples; ++i) {
    rep.checked_preimages += checked[i];
    rep.violations += bad[i];
    rep.preimage_failures += failed[i];
  }
  rep.success = rep.violations == 0;
  return rep;
}

DistortionReport distortion_check(int gamma, double eps, int n, int n_samples,
                                  std::uint64_t seed) {
  if (gamma < 1) throw UsageError("gamma must be >= 1");
  if (eps <= 0 || eps >= 1) throw UsageError("eps must lie in (0,1)");
  if (n < 1) throw UsageError("n must be >= 1");
  if (n_samples <= 0) throw UsageError("n_samples must be positive");
  const MapSpec& R = find_map("R");
  const RationalPair& rp = R.formula(ChartId::PqAtInfinity);
  PrecGuard pg(digits_to_bits(120));
  CounterRng rng{seed};
  const double leps = std::log(eps);
  DistortionReport rep;
  rep.gamma = gamma;
  rep.eps = eps;
  rep.n_used = n;

  // bullet = true: samples with |p0| >= |q0|^gamma whose orbit stays in the
  // bullet within the eps-bidisc; ratio |p_n| / |p_0|^(4^n).
  // bullet = false: samples below the bullet boundary staying below it;
  // ratio |q_n| / |q_0|^(2^n).
  // Log-uniform magnitude sampling: full-orbit survivors inside the bullet
  // need |q0| below an eps^(2^n)-scale threshold, which an area-uniform draw
  // from the bidisc essentially never reaches.  The survival filter runs two
  // steps past n: orbits that quit the bullet right after step n are the ones
  // turning vertical (|p| quarters below |q| squaring while |p| >= |q|^gamma
  // still holds), and their normalized coordinates are unbounded.
  const int margin = 2;
  const double lq_floor = std::pow(2.0, n + margin + 1) * leps;
  auto run = [&](bool bullet, double& rmin, double& rmax, int& surv) {
    rmin = std::numeric_limits<double>::infinity();
    rmax = 0;
    surv = 0;
    const std::uint64_t ns = bullet ? 0 : (1u << 20);
    for (std::uint64_t i = 0; surv < n_samples && i < 256u * (std::uint64_t)n_samples; ++i) {
      std::uint64_t c = ns + i;
      double lq0 = rng.uniform(16 * c, lq_floor, leps);
      double lpb = gamma * lq0;  // log of the bullet boundary |q0|^gamma
      double lp0 = bullet ? rng.uniform(16 * c + 1, lpb, leps)
                          : rng.uniform(16 * c + 1, lpb + lq_floor, lpb);
      cd q0 = std::polar(std::exp(lq0), kTwoPi * rng.uniform(16 * c + 4));
      cd p0 = std::polar(std::exp(lp0), kTwoPi * rng.uniform(16 * c + 5));
      BigComplex p(p0), q(q0);
      bool ok = true;
      double lp = lp0, lq = lq0, lp_n = lp0, lq_n = lq0;
      for (int j = 0; j < n + margin; ++j) {
        auto [pn, qn] = rp.eval<BigComplex>(p, q);
        p = pn;
        q = qn;
        lp = log_abs(p);
        lq = log_abs(q);
        if (j == n - 1) {
          lp_n = lp;
          lq_n = lq;
        }
        bool in_b = lp >= gamma * lq;
        if (lp > leps || lq > leps || in_b != bullet) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      ++surv;
      double lr = bullet ? lp_n - std::pow(4.0, n) * lp0
                         : lq_n - std::pow(2.0, n) * lq0;
      double r = std::exp(lr);
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
    if (surv == 0)
      throw DomainError(ErrorCode::OrbitLeftRegion,
                        "distortion_check: no sample kept its full orbit in "
                        "the region (parameters too aggressive)");
  };
  run(true, rep.ratio_min, rep.ratio_max, rep.samples);
  run(false, rep.q_ratio_min, rep.q_ratio_max, rep.q_samples);
  return rep;
}

// ---------------------------------------------------------------------------
// Preorbit tension

namespace {

struct BigRational2 {
  const RationalPair* rp;
  Poly2 n1p, n1q, d1p, d1q, n2p, n2q, d2p, d2q;

  explicit BigRational2(const RationalPair& f) : rp(&f) {
    n1p = f.num1.d_dx();
    n1q = f.num1.d_dy();
    d1p = f.den1.d_dx();
    d1q = f.den1.d_dy();
    n2p = f.num2.d_dx();
    n2q = f.num2.d_dy();
    d2p = f.den2.d_dx();
    d2q = f.den2.d_dy();
  }

  // Newton-polish a branch guess for rp(p, q) = (P, Q); returns false when
  // the iteration stalls or the polished point fails forward verification.
  bool polish(const BigComplex& P, const BigComplex& Q, BigComplex& p,
              BigComplex& q, int bits) const {
    const double step_tol = -0.45 * bits * std::log(2.0);
    const double res_tol = -0.25 * bits * std::log(2.0);
    for (int it = 0; it < 200; ++it) {
      BigComplex F1 = rp->num1.eval<BigComplex>(p, q) -
                      P * rp->den1.eval<BigComplex>(p, q);
      BigComplex F2 = rp->num2.eval<BigComplex>(p, q) -
                      Q * rp->den2.eval<BigComplex>(p, q);
      BigComplex a = n1p.eval<BigComplex>(p, q) - P * d1p.eval<BigComplex>(p, q);
      BigComplex b = n1q.eval<BigComplex>(p, q) - P * d1q.eval<BigComplex>(p, q);
      BigComplex c = n2p.eval<BigComplex>(p, q) - Q * d2p.eval<BigComplex>(p, q);
      BigComplex d = n2q.eval<BigComplex>(p, q) - Q * d2q.eval<BigComplex>(p, q);
      BigComplex det = a * d - b * c;
      if (abs2(det) == 0) return false;
      BigComplex dp = (d * F1 - b * F2) / det;
      BigComplex dq = (a * F2 - c * F1) / det;
      p -= dp;
      q -= dq;
      double rel = std::max(log_abs(dp) - log_abs(p), log_abs(dq) - log_abs(q));
      if (rel < step_tol) break;
    }
    auto [Pv, Qv] = rp->eval<BigComplex>(p, q);
    return log_abs(Pv - P) - log_abs(P) < res_tol &&
           log_abs(Qv - Q) - log_abs(Q) < res_tol;
  }
};

// p' = p^2 (p+2q)^2 / (1+q^2)^2 factors through p(p+2q) = +-sqrt(p') (1+q^2);
// given a q branch, the four exact p roots are -q +- sqrt(q^2 +- s).
std::vector<std::pair<BigComplex, BigComplex>> preimage_guesses(
    const BigComplex& P, const BigComplex& Q) {
  std::vector<std::pair<BigComplex, BigComplex>> out;
  BigComplex one(1.0);
  BigComplex sq = bsqrt(Q);
  for (int qs = 0; qs < 2; ++qs) {
    BigComplex q = qs ? BigComplex(0.0) - sq : sq;
    BigComplex s = bsqrt(P) * (one + q * q);
    for (int ss = 0; ss < 2; ++ss) {
      BigComplex rad = bsqrt(q * q + (ss ? BigComplex(0.0) - s : s));
      for (int ps = 0; ps < 2; ++ps) {
        BigComplex p = (ps ? BigComplex(0.0) - rad : rad) - q;
        out.emplace_back(p, q);
      }
    }
  }
  return out;
}

}  // namespace

TensionReport tension_experiment(double eps, int k) {
  if (eps <= 0 || eps > 0.1) throw UsageError("eps must lie in (0, 0.1]");
  if (k < 1 || k > 10) throw UsageError("k must lie in [1, 10]");
  const MapSpec& R = find_map("R");
  const BigRational2 big(R.formula(ChartId::PqAtInfinity));
  const int gamma = 2 * k + 3;
  // working precision scaled to the seed magnitude |p0| ~ (0.9 eps)^(gamma 2^k)
  const double lp0_mag = gamma * std::pow(2.0, k) * -std::log10(0.9 * eps);
  const int bits = 1024 + int(8.0 * lp0_mag);
  PrecGuard pg(bits);
  const double leps = std::log(eps);

  TensionReport rep;
  rep.eps = eps;
  rep.k = k;
  rep.gamma = gamma;

  BigComplex q0 = bpow(BigComplex(0.9 * eps), 1 << k);
  BigComplex p0 = mpf_class(0.5) * bpow(q0, gamma);

  // one cone-filtered preimage step: returns the first polished branch inside
  // the requested cone (and, unless allow_exit, inside the eps-bidisc)
  auto step = [&](BigComplex& p, BigComplex& q, bool horizontal,
                  bool* exited) -> bool {
    for (auto [pg_, qg_] : preimage_guesses(p, q)) {
      BigComplex pc = pg_, qc = qg_;
      if (!big.polish(p, q, pc, qc, bits)) continue;
      double lp = log_abs(pc), lq = log_abs(qc);
      if (horizontal ? lq > lp : lp > lq) continue;
      if (lp > leps || lq > leps) {
        if (exited) *exited = true;
        continue;
      }
      p = pc;
      q = qc;
      return true;
    }
    return false;
  };

  // vertical preorbit: k steps in |p| <= |q|, all inside the bidisc
  BigComplex p = p0, q = q0;
  for (int j = 0; j < k; ++j) {
    if (!step(p, q, false, nullptr))
      throw DomainError(ErrorCode::ConeFilterFailure,
                        "tension_experiment: no vertical-cone preimage at "
                        "step " + std::to_string(j + 1));
    ++rep.vertical_len;
  }
  rep.vertical_p_log10 = log_abs(p) / std::log(10.0);
  rep.vertical_q_log10 = log_abs(q) / std::log(10.0);

  // horizontal preorbit: steps in |q| <= |p| until the chain leaves the bidisc
  p = p0;
  q = q0;
  for (int j = 0; j < k; ++j) {
    bool exited = false;
    if (!step(p, q, true, &exited)) {
      if (exited) {
        rep.horizontal_exited = true;
        break;
      }
      throw DomainError(ErrorCode::ConeFilterFailure,
                        "tension_experiment: no horizontal-cone preimage at "
                        "step " + std::to_string(j + 1));
    }
    ++rep.horizontal_len;
  }
  if (rep.horizontal_len == 0)
    throw DomainError(ErrorCode::ConeFilterFailure,
                      "tension_experiment: horizontal preorbit is empty");
  rep.horizontal_p_abs = std::exp(log_abs(p));
  rep.horizontal_q_abs = std::exp(log_abs(q));
  return rep;
}

}  // namespace sac

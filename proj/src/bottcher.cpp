#include "sac/bottcher.hpp"

#include <cmath>
#include <mutex>

#include "json.hpp"
#include "sac/parallel.hpp"
#include "sac/preimages.hpp"

namespace sac {

BottcherResult bottcher_phi(const MapSpec& m, const ChartPoint& x,
                            const PhiOptions& opt) {
  if (m.a < m.b && !opt.experimental)
    throw DomainError(ErrorCode::GuardViolation,
                      m.name + " has a < b: no Boettcher function converges "
                               "near the full circle (enable experimental to "
                               "evaluate with guards raised as errors)");
  ChartPoint p0 = x.chart == m.frame.chart ? x : to_chart(m, x, m.frame.chart);
  if (std::abs(p0.c1) == 0)
    throw DomainError(ErrorCode::GuardViolation,
                      "first coordinate vanishes; not in the product domain");
  const int b = m.b;
  // Exactly on the invariant line the product collapses to its first factor.
  if (p0.c2 == cd(0)) return {p0.c1, std::log(p0.c1), 0.0, 1};

  PrecGuard prec(digits_to_bits(std::max(opt.working_digits, 15)));
  BigChartPoint cur = to_big(p0);
  cd logphi = std::log(p0.c1);
  double bpow_n1 = double(b);  // b^{n+1}
  int n = 0;
  for (;; ++n, bpow_n1 *= b) {
    double tail = std::log(2.0) / (bpow_n1 * (b - 1));
    if (tail <= opt.tol) {
      cd value = std::exp(logphi);
      return {value, logphi, std::abs(value) * std::expm1(tail), n + 1};
    }
    if (abs2(cur.c2) == 0) {
      cd value = std::exp(logphi);
      return {value, logphi, 0.0, n + 1};
    }
    if (n >= opt.n_max)
      throw DomainError(ErrorCode::BudgetExhausted,
                        "factor budget exhausted before tolerance was met");
    BigChartPoint nxt = eval(m, cur, {.allow_rechart = false});
    // Deep orbits cube the transverse exponent each step; snap to exact zero
    // before the mpf exponent overflows (the dropped factors are ~ |c2|).
    if (abs2(nxt.c2) != 0 && log_abs(nxt.c2) < -1e6) nxt.c2 = BigComplex();
    cd r = to_cd(nxt.c1 / bpow(cur.c1, b));
    double eta = std::min(std::abs(r - 1.0), std::abs(1.0 / r - 1.0));
    if (!(eta < 0.5))
      throw DomainError(ErrorCode::GuardViolation,
                        "guard |ratio - 1| >= 1/2 at factor " +
                            std::to_string(n) + "; point outside the region");
    logphi += std::log(r) / bpow_n1;
    cur = nxt;
  }
}

double bottcher_psi(const MapSpec& m, const ChartPoint& x,
                    const PhiOptions& opt) {
  return bottcher_phi(m, x, opt).log_value.real();
}

std::string RegionParams::to_json() const {
  nlohmann::json j{{"eps1", eps1}, {"eps2", eps2},   {"delta1", delta1},
                   {"delta2", delta2}, {"K", K},     {"tube", tube}};
  return j.dump(2);
}

RegionParams RegionParams::from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    RegionParams r;
    r.eps1 = j.at("eps1").get<double>();
    r.eps2 = j.at("eps2").get<double>();
    r.delta1 = j.at("delta1").get<double>();
    r.delta2 = j.at("delta2").get<double>();
    r.K = j.at("K").get<double>();
    r.tube = j.at("tube").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("region JSON error: ") + e.what());
  }
}

bool in_region(const MapSpec& m, const RegionParams& r, const ChartPoint& p) {
  double s = std::abs(p.c1), u = std::abs(p.c2);
  if (!std::isfinite(s) || !std::isfinite(u)) return false;
  double sb = std::pow(s, m.b);
  // U1: |c1| < eps1 with aperture |c2|/|c1|^b < delta1
  if (s < r.eps1 && u < r.delta1 * sb) return true;
  // U2 at the far end of the line, via the declared transverse twist
  double uinf = u * std::pow(s, -double(m.frame.inf_twist));
  if (s > 0 && 1.0 / s < r.eps2 && uinf * sb < r.delta2) return true;
  // V: middle band around the circle
  if (s >= r.eps1 && s <= 1.0 / r.eps2 && u <= r.tube) return true;
  return false;
}

RegionReport validate_region(const MapSpec& m, const RegionParams& r,
                             int n_samples, std::uint64_t seed,
                             bool keep_rows) {
  RegionReport rep;
  rep.n_samples = n_samples;
  if (n_samples <= 0 || r.eps1 <= 0 || r.eps2 <= 0 ||
      (r.delta1 <= 0 && r.delta2 <= 0 && r.tube <= 0)) {
    rep.success = true;
    rep.vacuous = true;
    return rep;
  }
  CounterRng rng{seed};
  const int b = m.b, k = m.frame.inf_twist;
  std::vector<RegionSampleRow> rows(n_samples);
  std::mutex err_mu;
  std::string err;
  parallel_for(n_samples, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      std::uint64_t c = 8 * i;
      ChartPoint p{m.frame.chart, 0.0, 0.0};
      switch (i % 3) {
        case 0: {  // U1
          cd z = r.eps1 * rng.unit_disk(c);
          if (std::abs(z) < 1e-8) z = cd(1e-8, 0);
          cd lam = r.delta1 * rng.unit_disk(c + 2);
          p.c1 = z;
          p.c2 = lam * std::pow(z, b);
          break;
        }
        case 1: {  // U2
          cd Z = r.eps2 * rng.unit_disk(c);
          if (std::abs(Z) < 1e-8) Z = cd(1e-8, 0);
          cd lam = r.delta2 * rng.unit_disk(c + 2);
          p.c1 = 1.0 / Z;
          p.c2 = lam * std::pow(Z, b) * std::pow(p.c1, k);
          break;
        }
        default: {  // V
          double rad = rng.uniform(c, r.eps1, 1.0 / r.eps2);
          double th = rng.uniform(c + 1, 0.0, kTwoPi);
          p.c1 = std::polar(rad, th);
          p.c2 = r.tube * rng.unit_disk(c + 2);
        }
      }
      RegionSampleRow row;
      row.z = p.c1;
      row.w = p.c2;
      try {
        ChartPoint q = eval(m, p, {.allow_rechart = false});
        cd ratio = q.c1 / std::pow(p.c1, b);
        row.guard =
            std::min(std::abs(ratio - 1.0), std::abs(1.0 / ratio - 1.0));
        row.violated = !in_region(m, r, q);
      } catch (const DomainError& e) {
        row.guard = std::numeric_limits<double>::infinity();
        row.violated = true;
        std::lock_guard<std::mutex> lk(err_mu);
        if (err.empty()) err = e.what();
      }
      rows[i] = row;
    }
  });
  for (const auto& row : rows) {
    rep.guard_max = std::max(rep.guard_max, row.guard);
    if (row.violated) ++rep.violations;
  }
  rep.success = rep.violations == 0 && rep.guard_max < 0.5;
  if (keep_rows) rep.rows = std::move(rows);
  return rep;
}

RegionParams search_region(const MapSpec& m, double K, int n_samples,
                           std::uint64_t seed) {
  for (double v = 0.3; v >= 1e-4; v /= 2) {
    RegionParams r;
    r.eps1 = r.eps2 = v;
    r.delta1 = r.delta2 = std::min(v, K);
    // The band must land inside U1/U2 at its edges: a point with
    // |c1| ~ eps1 maps to |c1'| >= eps1^b/2, where the aperture bound
    // |c2|/|c1|^b < delta must already hold.
    r.tube = r.delta1 * std::pow(v, m.b * m.b) / std::pow(2.0, m.b);
    r.K = K;
    RegionReport rep = validate_region(m, r, n_samples, seed);
    if (rep.success && !rep.vacuous) return r;
  }
  throw DomainError(ErrorCode::NoValidRegion,
                    m.name + ": no validating region above the 1e-4 floor "
                             "(expected for maps with a < b)");
}

BottcherResult averaging_phi(const MapSpec& m, const ChartPoint& x, int n,
                             const RegionParams& base, double tol) {
  if (!m.topological_degree)
    throw UsageError("averaging requires a declared topological degree");
  PhiOptions popt;
  popt.tol = tol;
  popt.experimental = true;
  ChartPoint fx = x.chart == m.frame.chart ? x : to_chart(m, x, m.frame.chart);
  if (n == 0) return bottcher_phi(m, fx, popt);

  std::vector<ChartPoint> level{fx};
  for (int i = 0; i < n; ++i) {
    std::vector<ChartPoint> next;
    for (const auto& y : level) {
      auto pre = preimages(m, y);
      for (const auto& p : pre) {
        if (!in_region(m, base, p))
          throw DomainError(ErrorCode::PreimageEscapedRegion,
                            "a level-" + std::to_string(i + 1) +
                                " preimage left the base region");
        next.push_back(p);
      }
    }
    level = std::move(next);
  }
  double expo = std::pow(double(m.b), n);
  cd acc = 0;
  double bound = 0;
  for (const auto& y : level) {
    BottcherResult r = bottcher_phi(m, y, popt);
    acc += std::exp(expo * r.log_value);
    bound = std::max(bound, r.truncation_bound * expo);
  }
  double count = std::pow(double(*m.topological_degree), n);
  BottcherResult out;
  out.value = acc / count;
  out.log_value = std::log(out.value);
  out.truncation_bound = bound;
  out.terms = static_cast<int>(level.size());
  return out;
}

}  // namespace sac

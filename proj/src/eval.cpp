#include "sac/eval.hpp"

#include <array>
#include <cmath>

namespace sac {

namespace {

inline double mag2(const cd& z) { return std::norm(z); }
inline mpf_class mag2(const BigComplex& z) { return abs2(z); }

inline bool den_vanishes(const cd& d) { return std::abs(d) < 1e-300; }
inline bool den_vanishes(const BigComplex& d) { return abs2(d) == 0; }

template <class T>
std::pair<T, T> apply_rp(const RationalPair& rp, const T& x, const T& y,
                         ErrorCode on_zero, const char* what) {
  T d1 = rp.den1.eval(x, y);
  T d2 = rp.den2.eval(x, y);
  if (den_vanishes(d1) || den_vanishes(d2))
    throw DomainError(on_zero, what);
  return {rp.num1.eval(x, y) / d1, rp.num2.eval(x, y) / d2};
}

template <class P>
P to_chart_impl(const MapSpec& m, const P& p, ChartId to, double margin) {
  if (p.chart == to) return p;
  const Transition* t = m.find_transition(p.chart, to);
  if (!t)
    throw DomainError(ErrorCode::UndeclaredTransition,
                      m.name + ": no transition " + chart_name(p.chart) +
                          " -> " + chart_name(to));
  auto d1 = t->formula.den1.eval(p.c1, p.c2);
  auto d2 = t->formula.den2.eval(p.c1, p.c2);
  if (mag2(d1) < margin * margin || mag2(d2) < margin * margin)
    throw DomainError(ErrorCode::SingularLocus,
                      m.name + ": transition " + chart_name(p.chart) + " -> " +
                          chart_name(to) + " singular at this point");
  return {to, t->formula.num1.eval(p.c1, p.c2) / d1,
          t->formula.num2.eval(p.c1, p.c2) / d2};
}

inline cd to_approx(const cd& z) { return z; }
inline cd to_approx(const BigComplex& z) { return to_cd(z); }

template <class P>
P eval_impl(const MapSpec& m, const P& p, const EvalOptions& opt) {
  // Refuse to evaluate within the declared indeterminacy margin.
  cd approx1 = to_approx(p.c1), approx2 = to_approx(p.c2);
  for (const auto& sp : m.special_points) {
    if (sp.point.chart != p.chart) continue;
    const RationalPair& rp0 = m.formula(p.chart);
    cd d1 = rp0.den1.eval(sp.point.c1, sp.point.c2);
    cd d2 = rp0.den2.eval(sp.point.c1, sp.point.c2);
    bool indeterminate = std::abs(d1) < 1e-14 || std::abs(d2) < 1e-14;
    if (!indeterminate) continue;
    double dist = std::max(std::abs(approx1 - sp.point.c1),
                           std::abs(approx2 - sp.point.c2));
    if (dist < opt.indeterminacy_margin)
      throw DomainError(ErrorCode::IndeterminacyProximity,
                        m.name + ": point within margin of " + sp.label);
  }

  auto [c1, c2] = apply_rp(m.formula(p.chart), p.c1, p.c2,
                           ErrorCode::DenominatorUnderflow,
                           "denominator vanished during evaluation");
  P out{p.chart, c1, c2};
  if (!opt.allow_rechart) return out;

  auto worst = [](const P& q) {
    auto m1 = mag2(q.c1), m2 = mag2(q.c2);
    return m1 > m2 ? m1 : m2;
  };
  auto cur = worst(out);
  if (cur <= opt.rechart_threshold * opt.rechart_threshold) return out;
  P best = out;
  auto best_mag = cur;
  for (const auto& t : m.transitions) {
    if (t.from != out.chart) continue;
    auto d1 = t.formula.den1.eval(out.c1, out.c2);
    auto d2 = t.formula.den2.eval(out.c1, out.c2);
    if (mag2(d1) < opt.chart_margin * opt.chart_margin ||
        mag2(d2) < opt.chart_margin * opt.chart_margin)
      continue;
    P cand{t.to, t.formula.num1.eval(out.c1, out.c2) / d1,
           t.formula.num2.eval(out.c1, out.c2) / d2};
    auto cm = worst(cand);
    if (cm < best_mag) {
      best = cand;
      best_mag = cm;
    }
  }
  return best;
}

}  // namespace

ChartPoint to_chart(const MapSpec& m, const ChartPoint& p, ChartId to,
                    double margin) {
  return to_chart_impl(m, p, to, margin);
}
BigChartPoint to_chart(const MapSpec& m, const BigChartPoint& p, ChartId to,
                       double margin) {
  return to_chart_impl(m, p, to, margin);
}

ChartPoint eval(const MapSpec& m, const ChartPoint& p, const EvalOptions& opt) {
  return eval_impl(m, p, opt);
}
BigChartPoint eval(const MapSpec& m, const BigChartPoint& p,
                   const EvalOptions& opt) {
  return eval_impl(m, p, opt);
}

OrbitRecord orbit(const MapSpec& m, ChartPoint p, int budget,
                  const EvalOptions& opt) {
  OrbitRecord rec;
  rec.points.push_back(p);
  for (int n = 0; n < budget; ++n) {
    try {
      p = eval(m, p, opt);
    } catch (const DomainError& e) {
      rec.status = e.code() == ErrorCode::IndeterminacyProximity
                       ? OrbitStatus::Indeterminate
                       : OrbitStatus::Underflow;
      rec.message = e.what();
      return rec;
    }
    if (!std::isfinite(p.c1.real()) || !std::isfinite(p.c1.imag()) ||
        !std::isfinite(p.c2.real()) || !std::isfinite(p.c2.imag())) {
      rec.status = OrbitStatus::Diverged;
      rec.message = "coordinates overflowed in every declared chart";
      return rec;
    }
    rec.points.push_back(p);
  }
  rec.status = OrbitStatus::BudgetExhausted;
  return rec;
}

Jacobian2 jacobian(const MapSpec& m, const ChartPoint& p) {
  const RationalPair& rp = m.formula(p.chart);
  auto quot = [&](const Poly2& n, const Poly2& d, cd& dx, cd& dy) {
    cd nv = n.eval(p.c1, p.c2), dv = d.eval(p.c1, p.c2);
    if (den_vanishes(dv))
      throw DomainError(ErrorCode::DenominatorUnderflow,
                        "denominator vanished in jacobian");
    dx = (n.d_dx().eval(p.c1, p.c2) * dv - nv * d.d_dx().eval(p.c1, p.c2)) /
         (dv * dv);
    dy = (n.d_dy().eval(p.c1, p.c2) * dv - nv * d.d_dy().eval(p.c1, p.c2)) /
         (dv * dv);
  };
  Jacobian2 J;
  quot(rp.num1, rp.den1, J.a11, J.a12);
  quot(rp.num2, rp.den2, J.a21, J.a22);
  return J;
}

double semiconjugacy_residual(cd z, cd t) {
  const MapSpec& R = find_map("R");
  ChartPoint im = eval(R, {ChartId::PhysicalZT, z, t}, {.allow_rechart = false});

  auto psi = [](cd zz, cd tt) {
    return std::array<cd, 3>{cd(1.0), zz * tt, zz * zz};
  };
  auto rly = [](const std::array<cd, 3>& v) {
    cd U = v[0], V = v[1], W = v[2];
    auto sq = [](cd x) { return x * x; };
    return std::array<cd, 3>{sq(U * U + V * V), V * V * sq(U + W),
                             sq(W * W + V * V)};
  };
  std::array<cd, 3> u = rly(psi(z, t));
  std::array<cd, 3> v = psi(im.c1, im.c2);
  // Fubini-Study sine distance: |u x v| / (|u| |v|)
  cd x0 = u[1] * v[2] - u[2] * v[1];
  cd x1 = u[2] * v[0] - u[0] * v[2];
  cd x2 = u[0] * v[1] - u[1] * v[0];
  double cn = std::sqrt(std::norm(x0) + std::norm(x1) + std::norm(x2));
  double un = std::sqrt(std::norm(u[0]) + std::norm(u[1]) + std::norm(u[2]));
  double vn = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
  if (un == 0 || vn == 0)
    throw DomainError(ErrorCode::DenominatorUnderflow,
                      "projective representative vanished");
  return cn / (un * vn);
}

}  // namespace sac

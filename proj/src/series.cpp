#include "sac/series.hpp"

#include <cmath>

namespace sac {

cd CircleSeries::eval_leaf(const cd& z0, const cd& w) const {
  cd acc = 0, wp = 1;
  for (int j = 0; j <= J; ++j) {
    acc += coeffs[j].eval(z0) * wp;
    wp *= w;
  }
  return acc;
}

namespace {

// Integer coefficient grid of the skew map's first coordinate; validates the
// skew structure (constant den1, second coordinate exactly w^a).
std::vector<std::vector<long>> skew_coefficients(const MapSpec& m) {
  const RationalPair& rp = m.formula(m.frame.chart);
  if (!m.skew || rp.den1.deg_x() != 0 || rp.den1.deg_y() != 0 ||
      rp.den2.deg_x() != 0 || rp.den2.deg_y() != 0)
    throw DomainError(ErrorCode::NonSkewMap,
                      m.name + ": series recurrence needs a polynomial skew "
                               "product");
  cd d1 = rp.den1.at(0, 0), d2 = rp.den2.at(0, 0);
  // second coordinate must be exactly c2^a
  for (int i = 0; i <= rp.num2.deg_x(); ++i)
    for (int j = 0; j <= rp.num2.deg_y(); ++j) {
      cd want = (i == 0 && j == m.a) ? d2 : cd(0);
      if (rp.num2.at(i, j) != want)
        throw DomainError(ErrorCode::NonSkewMap,
                          m.name + ": second coordinate is not w^a");
    }
  if (m.a < 2)
    throw DomainError(ErrorCode::NonSkewMap,
                      "recurrence requires transversal degree a >= 2");
  std::vector<std::vector<long>> c(rp.num1.deg_x() + 1,
                                   std::vector<long>(rp.num1.deg_y() + 1, 0));
  for (int i = 0; i <= rp.num1.deg_x(); ++i)
    for (int j = 0; j <= rp.num1.deg_y(); ++j) {
      cd v = rp.num1.at(i, j) / d1;
      long iv = std::lround(v.real());
      if (v.imag() != 0 || v.real() != double(iv))
        throw DomainError(ErrorCode::NonSkewMap,
                          m.name + ": non-integer structure constants");
      c[i][j] = iv;
    }
  return c;
}

}  // namespace

CircleSeries solve_series(const MapSpec& m, int J, int order_cap) {
  if (J < 0 || J > order_cap)
    throw DomainError(ErrorCode::OrderOverflow,
                      "series order exceeds the configured cap");
  auto coef = skew_coefficients(m);
  const int a = m.a, b = m.b;
  const long base = b;
  const int K = static_cast<int>(coef.size()) - 1;  // max power of z in P

  CircleSeries s;
  s.map_name = m.name;
  s.a = a;
  s.b = b;
  s.J = J;

  // pw[k][j]: order-j Laurent coefficient of h(z0,w)^k; pw[0] = 1.
  std::vector<std::vector<LaurentQ>> pw(
      K + 1, std::vector<LaurentQ>(J + 1, LaurentQ::zero(base)));
  pw[0][0] = LaurentQ::monomial(base, 0);
  for (int k = 1; k <= K; ++k) pw[k][0] = LaurentQ::monomial(base, k);

  s.coeffs.assign(J + 1, LaurentQ::zero(base));
  s.coeffs[0] = LaurentQ::monomial(base, 1);  // a_0(z0) = z0

  for (int j = 1; j <= J; ++j) {
    // known[k]: order-j coefficient of h^k with the unknown a_j dropped;
    // a_j enters h^k linearly as k z0^{k-1} a_j.
    std::vector<LaurentQ> known(K + 1, LaurentQ::zero(base));
    for (int k = 2; k <= K; ++k) {
      LaurentQ acc = known[k - 1].shifted_scaled(1, 1);  // z0 * known[k-1]
      for (int mm = 1; mm < j; ++mm)
        acc += s.coeffs[mm] * pw[k - 1][j - mm];
      known[k] = std::move(acc);
    }
    LaurentQ lhs_known = LaurentQ::zero(base);
    for (int k = 0; k <= K; ++k)
      for (std::size_t l = 0; l < coef[k].size(); ++l) {
        if (coef[k][l] == 0) continue;
        long jl = j - static_cast<long>(l);
        if (jl < 0) continue;
        const LaurentQ& term = (l == 0) ? known[k] : pw[k][jl];
        lhs_known += term.shifted_scaled(0, coef[k][l]);
      }
    LaurentQ rhs = (j % a == 0) ? s.coeffs[j / a].dilated(b)
                                : LaurentQ::zero(base);
    // a_j = (rhs - lhs_known) / (b z0^{b-1})
    LaurentQ aj = (rhs - lhs_known).divided(b - 1, b);
    s.coeffs[j] = aj;
    pw[1][j] = aj;
    for (int k = 2; k <= K; ++k)
      pw[k][j] = known[k] + aj.shifted_scaled(k - 1, k);
  }
  return s;
}

long residual_valuation(const MapSpec& m, const CircleSeries& s) {
  auto coef = skew_coefficients(m);
  const long base = s.b;
  const int K = static_cast<int>(coef.size()) - 1;
  const int J = s.J;
  // rebuild powers of the series independently of the solver's bookkeeping
  std::vector<std::vector<LaurentQ>> pw(
      K + 1, std::vector<LaurentQ>(J + 1, LaurentQ::zero(base)));
  pw[0][0] = LaurentQ::monomial(base, 0);
  for (int j = 0; j <= J; ++j) pw[1][j] = s.coeffs[j];
  for (int k = 2; k <= K; ++k)
    for (int j = 0; j <= J; ++j) {
      LaurentQ acc = LaurentQ::zero(base);
      for (int mm = 0; mm <= j; ++mm) acc += pw[1][mm] * pw[k - 1][j - mm];
      pw[k][j] = std::move(acc);
    }
  for (int j = 0; j <= J; ++j) {
    LaurentQ lhs = LaurentQ::zero(base);
    for (int k = 0; k <= K; ++k)
      for (std::size_t l = 0; l < coef[k].size(); ++l) {
        if (coef[k][l] == 0) continue;
        long jl = j - static_cast<long>(l);
        if (jl >= 0) lhs += pw[k][jl].shifted_scaled(0, coef[k][l]);
      }
    LaurentQ rhs = (j % s.a == 0) ? s.coeffs[j / s.a].dilated(s.b)
                                  : LaurentQ::zero(base);
    lhs -= rhs;
    if (!lhs.is_zero()) return j;
  }
  return J + 1;
}

ProbeReport analyticity_probe(const CircleSeries& s,
                              const std::vector<double>& radii, int fit_lo,
                              int fit_hi) {
  if (s.J < 16) throw UsageError("probe requires series order J >= 16");
  ProbeReport rep;
  rep.radii = radii;
  rep.bandwidth.resize(s.J + 1);
  for (int j = 0; j <= s.J; ++j) rep.bandwidth[j] = s.bandwidth(j);
  rep.rho.assign(radii.size(), std::vector<double>(s.J + 1, 0.0));
  for (std::size_t r = 0; r < radii.size(); ++r) {
    double rad = radii[r];
    for (int j = 0; j <= s.J; ++j)
      rep.rho[r][j] = std::max(s.coeffs[j].max_abs_on_circle(rad),
                               s.coeffs[j].max_abs_on_circle(1.0 / rad));
  }
  rep.fit_lo = fit_lo;
  rep.fit_hi = fit_hi < 0 ? s.J : fit_hi;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int j = rep.fit_lo; j <= rep.fit_hi && j <= s.J; ++j) {
    if (rep.bandwidth[j] <= 0) continue;
    double x = std::log(double(j)), y = std::log(double(rep.bandwidth[j]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2) {
    double det = n * sxx - sx * sx;
    rep.growth_exponent = (n * sxy - sx * sy) / det;
    double icpt = (sy - rep.growth_exponent * sx) / n;
    double ss = 0;
    for (int j = rep.fit_lo; j <= rep.fit_hi && j <= s.J; ++j) {
      if (rep.bandwidth[j] <= 0) continue;
      double x = std::log(double(j)), y = std::log(double(rep.bandwidth[j]));
      double e = y - (icpt + rep.growth_exponent * x);
      ss += e * e;
    }
    rep.fit_residual = std::sqrt(ss / n);
  }
  return rep;
}

}  // namespace sac

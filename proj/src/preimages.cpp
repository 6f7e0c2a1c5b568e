#include "sac/preimages.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace sac {

std::vector<cd> poly_roots(std::vector<cd> coeffs, double trim_rel) {
  double peak = 0;
  for (const auto& c : coeffs) peak = std::max(peak, std::abs(c));
  if (peak == 0)
    throw DomainError(ErrorCode::RootFindingFailure,
                      "identically zero polynomial");
  while (coeffs.size() > 1 && std::abs(coeffs.back()) < trim_rel * peak)
    coeffs.pop_back();
  int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -coeffs[i] / coeffs[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success)
    throw DomainError(ErrorCode::RootFindingFailure,
                      "eigenvalue iteration did not converge");
  std::vector<cd> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
  return roots;
}

namespace {

// Univariate coefficients (in y) of P at a fixed x, using the formal
// y-degree so the Sylvester block sizes do not depend on x.
std::vector<cd> coeffs_at_x(const std::vector<std::vector<cd>>& rows, cd x) {
  std::vector<cd> out(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    cd acc = 0;
    for (auto it = rows[k].rbegin(); it != rows[k].rend(); ++it)
      acc = acc * x + *it;
    out[k] = acc;
  }
  return out;
}

cd sylvester_det(const std::vector<cd>& p, const std::vector<cd>& q) {
  int dp = static_cast<int>(p.size()) - 1;
  int dq = static_cast<int>(q.size()) - 1;
  int n = dp + dq;
  if (n == 0) return 1.0;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) S(r, r + k) = p[dp - k];
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) S(dq + r, r + k) = q[dq - k];
  return S.determinant();
}

int formal_deg_y(const Poly2& p) { return p.deg_y(); }

// 2x2 Newton refinement of (P1, P2) = 0.
bool polish(const Poly2& P1, const Poly2& P2, cd& x, cd& y, int iters) {
  Poly2 p1x = P1.d_dx(), p1y = P1.d_dy();
  Poly2 p2x = P2.d_dx(), p2y = P2.d_dy();
  for (int it = 0; it < iters; ++it) {
    cd f1 = P1.eval(x, y), f2 = P2.eval(x, y);
    cd a = p1x.eval(x, y), b = p1y.eval(x, y);
    cd c = p2x.eval(x, y), d = p2y.eval(x, y);
    cd det = a * d - b * c;
    if (std::abs(det) < 1e-250) return false;
    cd dx = (f1 * d - f2 * b) / det;
    cd dy = (a * f2 - c * f1) / det;
    x -= dx;
    y -= dy;
    if (std::abs(dx) + std::abs(dy) < 1e-15 * (1.0 + std::abs(x) + std::abs(y)))
      return true;
  }
  return true;  // leave final verification to the caller
}

}  // namespace

std::vector<ChartPoint> preimages(const MapSpec& m, const ChartPoint& target,
                                  const PreimageOptions& opt) {
  const RationalPair& rp = m.formula(target.chart);
  Poly2 P1 = rp.num1 - target.c1 * rp.den1;
  Poly2 P2 = rp.num2 - target.c2 * rp.den2;
  if (P1.is_zero() || P2.is_zero())
    throw DomainError(ErrorCode::DegenerateTarget,
                      "target lies on a collapsed fiber");

  int dy1 = formal_deg_y(P1), dy2 = formal_deg_y(P2);
  int dx1 = P1.deg_x(), dx2 = P2.deg_x();
  auto rows1 = P1.coeffs_in(1);  // y-coefficients as x-polynomials
  auto rows2 = P2.coeffs_in(1);

  // Degree bound for Res_y(P1, P2) as a polynomial in x.
  int D = dy2 * dx1 + dy1 * dx2;
  std::vector<cd> xroots;
  if (dy1 == 0 || dy2 == 0) {
    // One equation is y-free: its x-roots are the candidates directly.
    const Poly2& free = dy1 == 0 ? P1 : P2;
    xroots = poly_roots(free.restrict_y0());
  } else {
    // Interpolate det(Sylvester) at scaled roots of unity.
    int M = D + 1;
    std::vector<cd> vals(M);
    const double r = 1.17;  // avoids coefficient degeneracy at sample scale 1
    bool ok = false;
    for (double radius : {r, 0.63, 1.91}) {
      for (int k = 0; k < M; ++k) {
        cd xk = std::polar(radius, kTwoPi * k / M);
        vals[k] = sylvester_det(coeffs_at_x(rows1, xk), coeffs_at_x(rows2, xk));
      }
      double peak = 0;
      for (const auto& v : vals) peak = std::max(peak, std::abs(v));
      if (peak > 1e-200) {
        ok = true;
        // inverse DFT then undo the radius scaling
        std::vector<cd> coef(M);
        for (int j = 0; j < M; ++j) {
          cd acc = 0;
          for (int k = 0; k < M; ++k)
            acc += vals[k] * std::polar(1.0, -kTwoPi * j * k / M);
          coef[j] = acc / (double(M) * std::pow(radius, j));
        }
        xroots = poly_roots(coef, 1e-10);
        break;
      }
    }
    if (!ok)
      throw DomainError(ErrorCode::RootFindingFailure,
                        "resultant vanished on every sample circle; "
                        "the fiber over the target is positive-dimensional");
  }

  // Back-substitute, polish, forward-verify.
  std::vector<ChartPoint> verified;
  double tscale = 1.0 + std::abs(target.c1) + std::abs(target.c2);
  for (cd x0 : xroots) {
    std::vector<cd> ycands;
    if (dy1 == 0 && dy2 == 0) {
      ycands.push_back(0.0);
    } else {
      for (const auto* rows : {&rows1, &rows2}) {
        if ((rows == &rows1 ? dy1 : dy2) == 0) continue;
        try {
          auto part = poly_roots(coeffs_at_x(*rows, x0), 1e-9);
          ycands.insert(ycands.end(), part.begin(), part.end());
        } catch (const DomainError&) {
        }
      }
      if (ycands.empty()) continue;
    }
    for (cd y0 : ycands) {
      cd x = x0, y = y0;
      if (!polish(P1, P2, x, y, opt.max_polish_iters)) continue;
      cd d1 = rp.den1.eval(x, y), d2 = rp.den2.eval(x, y);
      if (std::abs(d1) < 1e-250 || std::abs(d2) < 1e-250) continue;
      cd i1 = rp.num1.eval(x, y) / d1, i2 = rp.num2.eval(x, y) / d2;
      if (std::abs(i1 - target.c1) + std::abs(i2 - target.c2) >
          opt.verify_tol * tscale)
        continue;
      verified.push_back({target.chart, x, y});
    }
  }

  // Dedupe; flag ambiguous near-coincident solutions.
  std::sort(verified.begin(), verified.end(), [](const auto& a, const auto& b) {
    if (a.c1.real() != b.c1.real()) return a.c1.real() < b.c1.real();
    if (a.c1.imag() != b.c1.imag()) return a.c1.imag() < b.c1.imag();
    if (a.c2.real() != b.c2.real()) return a.c2.real() < b.c2.real();
    return a.c2.imag() < b.c2.imag();
  });
  std::vector<ChartPoint> out;
  for (const auto& p : verified) {
    bool dup = false, close = false;
    for (const auto& q : out) {
      double d = std::abs(p.c1 - q.c1) + std::abs(p.c2 - q.c2);
      if (d < opt.dedupe_tol) dup = true;
      else if (d < opt.cluster_tol) close = true;
    }
    if (dup) continue;
    if (close)
      throw DomainError(ErrorCode::DegenerateTarget,
                        "preimages cluster below the separation threshold; "
                        "target is too close to a critical value");
    out.push_back(p);
  }
  return out;
}

}  // namespace sac

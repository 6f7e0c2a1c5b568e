#pragma once

#include <cassert>
#include <vector>

#include "sac/numeric.hpp"

namespace sac {

template <class T>
inline T scalar_from(const cd& z);
template <>
inline cd scalar_from<cd>(const cd& z) {
  return z;
}
template <>
inline BigComplex scalar_from<BigComplex>(const cd& z) {
  return BigComplex(z);
}

// Bivariate polynomial over complex doubles, dense coefficient grid.
// Catalog maps have small integer coefficients, so restriction / vanishing
// checks on them are exact in this representation.
class Poly2 {
 public:
  Poly2() : dx_(0), dy_(0), c_(1, cd(0)) {}
  Poly2(int dx, int dy) : dx_(dx), dy_(dy), c_((dx + 1) * (dy + 1), cd(0)) {}

  static Poly2 constant(cd v) {
    Poly2 p(0, 0);
    p.set(0, 0, v);
    return p;
  }
  // x^i y^j
  static Poly2 monomial(int i, int j, cd v = 1.0) {
    Poly2 p(i, j);
    p.set(i, j, v);
    return p;
  }

  int deg_x() const { return dx_; }
  int deg_y() const { return dy_; }
  cd at(int i, int j) const {
    if (i < 0 || j < 0 || i > dx_ || j > dy_) return 0.0;
    return c_[idx(i, j)];
  }
  void set(int i, int j, cd v) { c_[idx(i, j)] = v; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != cd(0)) return false;
    return true;
  }

  template <class T>
  T eval(const T& x, const T& y) const {
    // Horner in x, inner Horner in y.
    T acc = scalar_from<T>(0.0);
    for (int i = dx_; i >= 0; --i) {
      T row = scalar_from<T>(0.0);
      for (int j = dy_; j >= 0; --j) row = row * y + scalar_from<T>(at(i, j));
      acc = acc * x + row;
    }
    return acc;
  }

  Poly2 d_dx() const {
    if (dx_ == 0) return Poly2();
    Poly2 p(dx_ - 1, dy_);
    for (int i = 1; i <= dx_; ++i)
      for (int j = 0; j <= dy_; ++j) p.set(i - 1, j, at(i, j) * double(i));
    return p;
  }
  Poly2 d_dy() const {
    if (dy_ == 0) return Poly2();
    Poly2 p(dx_, dy_ - 1);
    for (int i = 0; i <= dx_; ++i)
      for (int j = 1; j <= dy_; ++j) p.set(i, j - 1, at(i, j) * double(j));
    return p;
  }

  friend Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 p(std::max(a.dx_, b.dx_), std::max(a.dy_, b.dy_));
    for (int i = 0; i <= p.dx_; ++i)
      for (int j = 0; j <= p.dy_; ++j) p.set(i, j, a.at(i, j) + b.at(i, j));
    return p;
  }
  friend Poly2 operator-(const Poly2& a, const Poly2& b) {
    Poly2 p(std::max(a.dx_, b.dx_), std::max(a.dy_, b.dy_));
    for (int i = 0; i <= p.dx_; ++i)
      for (int j = 0; j <= p.dy_; ++j) p.set(i, j, a.at(i, j) - b.at(i, j));
    return p;
  }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 p(a.dx_ + b.dx_, a.dy_ + b.dy_);
    for (int i = 0; i <= a.dx_; ++i)
      for (int j = 0; j <= a.dy_; ++j) {
        cd va = a.at(i, j);
        if (va == cd(0)) continue;
        for (int k = 0; k <= b.dx_; ++k)
          for (int l = 0; l <= b.dy_; ++l)
            p.c_[p.idx(i + k, j + l)] += va * b.at(k, l);
      }
    return p;
  }
  friend Poly2 operator*(cd s, const Poly2& a) {
    Poly2 p = a;
    for (auto& v : p.c_) v *= s;
    return p;
  }

  // univariate restriction y = 0, coefficients in x
  std::vector<cd> restrict_y0() const {
    std::vector<cd> r(dx_ + 1);
    for (int i = 0; i <= dx_; ++i) r[i] = at(i, 0);
    return r;
  }

  // order of vanishing along y = 0 (lowest j with a nonzero coefficient)
  int vanish_order_y() const {
    for (int j = 0; j <= dy_; ++j)
      for (int i = 0; i <= dx_; ++i)
        if (at(i, j) != cd(0)) return j;
    return dy_ + 1;  // identically zero
  }

  // coefficients in the eliminated variable: p = sum_k coeff_k(kept) * v^k.
  // which = 1 eliminates y (kept var x), which = 0 eliminates x.
  std::vector<std::vector<cd>> coeffs_in(int which) const {
    int dv = which ? dy_ : dx_;
    int du = which ? dx_ : dy_;
    std::vector<std::vector<cd>> out(dv + 1, std::vector<cd>(du + 1, cd(0)));
    for (int i = 0; i <= dx_; ++i)
      for (int j = 0; j <= dy_; ++j)
        out[which ? j : i][which ? i : j] = at(i, j);
    return out;
  }

 private:
  int idx(int i, int j) const { return i * (dy_ + 1) + j; }
  int dx_, dy_;
  std::vector<cd> c_;
};

inline Poly2 poly_from_terms(std::initializer_list<std::tuple<int, int, double>> terms) {
  int dx = 0, dy = 0;
  for (auto& [i, j, v] : terms) {
    dx = std::max(dx, i);
    dy = std::max(dy, j);
  }
  Poly2 p(dx, dy);
  for (auto& [i, j, v] : terms) p.set(i, j, p.at(i, j) + cd(v));
  return p;
}

}  // namespace sac

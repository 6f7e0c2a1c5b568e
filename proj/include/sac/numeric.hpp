#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>

namespace sac {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

inline double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

inline double circle_dist(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return d > kPi ? kTwoPi - d : d;
}

inline int digits_to_bits(int digits) {
  // 3.33 bits per decimal digit, plus guard bits.
  return static_cast<int>(digits * 3.33) + 32;
}

// Complex number over mpf_class.  GMP floats have an essentially unbounded
// exponent, which the deep-orbit computations (telescoping products,
// distortion ratios, preorbit chains) rely on; doubles under/overflow there.
struct BigComplex {
  mpf_class re, im;

  BigComplex() : re(0), im(0) {}
  BigComplex(const mpf_class& r, const mpf_class& i) : re(r), im(i) {}
  explicit BigComplex(const cd& z) : re(z.real()), im(z.imag()) {}
  explicit BigComplex(double r) : re(r), im(0) {}

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator*(const mpf_class& s, const BigComplex& b) {
    return {s * b.re, s * b.im};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    mpf_class n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
};

inline mpf_class abs2(const BigComplex& z) { return z.re * z.re + z.im * z.im; }
inline mpf_class babs(const BigComplex& z) {
  mpf_class n = abs2(z);
  return n > 0 ? sqrt(n) : mpf_class(0);
}

// log of an mpf magnitude, safe across the full exponent range.
inline double log_mpf(const mpf_class& x) {
  long exp2 = 0;
  double m = mpf_get_d_2exp(&exp2, x.get_mpf_t());
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::fabs(m)) + static_cast<double>(exp2) * std::log(2.0);
}

inline double log_abs(const BigComplex& z) { return 0.5 * log_mpf(abs2(z)); }

inline cd to_cd(const BigComplex& z) { return {z.re.get_d(), z.im.get_d()}; }

inline BigComplex bsqrt(const BigComplex& z) {
  // principal branch
  mpf_class r = babs(z);
  if (r == 0) return BigComplex();
  if (z.re >= 0) {
    mpf_class u = sqrt(mpf_class((r + z.re) / 2));
    return {u, z.im / (2 * u)};
  }
  mpf_class w = sqrt(mpf_class((r - z.re) / 2));
  mpf_class u = abs(z.im) / (2 * w);
  return {u, z.im >= 0 ? w : mpf_class(-w)};
}

// Scoped default-precision setting for newly constructed mpf values.
struct PrecGuard {
  mp_bitcnt_t old;
  explicit PrecGuard(int bits) : old(mpf_get_default_prec()) {
    mpf_set_default_prec(static_cast<mp_bitcnt_t>(bits));
  }
  ~PrecGuard() { mpf_set_default_prec(old); }
};

inline BigComplex bpow(const BigComplex& z, int k) {
  BigComplex acc(1.0), base = z;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base;
    if (e > 1) base = base * base;
  }
  return acc;
}

// Counter-based deterministic generator (splitmix64 over seed/counter),
// reproducible bit-for-bit regardless of call interleaving.
struct CounterRng {
  std::uint64_t seed = 0;

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t bits(std::uint64_t counter) const {
    return mix(mix(seed) ^ counter);
  }
  // uniform in [0,1)
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }
  double uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform(counter);
  }
  cd unit_disk(std::uint64_t counter) const {
    double r = std::sqrt(uniform(2 * counter));
    double t = kTwoPi * uniform(2 * counter + 1);
    return {r * std::cos(t), r * std::sin(t)};
  }
};

}  // namespace sac

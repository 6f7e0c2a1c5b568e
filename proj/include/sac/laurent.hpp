#pragma once

#include <gmpxx.h>

#include <vector>

#include "sac/numeric.hpp"

namespace sac {

// Laurent polynomial in z with exact rational coefficients sharing one
// denominator base^e: value = sum_i num[i]/base^e * z^(lo+i).  The series
// recurrences only ever divide by the line degree b, so denominators stay
// powers of b and no per-coefficient gcd work is needed.
class LaurentQ {
 public:
  LaurentQ() = default;
  explicit LaurentQ(long base) : base_(base) {}

  static LaurentQ monomial(long base, long mode, long num = 1, long e = 0);
  static LaurentQ zero(long base) { return LaurentQ(base); }

  bool is_zero() const { return num_.empty(); }
  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(num_.size()) - 1; }
  long bandwidth() const { return is_zero() ? 0 : hi() - lo(); }
  long base() const { return base_; }
  long denom_exp() const { return e_; }
  const std::vector<mpz_class>& nums() const { return num_; }

  LaurentQ& operator+=(const LaurentQ& o);
  LaurentQ& operator-=(const LaurentQ& o);
  friend LaurentQ operator+(LaurentQ a, const LaurentQ& b) { return a += b; }
  friend LaurentQ operator-(LaurentQ a, const LaurentQ& b) { return a -= b; }
  friend LaurentQ operator*(const LaurentQ& a, const LaurentQ& b);

  // multiply by integer scalar k * z^mode
  LaurentQ shifted_scaled(long mode, long k) const;
  // divide every coefficient by k * z^mode where k is a power of base
  LaurentQ divided(long mode, long k) const;
  // mode dilation k -> factor*k (substituting z -> z^factor)
  LaurentQ dilated(long factor) const;

  cd eval(const cd& z) const;
  double max_abs_on_circle(double radius, int n_angles = 64) const;

  void normalize();  // trim zero edges, strip shared base powers

 private:
  long base_ = 3;
  long lo_ = 0;
  long e_ = 0;  // denominator = base^e
  std::vector<mpz_class> num_;
};

}  // namespace sac

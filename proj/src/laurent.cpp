#include "sac/laurent.hpp"

#include <algorithm>

#include "sac/errors.hpp"

namespace sac {

LaurentQ LaurentQ::monomial(long base, long mode, long num, long e) {
  LaurentQ p(base);
  if (num != 0) {
    p.lo_ = mode;
    p.e_ = e;
    p.num_.assign(1, mpz_class(num));
    p.normalize();
  }
  return p;
}

void LaurentQ::normalize() {
  std::size_t b = 0, n = num_.size();
  while (b < n && num_[b] == 0) ++b;
  while (n > b && num_[n - 1] == 0) --n;
  if (b > 0 || n < num_.size()) {
    num_ = std::vector<mpz_class>(num_.begin() + b, num_.begin() + n);
    lo_ += static_cast<long>(b);
  }
  if (num_.empty()) {
    lo_ = 0;
    e_ = 0;
    return;
  }
  while (e_ > 0) {
    bool all = true;
    for (const auto& v : num_)
      if (!mpz_divisible_ui_p(v.get_mpz_t(), base_)) {
        all = false;
        break;
      }
    if (!all) break;
    for (auto& v : num_) mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), base_);
    --e_;
  }
}

namespace {
mpz_class base_pow(long base, long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), base, e);
  return p;
}
}  // namespace

LaurentQ& LaurentQ::operator+=(const LaurentQ& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  long e = std::max(e_, o.e_);
  mpz_class s1 = base_pow(base_, e - e_), s2 = base_pow(base_, e - o.e_);
  long lo = std::min(lo_, o.lo_), hi = std::max(this->hi(), o.hi());
  std::vector<mpz_class> out(hi - lo + 1);
  for (std::size_t i = 0; i < num_.size(); ++i)
    out[lo_ - lo + i] = num_[i] * s1;
  for (std::size_t i = 0; i < o.num_.size(); ++i)
    out[o.lo_ - lo + i] += o.num_[i] * s2;
  lo_ = lo;
  e_ = e;
  num_ = std::move(out);
  normalize();
  return *this;
}

LaurentQ& LaurentQ::operator-=(const LaurentQ& o) {
  if (o.is_zero()) return *this;
  LaurentQ neg = o;
  for (auto& v : neg.num_) v = -v;
  return *this += neg;
}

LaurentQ operator*(const LaurentQ& a, const LaurentQ& b) {
  LaurentQ p(a.base_);
  if (a.is_zero() || b.is_zero()) return p;
  p.lo_ = a.lo_ + b.lo_;
  p.e_ = a.e_ + b.e_;
  p.num_.assign(a.num_.size() + b.num_.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.num_.size(); ++i) {
    if (a.num_[i] == 0) continue;
    for (std::size_t j = 0; j < b.num_.size(); ++j)
      p.num_[i + j] += a.num_[i] * b.num_[j];
  }
  p.normalize();
  return p;
}

LaurentQ LaurentQ::shifted_scaled(long mode, long k) const {
  LaurentQ p = *this;
  if (k == 0) return LaurentQ(base_);
  p.lo_ += mode;
  if (k != 1)
    for (auto& v : p.num_) v *= k;
  p.normalize();
  return p;
}

LaurentQ LaurentQ::divided(long mode, long k) const {
  LaurentQ p = *this;
  p.lo_ -= mode;
  long add = 0;
  for (long q = k; q > 1; q /= base_) {
    if (q % base_ != 0)
      throw UsageError("LaurentQ division only by powers of the base");
    ++add;
  }
  p.e_ += add;
  p.normalize();
  return p;
}

LaurentQ LaurentQ::dilated(long factor) const {
  if (is_zero() || factor == 1) return *this;
  LaurentQ p(base_);
  p.e_ = e_;
  p.lo_ = lo_ * factor;
  p.num_.assign((num_.size() - 1) * factor + 1, mpz_class(0));
  for (std::size_t i = 0; i < num_.size(); ++i) p.num_[i * factor] = num_[i];
  p.normalize();
  return p;
}

cd LaurentQ::eval(const cd& z) const {
  if (is_zero()) return 0.0;
  mpz_class den = base_pow(base_, e_);
  cd acc = 0;
  // mpq conversion keeps huge numerator/denominator pairs finite in double
  for (auto it = num_.rbegin(); it != num_.rend(); ++it)
    acc = acc * z + cd(mpq_class(*it, den).get_d());
  acc *= std::pow(z, cd(double(lo_)));
  return acc;
}

double LaurentQ::max_abs_on_circle(double radius, int n_angles) const {
  double best = 0;
  for (int k = 0; k < n_angles; ++k) {
    cd z = std::polar(radius, kTwoPi * k / n_angles);
    best = std::max(best, std::abs(eval(z)));
  }
  return best;
}

}  // namespace sac

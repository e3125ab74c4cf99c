#pragma once

#include <compare>
#include <string>

#include <mpfr.h>

#include "qconf/scalars/rational.hpp"

namespace qconf {

inline constexpr long kDefaultPrecisionBits = 256;
inline constexpr long kMinPrecisionBits = 53;

// Owning handle on an mpfr_t.  Every operation rounds to nearest at the
// larger of the operand precisions.
class BigFloat {
 public:
  explicit BigFloat(long bits = kDefaultPrecisionBits);
  BigFloat(long value, long bits);
  BigFloat(double value, long bits);
  BigFloat(const Rational& value, long bits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat parse(const std::string& decimal, long bits);
  static BigFloat pi(long bits);
  // 2^e at the given precision.
  static BigFloat exp2i(long e, long bits);

  long bits() const noexcept { return static_cast<long>(mpfr_get_prec(v_)); }
  // Same value re-rounded to a new precision.
  BigFloat with_bits(long bits) const;

  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }
  // Binary exponent e with 0.5 <= |x| / 2^e < 1; undefined for zero.
  long exponent2() const noexcept { return static_cast<long>(mpfr_get_exp(v_)); }
  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  // Scientific notation with the given number of significant digits;
  // digits == 0 picks enough digits to round-trip at this precision.
  std::string to_string(int digits = 0) const;

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a);

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

 private:
  mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat hypot(const BigFloat& x, const BigFloat& y);
BigFloat pow(const BigFloat& x, long n);
BigFloat ldexp(const BigFloat& x, long e);

}  // namespace qconf

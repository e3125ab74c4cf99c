#pragma once

#include <complex>
#include <string>

#include "qconf/scalars/bigfloat.hpp"
#include "qconf/scalars/rational.hpp"

namespace qconf {

// Complex number with MPFR real and imaginary parts at a declared precision.
// Mixed-precision arithmetic promotes to the larger precision.
class ComplexAP {
 public:
  explicit ComplexAP(long bits = kDefaultPrecisionBits) : re_(bits), im_(bits) {}
  ComplexAP(BigFloat re, BigFloat im);
  ComplexAP(const Rational& re, long bits) : re_(re, bits), im_(bits) {}
  ComplexAP(const Rational& re, const Rational& im, long bits) : re_(re, bits), im_(im, bits) {}
  ComplexAP(double re, double im, long bits) : re_(re, bits), im_(im, bits) {}

  // "a", "a+bi", "a-bi", "bi", "i" with decimal or p/q components.
  static ComplexAP parse(const std::string& text, long bits);
  static ComplexAP i(long bits) { return ComplexAP(BigFloat(bits), BigFloat(1L, bits)); }

  long bits() const noexcept { return re_.bits() > im_.bits() ? re_.bits() : im_.bits(); }
  ComplexAP with_bits(long bits) const { return {re_.with_bits(bits), im_.with_bits(bits)}; }

  const BigFloat& real() const noexcept { return re_; }
  const BigFloat& imag() const noexcept { return im_; }

  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const noexcept { return im_.is_zero(); }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  std::string to_string(int digits = 0) const;

  ComplexAP& operator+=(const ComplexAP& o);
  ComplexAP& operator-=(const ComplexAP& o);
  ComplexAP& operator*=(const ComplexAP& o);
  ComplexAP& operator/=(const ComplexAP& o);

  friend ComplexAP operator+(ComplexAP a, const ComplexAP& b) { return a += b; }
  friend ComplexAP operator-(ComplexAP a, const ComplexAP& b) { return a -= b; }
  friend ComplexAP operator*(ComplexAP a, const ComplexAP& b) { return a *= b; }
  friend ComplexAP operator/(ComplexAP a, const ComplexAP& b) { return a /= b; }
  friend ComplexAP operator-(const ComplexAP& a) { return {-a.re_, -a.im_}; }

  // Exact equality of both components.
  friend bool operator==(const ComplexAP& a, const ComplexAP& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  BigFloat re_;
  BigFloat im_;
};

BigFloat abs(const ComplexAP& z);
// Argument in (-pi, pi].
BigFloat arg(const ComplexAP& z);
ComplexAP conj(const ComplexAP& z);
ComplexAP exp(const ComplexAP& z);
// Principal logarithm, imaginary part in (-pi, pi].  Throws ZeroBase at 0.
ComplexAP log(const ComplexAP& z);
// z^n by binary powering with guard bits; n may be negative.
ComplexAP pow(const ComplexAP& z, long n);

// exp(exponent * Log(base)) with the principal logarithm.  Integer real
// exponents take the binary-powering path.  Throws ZeroBase when base == 0.
ComplexAP principal_power(const ComplexAP& base, const ComplexAP& exponent);

// Distance in units of 2^(exponent(|reference|) - bits): |a - b| / ulp(reference).
double ulp_distance(const ComplexAP& a, const ComplexAP& b);

}  // namespace qconf

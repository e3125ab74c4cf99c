#include "qconf/scalars/complex_ap.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qconf/error.hpp"

namespace qconf {

namespace {

constexpr long kGuardBits = 32;

// Splits "a+bi" into its real and imaginary texts; the sign that separates
// them is the last '+'/'-' that is not the leading sign or part of an exponent.
std::pair<std::string, std::string> split_complex(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (s.empty()) raise(ErrorCode::InvalidArgument, "empty complex literal");
  if (s.back() != 'i' && s.back() != 'I') return {s, "0"};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re, im};
}

BigFloat parse_component(const std::string& text, long bits) {
  if (text.find('/') != std::string::npos) return BigFloat(Rational::parse(text), bits);
  std::string t = text;
  if (!t.empty() && t.front() == '+') t.erase(t.begin());
  return BigFloat::parse(t, bits);
}

}  // namespace

ComplexAP::ComplexAP(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.bits() != im_.bits()) {
    const long b = std::max(re_.bits(), im_.bits());
    re_ = re_.with_bits(b);
    im_ = im_.with_bits(b);
  }
}

ComplexAP ComplexAP::parse(const std::string& text, long bits) {
  auto [re, im] = split_complex(text);
  return {parse_component(re, bits), parse_component(im, bits)};
}

std::string ComplexAP::to_string(int digits) const {
  std::string out = re_.to_string(digits);
  const std::string im = im_.to_string(digits);
  if (im.front() == '-') {
    out += im;
  } else {
    out += "+" + im;
  }
  return out + "i";
}

ComplexAP& ComplexAP::operator+=(const ComplexAP& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ComplexAP& ComplexAP::operator-=(const ComplexAP& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ComplexAP& ComplexAP::operator*=(const ComplexAP& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    im_ = BigFloat(std::max(bits(), o.bits()));
    return *this;
  }
  BigFloat re = re_ * o.re_ - im_ * o.im_;
  BigFloat im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexAP& ComplexAP::operator/=(const ComplexAP& o) {
  if (o.is_zero()) raise(ErrorCode::InvalidArgument, "complex division by zero");
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  // Extra precision keeps the conjugate-multiplication route within a few ulps.
  const long b = std::max(bits(), o.bits());
  const long w = b + kGuardBits;
  const BigFloat c = o.re_.with_bits(w);
  const BigFloat d = o.im_.with_bits(w);
  const BigFloat a = re_.with_bits(w);
  const BigFloat e = im_.with_bits(w);
  const BigFloat den = c * c + d * d;
  re_ = ((a * c + e * d) / den).with_bits(b);
  im_ = ((e * c - a * d) / den).with_bits(b);
  return *this;
}

BigFloat abs(const ComplexAP& z) { return hypot(z.real(), z.imag()); }

BigFloat arg(const ComplexAP& z) { return atan2(z.imag(), z.real()); }

ComplexAP conj(const ComplexAP& z) { return {z.real(), -z.imag()}; }

ComplexAP exp(const ComplexAP& z) {
  const long b = z.bits();
  const ComplexAP w = z.with_bits(b + kGuardBits);
  const BigFloat m = exp(w.real());
  if (w.imag().is_zero()) return ComplexAP(m.with_bits(b), BigFloat(b));
  return ComplexAP((m * cos(w.imag())).with_bits(b), (m * sin(w.imag())).with_bits(b));
}

ComplexAP log(const ComplexAP& z) {
  if (z.is_zero()) raise(ErrorCode::ZeroBase, "logarithm of zero");
  // mpfr_atan2(+0, negative) = +pi, so the branch cut lands on (-pi, pi].
  BigFloat im = z.imag();
  if (im.is_zero() && im.sign() == 0) im = abs(im);
  return ComplexAP(log(abs(z)), atan2(im, z.real()));
}

ComplexAP pow(const ComplexAP& z, long n) {
  const long b = z.bits();
  if (n == 0) return ComplexAP(Rational(1), b);
  if (z.is_zero()) {
    if (n < 0) raise(ErrorCode::ZeroBase, "negative power of zero");
    return ComplexAP(b);
  }
  ComplexAP base = z.with_bits(b + kGuardBits);
  unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1UL : static_cast<unsigned long>(n);
  ComplexAP acc(Rational(1), b + kGuardBits);
  while (e != 0) {
    if (e & 1UL) acc *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  if (n < 0) acc = ComplexAP(Rational(1), b + kGuardBits) / acc;
  return acc.with_bits(b);
}

ComplexAP principal_power(const ComplexAP& base, const ComplexAP& exponent) {
  if (base.is_zero()) raise(ErrorCode::ZeroBase, "principal_power with zero base");
  const long b = std::max(base.bits(), exponent.bits());
  if (exponent.imag().is_zero() && mpfr_integer_p(exponent.real().get()) &&
      mpfr_fits_slong_p(exponent.real().get(), MPFR_RNDN)) {
    return pow(base.with_bits(b), mpfr_get_si(exponent.real().get(), MPFR_RNDN));
  }
  const long w = b + kGuardBits;
  const ComplexAP l = log(base.with_bits(w));
  return exp(exponent.with_bits(w) * l).with_bits(b);
}

double ulp_distance(const ComplexAP& a, const ComplexAP& b) {
  const BigFloat diff = abs(a - b);
  if (diff.is_zero()) return 0.0;
  const BigFloat ref = abs(a);
  const long e = ref.is_zero() ? 0 : ref.exponent2();
  const BigFloat ulp = BigFloat::exp2i(e - a.bits(), 64);
  return (diff / ulp).to_double();
}

}  // namespace qconf

#include "qconf/scalars/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qconf/error.hpp"

namespace qconf {

namespace {

long checked_bits(long bits) {
  if (bits < kMinPrecisionBits) {
    raise(ErrorCode::InvalidArgument, "precision must be at least 53 bits, got " + std::to_string(bits));
  }
  return bits;
}

long max_bits(const BigFloat& a, const BigFloat& b) { return std::max(a.bits(), b.bits()); }

}  // namespace

BigFloat::BigFloat(long bits) {
  mpfr_init2(v_, checked_bits(bits));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long value, long bits) {
  mpfr_init2(v_, checked_bits(bits));
  mpfr_set_si(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(double value, long bits) {
  mpfr_init2(v_, checked_bits(bits));
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, long bits) {
  mpfr_init2(v_, checked_bits(bits));
  mpfr_set_q(v_, value.get().get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::parse(const std::string& decimal, long bits) {
  BigFloat out(bits);
  if (mpfr_set_str(out.v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    raise(ErrorCode::InvalidArgument, "malformed decimal '" + decimal + "'");
  }
  return out;
}

BigFloat BigFloat::pi(long bits) {
  BigFloat out(bits);
  mpfr_const_pi(out.v_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::exp2i(long e, long bits) {
  BigFloat out(1L, bits);
  mpfr_mul_2si(out.v_, out.v_, e, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::with_bits(long bits) const {
  BigFloat out(bits);
  mpfr_set(out.v_, v_, MPFR_RNDN);
  return out;
}

std::string BigFloat::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (digits <= 0) {
    digits = static_cast<int>(std::ceil(static_cast<double>(bits()) * 0.30102999566398120)) + 1;
  }
  const int size = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, v_);
  std::string out(static_cast<std::size_t>(size) + 1, '\0');
  mpfr_snprintf(out.data(), out.size(), "%.*Re", digits - 1, v_);
  out.resize(static_cast<std::size_t>(size));
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) { return *this = *this + o; }
BigFloat& BigFloat::operator-=(const BigFloat& o) { return *this = *this - o; }
BigFloat& BigFloat::operator*=(const BigFloat& o) { return *this = *this * o; }
BigFloat& BigFloat::operator/=(const BigFloat& o) { return *this = *this / o; }

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat out(max_bits(a, b));
  mpfr_add(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat out(max_bits(a, b));
  mpfr_sub(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat out(max_bits(a, b));
  mpfr_mul(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat out(max_bits(a, b));
  mpfr_div(out.v_, a.v_, b.v_, MPFR_RNDN);
  return out;
}

BigFloat operator-(const BigFloat& a) {
  BigFloat out(a.bits());
  mpfr_neg(out.v_, a.v_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define QCONF_UNARY(name, fn)                     \
  BigFloat name(const BigFloat& x) {              \
    BigFloat out(x.bits());                       \
    fn(out.get(), x.get(), MPFR_RNDN);            \
    return out;                                   \
  }

QCONF_UNARY(abs, mpfr_abs)
QCONF_UNARY(sqrt, mpfr_sqrt)
QCONF_UNARY(exp, mpfr_exp)
QCONF_UNARY(log, mpfr_log)
QCONF_UNARY(sin, mpfr_sin)
QCONF_UNARY(cos, mpfr_cos)

#undef QCONF_UNARY

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat out(std::max(x.bits(), y.bits()));
  mpfr_atan2(out.get(), y.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat hypot(const BigFloat& x, const BigFloat& y) {
  BigFloat out(std::max(x.bits(), y.bits()));
  mpfr_hypot(out.get(), x.get(), y.get(), MPFR_RNDN);
  return out;
}

BigFloat pow(const BigFloat& x, long n) {
  BigFloat out(x.bits());
  mpfr_pow_si(out.get(), x.get(), n, MPFR_RNDN);
  return out;
}

BigFloat ldexp(const BigFloat& x, long e) {
  BigFloat out(x.bits());
  mpfr_mul_2si(out.get(), x.get(), e, MPFR_RNDN);
  return out;
}

}  // namespace qconf

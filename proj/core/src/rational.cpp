#include "qconf/scalars/rational.hpp"

#include <cctype>

#include "qconf/error.hpp"

namespace qconf {

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) raise(ErrorCode::InvalidArgument, "malformed number '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      raise(ErrorCode::InvalidArgument, "malformed number '" + std::string(whole) + "'");
    }
  }
  return mpz_class(std::string(digits), 10);
}

}  // namespace

Rational::Rational(long n, long d) {
  if (d == 0) raise(ErrorCode::InvalidArgument, "zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (d == 0) raise(ErrorCode::InvalidArgument, "zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) raise(ErrorCode::InvalidArgument, "division of a rational by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational out;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpz_class n = parse_integer(text.substr(0, slash), whole);
    const mpz_class d = parse_integer(text.substr(slash + 1), whole);
    out = Rational(n, d);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_part = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
        exp_negative = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      const mpz_class ev = parse_integer(exp_part, whole);
      if (!ev.fits_slong_p() || abs(ev) > 100000) raise(ErrorCode::InvalidArgument, "exponent out of range");
      exponent = exp_negative ? -ev.get_si() : ev.get_si();
      text = text.substr(0, e);
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
      frac_digits = static_cast<long>(text.size() - dot - 1);
      if (digits.empty()) raise(ErrorCode::InvalidArgument, "malformed number '" + std::string(whole) + "'");
    } else {
      digits = std::string(text);
    }
    const mpz_class n = parse_integer(digits, whole);
    out = Rational(n) * pow(Rational(10), exponent - frac_digits);
  }
  return negative ? -out : out;
}

std::string Rational::to_string() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::to_short_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return to_string();
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base.is_zero()) raise(ErrorCode::InvalidArgument, "negative power of zero");
    return Rational(1) / pow(base, -exponent);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get().get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.get().get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

}  // namespace qconf

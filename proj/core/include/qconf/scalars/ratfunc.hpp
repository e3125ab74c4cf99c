#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qconf/scalars/complex_ap.hpp"
#include "qconf/scalars/polynomial.hpp"
#include "qconf/scalars/rational.hpp"

namespace qconf {

// Rational function over Rational in the variables q, z, Lambda_i, lambda_i.
//
// The numerator is kept expanded; the denominator is kept as a monomial times
// a sorted list of monic, monomial-free factors with multiplicities.  Factors
// of the form x^n -+ 1 are split into cyclotomic pieces on entry, and a
// numerator is only trial-divided by factors that could have become shared.
// Equality is decided by expanding the difference, so it never depends on how
// far a value happens to be reduced.
class RatFunc {
 public:
  struct Factor {
    Poly poly;
    int mult;
  };

  RatFunc() = default;
  RatFunc(const Rational& c) : num_(c) {}  // NOLINT: constants embed
  RatFunc(long c) : num_(Rational(c)) {}  // NOLINT
  RatFunc(int c) : num_(Rational(c)) {}  // NOLINT
  explicit RatFunc(Poly num) : num_(std::move(num)) {}
  static RatFunc fraction(const Poly& num, const Poly& den);
  static RatFunc variable(int v) { return RatFunc(Poly::variable(v)); }
  static RatFunc q() { return variable(kVarQ); }
  static RatFunc z() { return variable(kVarZ); }
  static RatFunc Lambda(int i) { return variable(var_Lambda(i)); }
  static RatFunc lambda(int i) { return variable(var_lambda(i)); }

  const Poly& numerator() const noexcept { return num_; }
  const Monomial& denominator_monomial() const noexcept { return den_mono_; }
  const std::vector<Factor>& denominator_factors() const noexcept { return den_; }
  Poly denominator() const;

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool has_trivial_denominator() const noexcept { return den_mono_.is_one() && den_.empty(); }
  // The value when this is a constant, nullopt otherwise.
  std::optional<Rational> as_rational() const;
  unsigned variable_mask() const;

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b);

  // Replace variable v by a rational function.  NearZeroDenominator when the
  // substituted denominator vanishes identically.
  RatFunc substitute(int v, const RatFunc& value) const;

  // Numerator and denominator values under value_of; see evaluate() in
  // polynomial.hpp for the requirements on T.
  template <class T, class ValueOf, class Make>
  std::pair<T, T> evaluate_parts(ValueOf&& value_of, Make&& make) const {
    T num = evaluate<T>(num_, value_of, make);
    T den = evaluate<T>(Poly::monomial(den_mono_), value_of, make);
    for (const auto& f : den_) {
      const T fv = evaluate<T>(f.poly, value_of, make);
      for (int k = 0; k < f.mult; ++k) den = den * fv;
    }
    return {std::move(num), std::move(den)};
  }

  std::string to_string() const;

 private:
  std::vector<Poly> insert_factor(Poly f, int mult);
  void cancel_with(const std::vector<Poly>& candidates);
  void cancel_monomial();

  Poly num_;
  Monomial den_mono_;
  std::vector<Factor> den_;
};

RatFunc pow(const RatFunc& f, long n);

// Numeric evaluation.  MissingVariable when a used variable is not assigned;
// NearZeroDenominator when |denominator| < 2^(-bits/2).
ComplexAP ratfunc_eval(const RatFunc& f, const std::map<int, ComplexAP>& assignment, long bits);
// Exact evaluation; NearZeroDenominator on an exact pole.
Rational ratfunc_eval(const RatFunc& f, const std::map<int, Rational>& assignment);

}  // namespace qconf

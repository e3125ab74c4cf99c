#pragma once

#include <concepts>
#include <string>

#include "qconf/error.hpp"
#include "qconf/scalars/complex_ap.hpp"
#include "qconf/scalars/ratfunc.hpp"
#include "qconf/scalars/rational.hpp"

namespace qconf {

// Per-field data needed to create elements from nothing.  Exact fields need
// none; the numeric field needs its precision.
struct ExactContext {
  friend bool operator==(ExactContext, ExactContext) = default;
};

template <class S>
struct field_traits;

template <>
struct field_traits<Rational> {
  using context = ExactContext;
  static constexpr bool exact = true;
  static context context_of(const Rational&) { return {}; }
  static Rational from_rational(const Rational& r, context) { return r; }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static bool is_negligible(const Rational& x) { return x.is_zero(); }
  static std::string to_string(const Rational& x) { return x.to_string(); }
};

template <>
struct field_traits<RatFunc> {
  using context = ExactContext;
  static constexpr bool exact = true;
  static context context_of(const RatFunc&) { return {}; }
  static RatFunc from_rational(const Rational& r, context) { return RatFunc(r); }
  static bool is_zero(const RatFunc& x) { return x.is_zero(); }
  static bool is_negligible(const RatFunc& x) { return x.is_zero(); }
  static std::string to_string(const RatFunc& x) { return x.to_string(); }
};

struct NumericContext {
  long bits = kDefaultPrecisionBits;
  friend bool operator==(NumericContext, NumericContext) = default;
};

template <>
struct field_traits<ComplexAP> {
  using context = NumericContext;
  static constexpr bool exact = false;
  static context context_of(const ComplexAP& x) { return {x.bits()}; }
  static ComplexAP from_rational(const Rational& r, context c) { return ComplexAP(r, c.bits); }
  static bool is_zero(const ComplexAP& x) { return x.is_zero(); }
  // Below 2^(-bits/2): treated as a vanishing unit or a pole.
  static bool is_negligible(const ComplexAP& x) {
    return x.is_zero() || abs(x) < BigFloat::exp2i(-x.bits() / 2, 64);
  }
  static std::string to_string(const ComplexAP& x) { return x.to_string(); }
};

template <class S>
concept ScalarField = requires(const S& a, const S& b, const Rational& r, typename field_traits<S>::context c) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { field_traits<S>::from_rational(r, c) } -> std::same_as<S>;
  { field_traits<S>::context_of(a) } -> std::same_as<typename field_traits<S>::context>;
  { field_traits<S>::is_zero(a) } -> std::same_as<bool>;
  { field_traits<S>::is_negligible(a) } -> std::same_as<bool>;
};

template <ScalarField S>
S zero_of(typename field_traits<S>::context c) {
  return field_traits<S>::from_rational(Rational(0), c);
}

template <ScalarField S>
S one_of(typename field_traits<S>::context c) {
  return field_traits<S>::from_rational(Rational(1), c);
}

template <ScalarField S>
S scalar_pow(const S& x, long n) {
  const auto c = field_traits<S>::context_of(x);
  if (n < 0) return one_of<S>(c) / scalar_pow(x, -n);
  S acc = one_of<S>(c);
  S base = x;
  while (n != 0) {
    if (n & 1L) acc = acc * base;
    n >>= 1;
    if (n != 0) base = base * base;
  }
  return acc;
}

// FieldMismatch unless two contexts describe the same field.
template <ScalarField S>
void require_same_field(const typename field_traits<S>::context& a, const typename field_traits<S>::context& b) {
  if (!(a == b)) raise(ErrorCode::FieldMismatch, "operands come from different coefficient fields");
}

static_assert(ScalarField<Rational>);
static_assert(ScalarField<RatFunc>);
static_assert(ScalarField<ComplexAP>);

}  // namespace qconf

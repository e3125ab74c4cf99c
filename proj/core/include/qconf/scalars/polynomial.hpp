#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qconf/error.hpp"
#include "qconf/scalars/rational.hpp"

namespace qconf {

// Variable slots: q, z, Lambda_0..Lambda_6, lambda_0..lambda_6.
inline constexpr int kNumVars = 16;
inline constexpr int kMaxSymbolicN = 6;
inline constexpr int kVarQ = 0;
inline constexpr int kVarZ = 1;
constexpr int var_Lambda(int i) { return 2 + i; }
constexpr int var_lambda(int i) { return 2 + kMaxSymbolicN + 1 + i; }

// "q", "z", "Lambda3", "lambda0", ...
std::string var_name(int v);
// Inverse of var_name; -1 for unknown names.
int var_index(const std::string& name);

struct Monomial {
  std::array<std::int16_t, kNumVars> e{};

  int degree() const noexcept {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_one() const noexcept { return degree() == 0; }
  bool divides(const Monomial& m) const noexcept {
    for (int v = 0; v < kNumVars; ++v) {
      if (e[v] > m.e[v]) return false;
    }
    return true;
  }
  friend Monomial operator*(Monomial a, const Monomial& b) noexcept {
    for (int v = 0; v < kNumVars; ++v) a.e[v] = static_cast<std::int16_t>(a.e[v] + b.e[v]);
    return a;
  }
  // Caller guarantees b divides a.
  friend Monomial operator/(Monomial a, const Monomial& b) noexcept {
    for (int v = 0; v < kNumVars; ++v) a.e[v] = static_cast<std::int16_t>(a.e[v] - b.e[v]);
    return a;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;

  static Monomial var(int v, int power = 1) {
    Monomial m;
    m.e[v] = static_cast<std::int16_t>(power);
    return m;
  }
};

Monomial gcd(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);

// Graded lexicographic comparison, q > z > Lambda_0 > ... > lambda_6.
// Returns <0, 0, >0.
int grlex_compare(const Monomial& a, const Monomial& b) noexcept;

struct Term {
  Monomial mono;
  Rational coeff;
};

// Sparse distributed polynomial over Rational; terms strictly decreasing in
// grlex order, no zero coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT: constants embed
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT
  Poly(int c) : Poly(Rational(c)) {}  // NOLINT
  static Poly monomial(const Monomial& m, const Rational& c = Rational(1));
  static Poly variable(int v) { return monomial(Monomial::var(v)); }
  // Takes arbitrary terms; sorts and merges them.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_value() const;
  const Term& leading() const { return terms_.front(); }
  int total_degree() const noexcept { return terms_.empty() ? -1 : terms_.front().mono.degree(); }
  int degree_in(int v) const noexcept;
  // Bit v set when variable v occurs.
  unsigned variable_mask() const noexcept;
  // gcd of all monomials.
  Monomial monomial_content() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  Poly scaled(const Rational& c) const;
  Poly times_monomial(const Monomial& m) const;
  // Caller guarantees m divides every term.
  Poly div_monomial(const Monomial& m) const;
  // Divide every coefficient by the leading coefficient.
  Poly monic() const;

  // Quotient when d divides *this exactly, nullopt otherwise.
  std::optional<Poly> divide_exact(const Poly& d) const;

  friend bool operator==(const Poly& a, const Poly& b);
  // Total order used to keep factor lists sorted (not a ring order).
  friend int structural_compare(const Poly& a, const Poly& b);

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

Poly pow(const Poly& p, unsigned n);

// Values of a polynomial with every variable replaced through value_of(v).
// T needs +, *, and construction from Rational via make(Rational).
template <class T, class ValueOf, class Make>
T evaluate(const Poly& p, ValueOf&& value_of, Make&& make) {
  std::array<std::vector<T>, kNumVars> powers;
  T acc = make(Rational(0));
  for (const Term& t : p.terms()) {
    T term = make(t.coeff);
    for (int v = 0; v < kNumVars; ++v) {
      const int k = t.mono.e[v];
      if (k == 0) continue;
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(value_of(v));
      while (static_cast<int>(pw.size()) < k) pw.push_back(pw.back() * pw.front());
      term = term * pw[k - 1];
    }
    acc = acc + term;
  }
  return acc;
}

// Cyclotomic polynomial Phi_n in variable v.
Poly cyclotomic(unsigned n, int v);

}  // namespace qconf

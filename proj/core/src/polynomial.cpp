#include "qconf/scalars/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qconf {

std::string var_name(int v) {
  if (v == kVarQ) return "q";
  if (v == kVarZ) return "z";
  if (v >= var_Lambda(0) && v <= var_Lambda(kMaxSymbolicN)) return "Lambda" + std::to_string(v - var_Lambda(0));
  if (v >= var_lambda(0) && v <= var_lambda(kMaxSymbolicN)) return "lambda" + std::to_string(v - var_lambda(0));
  raise(ErrorCode::InvalidArgument, "no variable slot " + std::to_string(v));
}

int var_index(const std::string& name) {
  for (int v = 0; v < kNumVars; ++v) {
    if (var_name(v) == name) return v;
  }
  return -1;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int v = 0; v < kNumVars; ++v) m.e[v] = std::min(a.e[v], b.e[v]);
  return m;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int v = 0; v < kNumVars; ++v) m.e[v] = std::max(a.e[v], b.e[v]);
  return m;
}

int grlex_compare(const Monomial& a, const Monomial& b) noexcept {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (int v = 0; v < kNumVars; ++v) {
    if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? -1 : 1;
  }
  return 0;
}

namespace {

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept { return grlex_compare(a, b) > 0; }
};

std::string monomial_string(const Monomial& m) {
  std::string out;
  for (int v = 0; v < kNumVars; ++v) {
    if (m.e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += var_name(v);
    if (m.e[v] != 1) out += "^" + std::to_string(m.e[v]);
  }
  return out;
}

}  // namespace

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_compare(a.mono, b.mono) > 0; });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Rational Poly::constant_value() const {
  if (!is_constant()) raise(ErrorCode::InvalidArgument, "polynomial is not constant");
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

int Poly::degree_in(int v) const noexcept {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.mono.e[v]);
  return d;
}

unsigned Poly::variable_mask() const noexcept {
  unsigned mask = 0;
  for (const auto& t : terms_) {
    for (int v = 0; v < kNumVars; ++v) {
      if (t.mono.e[v] != 0) mask |= 1U << v;
    }
  }
  return mask;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial m = terms_[0].mono;
  for (const auto& t : terms_) m = gcd(m, t.mono);
  return m;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size()) {
      c = -1;
    } else if (j == o.terms_.size()) {
      c = 1;
    } else {
      c = grlex_compare(terms_[i].mono, o.terms_[j].mono);
    }
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].coeff + o.terms_[j].coeff;
      if (!s.is_zero()) out.push_back({terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1 && a.terms_[0].mono.is_one()) return b.scaled(a.terms_[0].coeff);
  if (b.size() == 1 && b.terms_[0].mono.is_one()) return a.scaled(b.terms_[0].coeff);
  std::vector<Term> prods;
  prods.reserve(a.size() * b.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) prods.push_back({s.mono * t.mono, s.coeff * t.coeff});
  }
  return Poly::from_terms(std::move(prods));
}

Poly Poly::scaled(const Rational& c) const {
  if (c.is_zero()) return {};
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly Poly::times_monomial(const Monomial& m) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.mono = t.mono * m;
  return r;
}

Poly Poly::div_monomial(const Monomial& m) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.mono = t.mono / m;
  return r;
}

Poly Poly::monic() const {
  if (terms_.empty()) return {};
  return scaled(Rational(1) / terms_[0].coeff);
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) raise(ErrorCode::InvalidArgument, "polynomial division by zero");
  if (is_zero()) return Poly{};
  if (d.size() == 1) {
    const Term& t = d.terms_[0];
    if (!t.mono.divides(monomial_content())) return std::nullopt;
    return div_monomial(t.mono).scaled(Rational(1) / t.coeff);
  }
  // The leading and trailing terms of a product are the products of the
  // leading and trailing terms; both give cheap rejections.
  if (!d.leading().mono.divides(leading().mono)) return std::nullopt;
  if (!d.terms_.back().mono.divides(terms_.back().mono)) return std::nullopt;
  for (int v = 0; v < kNumVars; ++v) {
    if (d.degree_in(v) > degree_in(v)) return std::nullopt;
  }
  std::map<Monomial, Rational, GrlexGreater> rem;
  for (const auto& t : terms_) rem.emplace(t.mono, t.coeff);
  const Term& lead = d.leading();
  const Rational inv_lead = Rational(1) / lead.coeff;
  std::vector<Term> quot;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lead.mono.divides(it->first)) return std::nullopt;
    const Monomial m = it->first / lead.mono;
    const Rational c = it->second * inv_lead;
    for (const auto& t : d.terms_) {
      const Monomial p = t.mono * m;
      auto [pos, inserted] = rem.try_emplace(p, -(c * t.coeff));
      if (!inserted) {
        pos->second -= c * t.coeff;
        if (pos->second.is_zero()) rem.erase(pos);
      }
    }
    quot.push_back({m, c});
  }
  Poly q;
  q.terms_ = std::move(quot);
  return q;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  }
  return true;
}

int structural_compare(const Poly& a, const Poly& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = grlex_compare(a.terms_[i].mono, b.terms_[i].mono);
    if (c != 0) return c;
    if (a.terms_[i].coeff != b.terms_[i].coeff) return a.terms_[i].coeff < b.terms_[i].coeff ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = t.coeff.sign() < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const Rational c = abs(t.coeff);
    if (t.mono.is_one()) {
      os << c.to_short_string();
    } else if (c.is_one()) {
      os << monomial_string(t.mono);
    } else {
      os << c.to_short_string() << "*" << monomial_string(t.mono);
    }
  }
  return os.str();
}

Poly pow(const Poly& p, unsigned n) {
  Poly acc(1);
  Poly base = p;
  while (n != 0) {
    if (n & 1U) acc *= base;
    n >>= 1;
    if (n != 0) base *= base;
  }
  return acc;
}

Poly cyclotomic(unsigned n, int v) {
  if (n == 0) raise(ErrorCode::InvalidArgument, "cyclotomic index must be positive");
  std::map<unsigned, Poly> phi;
  const Poly x = Poly::variable(v);
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    Poly p = pow(x, d) - Poly(1);
    for (const auto& [e, f] : phi) {
      if (d % e == 0) p = *p.divide_exact(f);
    }
    phi.emplace(d, std::move(p));
  }
  return phi.at(n);
}

}  // namespace qconf

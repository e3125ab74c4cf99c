#include "qconf/scalars/ratfunc.hpp"

#include <algorithm>
#include <mutex>

namespace qconf {

namespace {

Monomial mono_pow(const Monomial& m, int k) {
  Monomial r;
  for (int v = 0; v < kNumVars; ++v) r.e[v] = static_cast<std::int16_t>(m.e[v] * k);
  return r;
}

const Poly& cached_cyclotomic(unsigned n, int v) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, int>, Poly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, v});
  if (it == cache.end()) it = cache.emplace(std::make_pair(n, v), cyclotomic(n, v)).first;
  return it->second;
}

// Single variable of a univariate polynomial, -1 otherwise.
int sole_variable(const Poly& p) {
  const unsigned mask = p.variable_mask();
  if (mask == 0 || (mask & (mask - 1)) != 0) return -1;
  int v = 0;
  while (!(mask & (1U << v))) ++v;
  return v;
}

// Divides n by every listed factor as often as possible (bounded by the
// multiplicity), lowering multiplicities accordingly.
void strip(Poly& n, std::vector<RatFunc::Factor>& fs) {
  for (auto& f : fs) {
    while (f.mult > 0) {
      auto quot = n.divide_exact(f.poly);
      if (!quot) break;
      n = std::move(*quot);
      --f.mult;
    }
  }
  std::erase_if(fs, [](const RatFunc::Factor& f) { return f.mult == 0; });
}

std::vector<RatFunc::Factor> merge_sum(const std::vector<RatFunc::Factor>& a, const std::vector<RatFunc::Factor>& b) {
  std::vector<RatFunc::Factor> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : (j == b.size() ? -1 : structural_compare(a[i].poly, b[j].poly));
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].poly, a[i].mult + b[j].mult});
      ++i;
      ++j;
    }
  }
  return out;
}

bool same_factors(const std::vector<RatFunc::Factor>& a, const std::vector<RatFunc::Factor>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].mult != b[i].mult || !(a[i].poly == b[i].poly)) return false;
  }
  return true;
}

}  // namespace

RatFunc RatFunc::fraction(const Poly& num, const Poly& den) {
  if (den.is_zero()) raise(ErrorCode::InvalidArgument, "zero denominator");
  RatFunc r(num);
  if (num.is_zero()) return r;
  if (auto quot = num.divide_exact(den)) return RatFunc(std::move(*quot));
  const auto pieces = r.insert_factor(den, 1);
  r.cancel_with(pieces);
  r.cancel_monomial();
  return r;
}

Poly RatFunc::denominator() const {
  Poly d = Poly::monomial(den_mono_);
  for (const auto& f : den_) d *= pow(f.poly, static_cast<unsigned>(f.mult));
  return d;
}

std::optional<Rational> RatFunc::as_rational() const {
  if (!has_trivial_denominator() || !num_.is_constant()) return std::nullopt;
  return num_.constant_value();
}

unsigned RatFunc::variable_mask() const {
  unsigned mask = num_.variable_mask() | Poly::monomial(den_mono_).variable_mask();
  for (const auto& f : den_) mask |= f.poly.variable_mask();
  return mask;
}

std::vector<Poly> RatFunc::insert_factor(Poly f, int mult) {
  if (f.is_zero()) raise(ErrorCode::InvalidArgument, "zero denominator factor");
  const Monomial m = f.monomial_content();
  if (!m.is_one()) {
    den_mono_ = den_mono_ * mono_pow(m, mult);
    f = f.div_monomial(m);
  }
  if (f.is_constant()) {
    num_ = num_.scaled(pow(Rational(1) / f.constant_value(), mult));
    return {};
  }
  const Rational lc = f.leading().coeff;
  if (!lc.is_one()) {
    num_ = num_.scaled(pow(Rational(1) / lc, mult));
    f = f.monic();
  }

  std::vector<Poly> pieces;
  const int v = sole_variable(f);
  const auto& ts = f.terms();
  if (v >= 0 && ts.size() == 2 && ts[1].mono.is_one() && abs(ts[1].coeff).is_one()) {
    const unsigned n = static_cast<unsigned>(ts[0].mono.e[v]);
    const bool minus = ts[1].coeff.sign() < 0;
    for (unsigned d = 1; d <= 2 * n; ++d) {
      const bool in = minus ? (n % d == 0) : ((2 * n) % d == 0 && n % d != 0);
      if (in) pieces.push_back(cached_cyclotomic(d, v));
    }
  } else {
    for (const auto& g : den_) {
      while (!f.is_constant()) {
        auto quot = f.divide_exact(g.poly);
        if (!quot) break;
        pieces.push_back(g.poly);
        f = std::move(*quot);
      }
    }
    bool integral = v >= 0;
    for (const auto& t : f.terms()) integral = integral && t.coeff.is_integer();
    if (integral) {
      const int deg = f.degree_in(v);
      for (int d = 1; d <= deg && !f.is_constant(); ++d) {
        const Poly& phi = cached_cyclotomic(static_cast<unsigned>(d), v);
        while (!f.is_constant()) {
          auto quot = f.divide_exact(phi);
          if (!quot) break;
          pieces.push_back(phi);
          f = std::move(*quot);
        }
      }
    }
    if (!f.is_constant()) pieces.push_back(std::move(f));
  }

  for (const Poly& p : pieces) {
    auto pos = std::lower_bound(den_.begin(), den_.end(), p,
                                [](const Factor& a, const Poly& b) { return structural_compare(a.poly, b) < 0; });
    if (pos != den_.end() && pos->poly == p) {
      pos->mult += mult;
    } else {
      den_.insert(pos, Factor{p, mult});
    }
  }
  return pieces;
}

void RatFunc::cancel_with(const std::vector<Poly>& candidates) {
  for (const Poly& c : candidates) {
    auto pos = std::find_if(den_.begin(), den_.end(), [&](const Factor& f) { return f.poly == c; });
    if (pos == den_.end()) continue;
    while (pos->mult > 0) {
      auto quot = num_.divide_exact(c);
      if (!quot) break;
      num_ = std::move(*quot);
      --pos->mult;
    }
    if (pos->mult == 0) den_.erase(pos);
  }
}

void RatFunc::cancel_monomial() {
  if (num_.is_zero()) {
    den_mono_ = {};
    den_.clear();
    return;
  }
  const Monomial g = gcd(num_.monomial_content(), den_mono_);
  if (!g.is_one()) {
    num_ = num_.div_monomial(g);
    den_mono_ = den_mono_ / g;
  }
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  RatFunc r;
  if (a.den_mono_ == b.den_mono_ && same_factors(a.den_, b.den_)) {
    r.num_ = a.num_ + b.num_;
    r.den_mono_ = a.den_mono_;
    r.den_ = a.den_;
    std::vector<Poly> all;
    for (const auto& f : r.den_) all.push_back(f.poly);
    r.cancel_with(all);
    r.cancel_monomial();
    return r;
  }
  const Monomial l = lcm(a.den_mono_, b.den_mono_);
  Poly ma = Poly::monomial(l / a.den_mono_);
  Poly mb = Poly::monomial(l / b.den_mono_);
  std::vector<Poly> common;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.den_.size() || j < b.den_.size()) {
    const int c = i == a.den_.size() ? 1
                  : (j == b.den_.size() ? -1 : structural_compare(a.den_[i].poly, b.den_[j].poly));
    if (c < 0) {
      mb *= pow(a.den_[i].poly, static_cast<unsigned>(a.den_[i].mult));
      r.den_.push_back(a.den_[i++]);
    } else if (c > 0) {
      ma *= pow(b.den_[j].poly, static_cast<unsigned>(b.den_[j].mult));
      r.den_.push_back(b.den_[j++]);
    } else {
      const int ja = a.den_[i].mult;
      const int jb = b.den_[j].mult;
      if (ja < jb) ma *= pow(a.den_[i].poly, static_cast<unsigned>(jb - ja));
      if (jb < ja) mb *= pow(a.den_[i].poly, static_cast<unsigned>(ja - jb));
      r.den_.push_back({a.den_[i].poly, std::max(ja, jb)});
      common.push_back(a.den_[i].poly);
      ++i;
      ++j;
    }
  }
  r.num_ = a.num_ * ma + b.num_ * mb;
  r.den_mono_ = l;
  r.cancel_with(common);
  r.cancel_monomial();
  return r;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (auto c = b.as_rational()) {
    RatFunc r = a;
    r.num_ = r.num_.scaled(*c);
    return r;
  }
  if (auto c = a.as_rational()) {
    RatFunc r = b;
    r.num_ = r.num_.scaled(*c);
    return r;
  }
  Poly na = a.num_;
  Poly nb = b.num_;
  auto fa = a.den_;
  auto fb = b.den_;
  strip(na, fb);
  strip(nb, fa);
  Monomial ma = a.den_mono_;
  Monomial mb = b.den_mono_;
  Monomial g = gcd(na.monomial_content(), mb);
  na = na.div_monomial(g);
  mb = mb / g;
  g = gcd(nb.monomial_content(), ma);
  nb = nb.div_monomial(g);
  ma = ma / g;
  RatFunc r;
  r.num_ = na * nb;
  r.den_mono_ = ma * mb;
  r.den_ = merge_sum(fa, fb);
  return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) raise(ErrorCode::InvalidArgument, "division by the zero rational function");
  if (auto c = b.as_rational()) {
    RatFunc r = a;
    r.num_ = r.num_.scaled(Rational(1) / *c);
    return r;
  }
  if (a.is_zero()) return {};
  RatFunc r = a;
  // Multiply by b's denominator, cancelling against a's denominator first.
  const Monomial g = gcd(r.den_mono_, b.den_mono_);
  r.den_mono_ = r.den_mono_ / g;
  Poly extra = Poly::monomial(b.den_mono_ / g);
  for (const auto& f : b.den_) {
    int k = f.mult;
    auto pos = std::find_if(r.den_.begin(), r.den_.end(), [&](const RatFunc::Factor& h) { return h.poly == f.poly; });
    if (pos != r.den_.end()) {
      const int c = std::min(k, pos->mult);
      pos->mult -= c;
      k -= c;
      if (pos->mult == 0) r.den_.erase(pos);
    }
    if (k > 0) extra *= pow(f.poly, static_cast<unsigned>(k));
  }
  if (auto quot = r.num_.divide_exact(b.num_)) {
    r.num_ = std::move(*quot);
  } else {
    const auto pieces = r.insert_factor(b.num_, 1);
    r.cancel_with(pieces);
  }
  r.num_ *= extra;
  r.cancel_monomial();
  return r;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  if (a.num_ == b.num_ && a.den_mono_ == b.den_mono_ && same_factors(a.den_, b.den_)) return true;
  return (a - b).is_zero();
}

RatFunc RatFunc::substitute(int v, const RatFunc& value) const {
  auto [n, d] = evaluate_parts<RatFunc>([&](int w) { return w == v ? value : RatFunc::variable(w); },
                                        [](const Rational& c) { return RatFunc(c); });
  if (d.is_zero()) raise(ErrorCode::NearZeroDenominator, "denominator vanishes after substituting " + var_name(v));
  return n / d;
}

std::string RatFunc::to_string() const {
  if (has_trivial_denominator()) return num_.to_string();
  std::string num = num_.to_string();
  if (num_.size() > 1) num = "(" + num + ")";
  std::vector<std::string> parts;
  if (!den_mono_.is_one()) parts.push_back(Poly::monomial(den_mono_).to_string());
  for (const auto& f : den_) {
    std::string s = "(" + f.poly.to_string() + ")";
    if (f.mult != 1) s += "^" + std::to_string(f.mult);
    parts.push_back(std::move(s));
  }
  std::string den;
  for (std::size_t k = 0; k < parts.size(); ++k) den += (k ? "*" : "") + parts[k];
  int mono_vars = 0;
  for (auto e : den_mono_.e) mono_vars += e != 0;
  if (parts.size() > 1 || mono_vars > 1) den = "(" + den + ")";
  return num + "/" + den;
}

RatFunc pow(const RatFunc& f, long n) {
  if (n < 0) return RatFunc(1) / pow(f, -n);
  RatFunc acc(1);
  RatFunc base = f;
  while (n != 0) {
    if (n & 1L) acc *= base;
    n >>= 1;
    if (n != 0) base *= base;
  }
  return acc;
}

ComplexAP ratfunc_eval(const RatFunc& f, const std::map<int, ComplexAP>& assignment, long bits) {
  const unsigned mask = f.variable_mask();
  for (int v = 0; v < kNumVars; ++v) {
    if ((mask & (1U << v)) && !assignment.count(v)) {
      raise(ErrorCode::MissingVariable, "no value assigned to " + var_name(v));
    }
  }
  auto [n, d] = f.evaluate_parts<ComplexAP>([&](int v) { return assignment.at(v).with_bits(bits); },
                                            [bits](const Rational& c) { return ComplexAP(c, bits); });
  if (d.is_zero() || abs(d) < BigFloat::exp2i(-bits / 2, 64)) {
    raise(ErrorCode::NearZeroDenominator, "denominator " + d.to_string(12) + " is below 2^(-bits/2)");
  }
  return n / d;
}

Rational ratfunc_eval(const RatFunc& f, const std::map<int, Rational>& assignment) {
  const unsigned mask = f.variable_mask();
  for (int v = 0; v < kNumVars; ++v) {
    if ((mask & (1U << v)) && !assignment.count(v)) {
      raise(ErrorCode::MissingVariable, "no value assigned to " + var_name(v));
    }
  }
  auto [n, d] = f.evaluate_parts<Rational>([&](int v) { return assignment.at(v); },
                                           [](const Rational& c) { return c; });
  if (d.is_zero()) raise(ErrorCode::NearZeroDenominator, "exact pole");
  return n / d;
}

}  // namespace qconf

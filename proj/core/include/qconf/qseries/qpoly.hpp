#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qconf/qseries/trunc_series.hpp"

namespace qconf {

// Dense polynomial sum_m c_m Q^m; trailing zero coefficients are dropped.
template <ScalarField S>
class QPoly {
 public:
  using Context = typename field_traits<S>::context;

  QPoly() = default;
  explicit QPoly(std::vector<S> c, Context ctx = {}) : ctx_(ctx), c_(std::move(c)) {
    if (!c_.empty()) ctx_ = field_traits<S>::context_of(c_[0]);
    trim();
  }
  static QPoly constant(const S& c) { return QPoly(std::vector<S>{c}); }
  // c Q^m.
  static QPoly monomial(const S& c, int m) {
    std::vector<S> v(static_cast<std::size_t>(m + 1), zero_of<S>(field_traits<S>::context_of(c)));
    v.back() = c;
    return QPoly(std::move(v));
  }

  Context context() const noexcept { return ctx_; }
  const std::vector<S>& coefficients() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  S coeff(int m) const {
    if (m < 0 || m > degree()) return zero_of<S>(ctx_);
    return c_[static_cast<std::size_t>(m)];
  }
  int valuation() const {
    for (std::size_t m = 0; m < c_.size(); ++m) {
      if (!field_traits<S>::is_zero(c_[m])) return static_cast<int>(m);
    }
    return 0;
  }

  template <class T>
  T eval(const T& Q, const T& zero) const {
    T acc = zero;
    for (std::size_t m = c_.size(); m-- > 0;) acc = acc * Q + T(c_[m]);
    return acc;
  }
  S eval(const S& Q) const {
    S acc = zero_of<S>(ctx_);
    for (std::size_t m = c_.size(); m-- > 0;) acc = acc * Q + c_[m];
    return acc;
  }

  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    std::vector<S> c;
    for (std::size_t m = 0; m < n; ++m) c.push_back(a.coeff(static_cast<int>(m)) + b.coeff(static_cast<int>(m)));
    return QPoly(std::move(c), a.ctx_);
  }
  friend QPoly operator-(const QPoly& a) {
    std::vector<S> c;
    for (const auto& x : a.c_) c.push_back(-x);
    return QPoly(std::move(c), a.ctx_);
  }
  friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }
  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly({}, a.ctx_);
    std::vector<S> c(a.c_.size() + b.c_.size() - 1, zero_of<S>(a.ctx_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return QPoly(std::move(c), a.ctx_);
  }
  friend QPoly operator*(const S& s, const QPoly& a) {
    std::vector<S> c;
    for (const auto& x : a.c_) c.push_back(s * x);
    return QPoly(std::move(c), a.ctx_);
  }
  friend bool operator==(const QPoly& a, const QPoly& b) {
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t m = 0; m < n; ++m) {
      if (!(a.coeff(static_cast<int>(m)) == b.coeff(static_cast<int>(m)))) return false;
    }
    return true;
  }

  // a(cQ).
  QPoly scaled_argument(const S& c) const {
    std::vector<S> out;
    S p = one_of<S>(ctx_);
    for (const auto& x : c_) {
      out.push_back(x * p);
      p = p * c;
    }
    return QPoly(std::move(out), ctx_);
  }

  // a(Q) * f(Q) as a truncated series; exact polynomial factors add their
  // valuation to the known order.
  TruncSeries<S> times(const TruncSeries<S>& f) const {
    if (is_zero()) return TruncSeries<S>::zero(f.order() + 1, f.context());
    TruncSeries<S> acc = TruncSeries<S>::zero(f.order() + valuation(), f.context());
    for (int m = 0; m <= degree(); ++m) {
      if (field_traits<S>::is_zero(c_[static_cast<std::size_t>(m)])) continue;
      acc = acc + c_[static_cast<std::size_t>(m)] * mul_Q_power(f, m);
    }
    return acc;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t m = 0; m < c_.size(); ++m) {
      if (field_traits<S>::is_zero(c_[m])) continue;
      if (!out.empty()) out += " + ";
      out += "(" + field_traits<S>::to_string(c_[m]) + ")";
      if (m > 0) out += "*Q^" + std::to_string(m);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void trim() {
    while (!c_.empty() && field_traits<S>::is_zero(c_.back())) c_.pop_back();
  }

  Context ctx_{};
  std::vector<S> c_;
};

}  // namespace qconf

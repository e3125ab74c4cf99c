#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qconf/error.hpp"
#include "qconf/scalars/field.hpp"

namespace qconf {

// Truncated Laurent series sum_{d=low}^{high} c_d Q^d + O(Q^{order+1}).
// Coefficients above `order` are unknown, never zero.
template <ScalarField S>
class TruncSeries {
 public:
  using Context = typename field_traits<S>::context;

  TruncSeries() = default;
  TruncSeries(Context ctx, int low, std::vector<S> coeffs, int order)
      : ctx_(ctx), low_(low), coeffs_(std::move(coeffs)), order_(order) {
    if (high_degree() > order_) {
      raise(ErrorCode::InvalidArgument, "stored coefficients exceed the truncation order");
    }
  }

  static TruncSeries zero(int order, Context ctx = {}) { return TruncSeries(ctx, 0, {}, order); }
  static TruncSeries constant(const S& c, int order) {
    return monomial(c, 0, order);
  }
  static TruncSeries monomial(const S& c, int degree, int order) {
    if (degree > order) return zero(order, field_traits<S>::context_of(c));
    return TruncSeries(field_traits<S>::context_of(c), degree, {c}, order);
  }

  Context context() const noexcept { return ctx_; }
  int low_degree() const noexcept { return low_; }
  int high_degree() const noexcept { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  int order() const noexcept { return order_; }
  const std::vector<S>& coefficients() const noexcept { return coeffs_; }

  // Coefficient of Q^d; zero outside the stored range, error above the order.
  S coeff(int d) const {
    if (d > order_) raise(ErrorCode::InvalidArgument, "coefficient beyond the truncation order is unknown");
    if (d < low_ || d > high_degree()) return zero_of<S>(ctx_);
    return coeffs_[static_cast<std::size_t>(d - low_)];
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const S& c) { return field_traits<S>::is_zero(c); });
  }

  // Lowest degree with an exactly nonzero coefficient; order + 1 when zero.
  int valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (!field_traits<S>::is_zero(coeffs_[k])) return low_ + static_cast<int>(k);
    }
    return order_ + 1;
  }

  // Drops exact zeros at both ends of the stored range.
  TruncSeries trimmed() const {
    std::size_t b = 0;
    std::size_t e = coeffs_.size();
    while (b < e && field_traits<S>::is_zero(coeffs_[b])) ++b;
    while (e > b && field_traits<S>::is_zero(coeffs_[e - 1])) --e;
    if (b == e) return zero(order_, ctx_);
    return TruncSeries(ctx_, low_ + static_cast<int>(b),
                       std::vector<S>(coeffs_.begin() + static_cast<long>(b), coeffs_.begin() + static_cast<long>(e)),
                       order_);
  }

  // Forget everything above degree d (d may not exceed the current order).
  TruncSeries truncated(int d) const {
    if (d > order_) raise(ErrorCode::InvalidArgument, "cannot raise the truncation order");
    std::vector<S> c;
    for (int k = low_; k <= std::min(d, high_degree()); ++k) c.push_back(coeffs_[static_cast<std::size_t>(k - low_)]);
    return TruncSeries(ctx_, low_, std::move(c), d);
  }

  // Coefficientwise map c_d -> f(d, c_d).
  template <class F>
  TruncSeries map_coefficients(F&& f) const {
    std::vector<S> c;
    c.reserve(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) c.push_back(f(low_ + static_cast<int>(k), coeffs_[k]));
    return TruncSeries(ctx_, low_, std::move(c), order_);
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    require_same_field<S>(a.ctx_, b.ctx_);
    const int order = std::min(a.order_, b.order_);
    if (a.coeffs_.empty()) return b.truncated(order);
    if (b.coeffs_.empty()) return a.truncated(order);
    const int low = std::min(a.low_, b.low_);
    const int high = std::min(order, std::max(a.high_degree(), b.high_degree()));
    std::vector<S> c;
    for (int d = low; d <= high; ++d) {
      const bool ia = d >= a.low_ && d <= a.high_degree();
      const bool ib = d >= b.low_ && d <= b.high_degree();
      if (ia && ib) {
        c.push_back(a.coeffs_[static_cast<std::size_t>(d - a.low_)] + b.coeffs_[static_cast<std::size_t>(d - b.low_)]);
      } else if (ia) {
        c.push_back(a.coeffs_[static_cast<std::size_t>(d - a.low_)]);
      } else if (ib) {
        c.push_back(b.coeffs_[static_cast<std::size_t>(d - b.low_)]);
      } else {
        c.push_back(zero_of<S>(a.ctx_));
      }
    }
    return TruncSeries(a.ctx_, low, std::move(c), order);
  }

  friend TruncSeries operator-(const TruncSeries& a) {
    return a.map_coefficients([](int, const S& x) { return -x; });
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    require_same_field<S>(a.ctx_, b.ctx_);
    const TruncSeries x = a.trimmed();
    const TruncSeries y = b.trimmed();
    const int vx = x.coeffs_.empty() ? x.order_ + 1 : x.low_;
    const int vy = y.coeffs_.empty() ? y.order_ + 1 : y.low_;
    const int order = std::min(x.order_ + vy, y.order_ + vx);
    if (x.coeffs_.empty() || y.coeffs_.empty()) return zero(order, a.ctx_);
    const int low = x.low_ + y.low_;
    const int high = std::min(order, x.high_degree() + y.high_degree());
    if (high < low) return zero(order, a.ctx_);
    std::vector<S> c(static_cast<std::size_t>(high - low + 1), zero_of<S>(a.ctx_));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
      if (field_traits<S>::is_zero(x.coeffs_[i])) continue;
      for (std::size_t j = 0; j < y.coeffs_.size() && static_cast<int>(i + j) <= high - low; ++j) {
        if (field_traits<S>::is_zero(y.coeffs_[j])) continue;
        c[i + j] = c[i + j] + x.coeffs_[i] * y.coeffs_[j];
      }
    }
    return TruncSeries(a.ctx_, low, std::move(c), order);
  }

  friend TruncSeries operator*(const S& s, const TruncSeries& a) {
    return a.map_coefficients([&](int, const S& x) { return s * x; });
  }
  friend TruncSeries operator*(const TruncSeries& a, const S& s) { return s * a; }

  TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
  TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

  // Same order and same coefficients (missing ones count as zero).
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    if (a.order_ != b.order_) return false;
    const int low = std::min(a.low_, b.low_);
    const int high = std::max(a.high_degree(), b.high_degree());
    for (int d = low; d <= high; ++d) {
      if (!(a.coeff(d) == b.coeff(d))) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool any = false;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (field_traits<S>::is_zero(coeffs_[k])) continue;
      if (any) os << " + ";
      os << "(" << field_traits<S>::to_string(coeffs_[k]) << ")*Q^" << (low_ + static_cast<int>(k));
      any = true;
    }
    if (any) os << " + ";
    os << "O(Q^" << order_ + 1 << ")";
    return os.str();
  }

 private:
  Context ctx_{};
  int low_ = 0;
  std::vector<S> coeffs_;
  int order_ = 0;
};

template <ScalarField S>
TruncSeries<S> series_add(const TruncSeries<S>& a, const TruncSeries<S>& b) {
  return a + b;
}

template <ScalarField S>
TruncSeries<S> series_mul(const TruncSeries<S>& a, const TruncSeries<S>& b) {
  return a * b;
}

// b with a*b = 1; known to order D - 2v where v is the valuation of a.
template <ScalarField S>
TruncSeries<S> series_invert(const TruncSeries<S>& a) {
  const TruncSeries<S> x = a.trimmed();
  if (x.coefficients().empty() || field_traits<S>::is_negligible(x.coefficients().front())) {
    raise(ErrorCode::NonUnitLeadingCoefficient, "lowest coefficient is not invertible");
  }
  const int v = x.low_degree();
  const int order = a.order() - 2 * v;
  const int n = order + v;  // number of coefficients is n + 1
  const auto& c = x.coefficients();
  const S inv0 = one_of<S>(a.context()) / c.front();
  std::vector<S> b;
  b.reserve(static_cast<std::size_t>(std::max(n + 1, 0)));
  for (int k = 0; k <= n; ++k) {
    if (k == 0) {
      b.push_back(inv0);
      continue;
    }
    S acc = zero_of<S>(a.context());
    for (int j = 1; j <= k && j < static_cast<int>(c.size()); ++j) {
      if (field_traits<S>::is_zero(c[static_cast<std::size_t>(j)])) continue;
      acc = acc + c[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
    }
    b.push_back(-(acc * inv0));
  }
  return TruncSeries<S>(a.context(), -v, std::move(b), order);
}

// f(Q) -> f(qQ).
template <ScalarField S>
TruncSeries<S> sigma_shift(const TruncSeries<S>& a, const S& q) {
  return a.map_coefficients([&](int d, const S& c) { return d == 0 ? c : c * scalar_pow(q, d); });
}

// (q^d - 1)/(q - 1) as a finite geometric sum, so that no division occurs.
template <ScalarField S>
S q_number(int d, const S& q) {
  const auto ctx = field_traits<S>::context_of(q);
  S acc = zero_of<S>(ctx);
  if (d > 0) {
    S p = one_of<S>(ctx);
    for (int k = 0; k < d; ++k) {
      acc = acc + p;
      p = p * q;
    }
  } else if (d < 0) {
    const S qi = one_of<S>(ctx) / q;
    S p = qi;
    for (int k = 0; k < -d; ++k) {
      acc = acc - p;
      p = p * qi;
    }
  }
  return acc;
}

template <ScalarField S>
void require_q_not_one(const S& q) {
  if (field_traits<S>::is_negligible(q - one_of<S>(field_traits<S>::context_of(q)))) {
    raise(ErrorCode::QEqualsOne, "delta_q needs q != 1");
  }
}

// (sigma - Id)/(q - 1).
template <ScalarField S>
TruncSeries<S> delta_q(const TruncSeries<S>& a, const S& q) {
  require_q_not_one(q);
  return a.map_coefficients([&](int d, const S& c) { return c * q_number(d, q); });
}

// f(Q) -> f(cQ).
template <ScalarField S>
TruncSeries<S> scale_Q(const TruncSeries<S>& a, const S& c) {
  return a.map_coefficients([&](int d, const S& x) { return d == 0 ? x : x * scalar_pow(c, d); });
}

// Q^k f(Q); the truncation order moves with the shift.
template <ScalarField S>
TruncSeries<S> mul_Q_power(const TruncSeries<S>& a, int k) {
  return TruncSeries<S>(a.context(), a.low_degree() + k, a.coefficients(), a.order() + k);
}

// Q d/dQ.
template <ScalarField S>
TruncSeries<S> theta_derivative(const TruncSeries<S>& a) {
  return a.map_coefficients([&](int d, const S& c) { return c * field_traits<S>::from_rational(Rational(d), a.context()); });
}

}  // namespace qconf

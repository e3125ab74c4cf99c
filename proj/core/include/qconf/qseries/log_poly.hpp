#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qconf/qseries/trunc_series.hpp"

namespace qconf {

// sum_a L^a S_a(Q) with L a formal q-logarithm symbol.  The only way L moves
// is through logpoly_sigma (L -> L + 1).
template <ScalarField S>
class LogPoly {
 public:
  using Series = TruncSeries<S>;

  LogPoly() = default;
  explicit LogPoly(std::vector<Series> parts, std::optional<int> max_log_degree = std::nullopt)
      : parts_(std::move(parts)), max_log_degree_(max_log_degree) {
    if (parts_.empty()) raise(ErrorCode::InvalidArgument, "LogPoly needs at least one part");
    if (max_log_degree_ && degree() > *max_log_degree_) {
      raise(ErrorCode::InvalidArgument, "L-degree exceeds the declared maximum");
    }
  }
  static LogPoly from_series(const Series& s) { return LogPoly({s}); }
  // L^a * s.
  static LogPoly log_power(int a, const Series& s) {
    std::vector<Series> parts(static_cast<std::size_t>(a + 1), Series::zero(s.order(), s.context()));
    parts.back() = s;
    return LogPoly(std::move(parts));
  }

  const std::vector<Series>& parts() const noexcept { return parts_; }
  std::optional<int> max_log_degree() const noexcept { return max_log_degree_; }
  LogPoly with_max_log_degree(std::optional<int> m) const { return LogPoly(parts_, m); }

  // Highest a with S_a not identically zero (0 for the zero LogPoly).
  int degree() const {
    for (int a = static_cast<int>(parts_.size()) - 1; a > 0; --a) {
      if (!parts_[static_cast<std::size_t>(a)].is_zero()) return a;
    }
    return 0;
  }
  int stored_degree() const noexcept { return static_cast<int>(parts_.size()) - 1; }
  const Series& part(int a) const { return parts_.at(static_cast<std::size_t>(a)); }
  Series part_or_zero(int a) const {
    if (a < static_cast<int>(parts_.size())) return parts_[static_cast<std::size_t>(a)];
    return Series::zero(order(), parts_.front().context());
  }
  int order() const {
    int o = parts_.front().order();
    for (const auto& p : parts_) o = std::min(o, p.order());
    return o;
  }
  typename Series::Context context() const { return parts_.front().context(); }
  bool is_zero() const {
    return std::all_of(parts_.begin(), parts_.end(), [](const Series& s) { return s.is_zero(); });
  }

  // Value of the series after substituting L = value.
  Series at_log_value(const S& value) const {
    Series acc = Series::zero(order(), context());
    S p = one_of<S>(context());
    for (const auto& s : parts_) {
      acc = acc + p * s;
      p = p * value;
    }
    return acc;
  }

  template <class F>
  LogPoly map_parts(F&& f) const {
    std::vector<Series> out;
    out.reserve(parts_.size());
    for (const auto& s : parts_) out.push_back(f(s));
    return LogPoly(std::move(out), max_log_degree_);
  }

  friend LogPoly operator+(const LogPoly& a, const LogPoly& b) {
    const std::size_t n = std::max(a.parts_.size(), b.parts_.size());
    std::vector<Series> out;
    for (std::size_t k = 0; k < n; ++k) {
      out.push_back(a.part_or_zero(static_cast<int>(k)) + b.part_or_zero(static_cast<int>(k)));
    }
    return LogPoly(std::move(out), merge_max(a.max_log_degree_, b.max_log_degree_));
  }
  friend LogPoly operator-(const LogPoly& a) {
    return a.map_parts([](const Series& s) { return -s; });
  }
  friend LogPoly operator-(const LogPoly& a, const LogPoly& b) { return a + (-b); }

  friend LogPoly operator*(const LogPoly& a, const LogPoly& b) {
    const std::size_t n = a.parts_.size() + b.parts_.size() - 1;
    std::vector<std::optional<Series>> acc(n);
    for (std::size_t i = 0; i < a.parts_.size(); ++i) {
      for (std::size_t j = 0; j < b.parts_.size(); ++j) {
        Series p = a.parts_[i] * b.parts_[j];
        acc[i + j] = acc[i + j] ? *acc[i + j] + p : p;
      }
    }
    std::vector<Series> out;
    for (auto& s : acc) out.push_back(std::move(*s));
    std::optional<int> m;
    if (a.max_log_degree_ && b.max_log_degree_) m = *a.max_log_degree_ + *b.max_log_degree_;
    return LogPoly(std::move(out), m);
  }
  friend LogPoly operator*(const Series& s, const LogPoly& a) {
    return a.map_parts([&](const Series& x) { return s * x; });
  }
  friend LogPoly operator*(const S& c, const LogPoly& a) {
    return a.map_parts([&](const Series& x) { return c * x; });
  }

  friend bool operator==(const LogPoly& a, const LogPoly& b) {
    const std::size_t n = std::max(a.parts_.size(), b.parts_.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (!(a.part_or_zero(static_cast<int>(k)) == b.part_or_zero(static_cast<int>(k)))) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t a = 0; a < parts_.size(); ++a) {
      if (a) out += " + ";
      out += "L^" + std::to_string(a) + "*[" + parts_[a].to_string() + "]";
    }
    return out;
  }

 private:
  static std::optional<int> merge_max(std::optional<int> a, std::optional<int> b) {
    if (a && b) return std::max(*a, *b);
    return std::nullopt;
  }

  std::vector<Series> parts_;
  std::optional<int> max_log_degree_;
};

// L -> L + 1 (binomial re-expansion) and Q -> qQ on every coefficient.
template <ScalarField S>
LogPoly<S> logpoly_sigma(const LogPoly<S>& a, const S& q) {
  using Series = TruncSeries<S>;
  const int n = a.stored_degree();
  std::vector<Series> shifted;
  for (int k = 0; k <= n; ++k) shifted.push_back(sigma_shift(a.part(k), q));
  std::vector<Series> out;
  for (int b = 0; b <= n; ++b) {
    Series acc = shifted[static_cast<std::size_t>(b)];
    for (int k = b + 1; k <= n; ++k) {
      acc = acc + field_traits<S>::from_rational(binomial(k, b), a.context()) * shifted[static_cast<std::size_t>(k)];
    }
    out.push_back(std::move(acc));
  }
  return LogPoly<S>(std::move(out), a.max_log_degree());
}

// (logpoly_sigma(a) - a)/(q - 1).
template <ScalarField S>
LogPoly<S> logpoly_delta(const LogPoly<S>& a, const S& q) {
  require_q_not_one(q);
  const S inv = one_of<S>(field_traits<S>::context_of(q)) / (q - one_of<S>(field_traits<S>::context_of(q)));
  // The shift part of each coefficient is done through delta_q so the (q-1)
  // division stays exact on the pure-Q component.
  using Series = TruncSeries<S>;
  const int n = a.stored_degree();
  std::vector<Series> shifted;
  for (int k = 0; k <= n; ++k) shifted.push_back(sigma_shift(a.part(k), q));
  std::vector<Series> out;
  for (int b = 0; b <= n; ++b) {
    Series acc = delta_q(a.part(b), q);
    Series extra = Series::zero(a.order(), a.context());
    for (int k = b + 1; k <= n; ++k) {
      extra = extra + field_traits<S>::from_rational(binomial(k, b), a.context()) * shifted[static_cast<std::size_t>(k)];
    }
    out.push_back(acc + inv * extra);
  }
  return LogPoly<S>(std::move(out), a.max_log_degree());
}

}  // namespace qconf

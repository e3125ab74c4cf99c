#pragma once

#include <string>
#include <vector>

#include "qconf/error.hpp"
#include "qconf/scalars.hpp"

namespace qconf {

// sum_k c_k x^k modulo x^{N+1}; x is pi = 1 - P^{-1} for K-theory and H for
// cohomology.
template <ScalarField S, class Tag>
class NilpotentClass {
 public:
  using Context = typename field_traits<S>::context;

  NilpotentClass(int N, std::vector<S> coeffs) : N_(N), c_(std::move(coeffs)) {
    if (N_ < 0 || static_cast<int>(c_.size()) != N_ + 1) {
      raise(ErrorCode::InvalidArgument, "class needs exactly N+1 coefficients");
    }
  }
  static NilpotentClass unit(int N, Context ctx = {}) {
    std::vector<S> c(static_cast<std::size_t>(N + 1), zero_of<S>(ctx));
    c[0] = one_of<S>(ctx);
    return NilpotentClass(N, std::move(c));
  }
  // x^k (zero when k > N).
  static NilpotentClass generator_power(int N, int k, Context ctx = {}) {
    std::vector<S> c(static_cast<std::size_t>(N + 1), zero_of<S>(ctx));
    if (k <= N) c[static_cast<std::size_t>(k)] = one_of<S>(ctx);
    return NilpotentClass(N, std::move(c));
  }

  int N() const noexcept { return N_; }
  const std::vector<S>& coefficients() const noexcept { return c_; }
  const S& coefficient(int k) const { return c_.at(static_cast<std::size_t>(k)); }

  friend NilpotentClass operator+(const NilpotentClass& a, const NilpotentClass& b) {
    a.check(b);
    std::vector<S> c;
    for (int k = 0; k <= a.N_; ++k) c.push_back(a.c_[k] + b.c_[k]);
    return NilpotentClass(a.N_, std::move(c));
  }
  friend NilpotentClass operator-(const NilpotentClass& a, const NilpotentClass& b) {
    a.check(b);
    std::vector<S> c;
    for (int k = 0; k <= a.N_; ++k) c.push_back(a.c_[k] - b.c_[k]);
    return NilpotentClass(a.N_, std::move(c));
  }
  friend NilpotentClass operator*(const NilpotentClass& a, const NilpotentClass& b) {
    a.check(b);
    const auto ctx = field_traits<S>::context_of(a.c_[0]);
    std::vector<S> c(static_cast<std::size_t>(a.N_ + 1), zero_of<S>(ctx));
    for (int i = 0; i <= a.N_; ++i) {
      for (int j = 0; i + j <= a.N_; ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return NilpotentClass(a.N_, std::move(c));
  }
  friend NilpotentClass operator*(const S& s, const NilpotentClass& a) {
    std::vector<S> c;
    for (const auto& x : a.c_) c.push_back(s * x);
    return NilpotentClass(a.N_, std::move(c));
  }
  friend bool operator==(const NilpotentClass& a, const NilpotentClass& b) { return a.N_ == b.N_ && a.c_ == b.c_; }

 private:
  void check(const NilpotentClass& o) const {
    if (N_ != o.N_) raise(ErrorCode::InvalidArgument, "classes over different projective spaces");
  }

  int N_;
  std::vector<S> c_;
};

// Values at the N+1 torus fixed points; the product is componentwise.
template <ScalarField S, class Tag>
class FixedPointClass {
 public:
  using Context = typename field_traits<S>::context;

  FixedPointClass(int N, std::vector<S> values) : N_(N), v_(std::move(values)) {
    if (N_ < 0 || static_cast<int>(v_.size()) != N_ + 1) {
      raise(ErrorCode::InvalidArgument, "class needs exactly N+1 fixed-point values");
    }
  }
  static FixedPointClass unit(int N, Context ctx = {}) {
    return FixedPointClass(N, std::vector<S>(static_cast<std::size_t>(N + 1), one_of<S>(ctx)));
  }
  // The idempotent of fixed point i.
  static FixedPointClass indicator(int N, int i, Context ctx = {}) {
    std::vector<S> v(static_cast<std::size_t>(N + 1), zero_of<S>(ctx));
    v.at(static_cast<std::size_t>(i)) = one_of<S>(ctx);
    return FixedPointClass(N, std::move(v));
  }

  int N() const noexcept { return N_; }
  const std::vector<S>& values() const noexcept { return v_; }
  const S& value(int i) const { return v_.at(static_cast<std::size_t>(i)); }

  friend FixedPointClass operator+(const FixedPointClass& a, const FixedPointClass& b) {
    return a.zip(b, [](const S& x, const S& y) { return x + y; });
  }
  friend FixedPointClass operator-(const FixedPointClass& a, const FixedPointClass& b) {
    return a.zip(b, [](const S& x, const S& y) { return x - y; });
  }
  friend FixedPointClass operator*(const FixedPointClass& a, const FixedPointClass& b) {
    return a.zip(b, [](const S& x, const S& y) { return x * y; });
  }
  friend FixedPointClass operator*(const S& s, const FixedPointClass& a) {
    std::vector<S> v;
    for (const auto& x : a.v_) v.push_back(s * x);
    return FixedPointClass(a.N_, std::move(v));
  }
  friend bool operator==(const FixedPointClass& a, const FixedPointClass& b) { return a.N_ == b.N_ && a.v_ == b.v_; }

 private:
  template <class F>
  FixedPointClass zip(const FixedPointClass& o, F&& f) const {
    if (N_ != o.N_) raise(ErrorCode::InvalidArgument, "classes over different projective spaces");
    std::vector<S> v;
    for (int i = 0; i <= N_; ++i) v.push_back(f(v_[i], o.v_[i]));
    return FixedPointClass(N_, std::move(v));
  }

  int N_;
  std::vector<S> v_;
};

struct KTag {};
struct CohTag {};

template <ScalarField S>
using KClassNonEq = NilpotentClass<S, KTag>;
template <ScalarField S>
using CohClassNonEq = NilpotentClass<S, CohTag>;
template <ScalarField S>
using KClassEq = FixedPointClass<S, KTag>;
template <ScalarField S>
using CohClassEq = FixedPointClass<S, CohTag>;

template <ScalarField S>
void require_distinct(const std::vector<S>& params, const char* what) {
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (std::size_t j = i + 1; j < params.size(); ++j) {
      if (field_traits<S>::is_negligible(params[i] - params[j])) {
        raise(ErrorCode::CoincidingEquivariantParameters,
              std::string(what) + " " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
}

// Coefficients m_0..m_N with x = sum_k m_k P^{-k}, by Lagrange interpolation
// through the nodes P^{-1} = Lambda_i^{-1}:
//   eta_i = prod_{j != i} (1 - Lambda_j P^{-1}) / (1 - Lambda_j Lambda_i^{-1}).
template <ScalarField S>
std::vector<S> eta_to_monomial(const KClassEq<S>& x, const std::vector<S>& Lambda) {
  const int N = x.N();
  if (static_cast<int>(Lambda.size()) != N + 1) raise(ErrorCode::InvalidArgument, "need N+1 equivariant parameters");
  require_distinct(Lambda, "equivariant parameters");
  const auto ctx = field_traits<S>::context_of(Lambda[0]);
  const S one = one_of<S>(ctx);
  std::vector<S> m(static_cast<std::size_t>(N + 1), zero_of<S>(ctx));
  for (int i = 0; i <= N; ++i) {
    if (field_traits<S>::is_zero(x.value(i))) continue;
    // prod_{j != i} (1 - Lambda_j X) as coefficients in X = P^{-1}.
    std::vector<S> p{one};
    S denom = one;
    for (int j = 0; j <= N; ++j) {
      if (j == i) continue;
      std::vector<S> next(p.size() + 1, zero_of<S>(ctx));
      for (std::size_t k = 0; k < p.size(); ++k) {
        next[k] = next[k] + p[k];
        next[k + 1] = next[k + 1] - Lambda[j] * p[k];
      }
      p = std::move(next);
      denom = denom * (one - Lambda[j] / Lambda[i]);
    }
    const S scale = x.value(i) / denom;
    for (int k = 0; k <= N; ++k) m[k] = m[k] + scale * p[k];
  }
  return m;
}

// Fixed-point values of sum_k m_k P^{-k}: v_i = sum_k m_k Lambda_i^{-k}.
template <ScalarField S>
KClassEq<S> monomial_to_eta(const std::vector<S>& m, const std::vector<S>& Lambda) {
  const int N = static_cast<int>(m.size()) - 1;
  if (static_cast<int>(Lambda.size()) != N + 1) raise(ErrorCode::InvalidArgument, "need N+1 equivariant parameters");
  const auto ctx = field_traits<S>::context_of(Lambda[0]);
  std::vector<S> v;
  for (int i = 0; i <= N; ++i) {
    const S inv = one_of<S>(ctx) / Lambda[i];
    S acc = zero_of<S>(ctx);
    S p = one_of<S>(ctx);
    for (int k = 0; k <= N; ++k) {
      acc = acc + m[k] * p;
      p = p * inv;
    }
    v.push_back(acc);
  }
  return KClassEq<S>(N, std::move(v));
}

// pi^k -> H^k.
template <ScalarField S>
CohClassNonEq<S> gamma_noneq(const KClassNonEq<S>& x) {
  return CohClassNonEq<S>(x.N(), x.coefficients());
}

template <ScalarField S>
KClassNonEq<S> gamma_noneq_inverse(const CohClassNonEq<S>& x) {
  return KClassNonEq<S>(x.N(), x.coefficients());
}

// Carries the value at P = Lambda_i to the value at H = lambda_i, so the
// K-theoretic idempotent of fixed point i goes to the cohomological one.
template <ScalarField S>
CohClassEq<S> gamma_eq(const KClassEq<S>& x, const std::vector<S>& lambda) {
  if (static_cast<int>(lambda.size()) != x.N() + 1) raise(ErrorCode::InvalidArgument, "need N+1 equivariant parameters");
  require_distinct(lambda, "equivariant parameters");
  return CohClassEq<S>(x.N(), x.values());
}

template <ScalarField S>
KClassEq<S> gamma_eq_inverse(const CohClassEq<S>& x, const std::vector<S>& lambda) {
  if (static_cast<int>(lambda.size()) != x.N() + 1) raise(ErrorCode::InvalidArgument, "need N+1 equivariant parameters");
  require_distinct(lambda, "equivariant parameters");
  return KClassEq<S>(x.N(), x.values());
}

// Coefficients of a cohomology class in H^0..H^N from its values at
// H = lambda_i (Lagrange interpolation).
template <ScalarField S>
std::vector<S> coh_eq_to_monomial(const CohClassEq<S>& x, const std::vector<S>& lambda) {
  const int N = x.N();
  if (static_cast<int>(lambda.size()) != N + 1) raise(ErrorCode::InvalidArgument, "need N+1 equivariant parameters");
  require_distinct(lambda, "equivariant parameters");
  const auto ctx = field_traits<S>::context_of(lambda[0]);
  std::vector<S> m(static_cast<std::size_t>(N + 1), zero_of<S>(ctx));
  for (int i = 0; i <= N; ++i) {
    std::vector<S> p{one_of<S>(ctx)};
    S denom = one_of<S>(ctx);
    for (int j = 0; j <= N; ++j) {
      if (j == i) continue;
      std::vector<S> next(p.size() + 1, zero_of<S>(ctx));
      for (std::size_t k = 0; k < p.size(); ++k) {
        next[k + 1] = next[k + 1] + p[k];
        next[k] = next[k] - lambda[j] * p[k];
      }
      p = std::move(next);
      denom = denom * (lambda[i] - lambda[j]);
    }
    const S scale = x.value(i) / denom;
    for (int k = 0; k <= N; ++k) m[k] = m[k] + scale * p[k];
  }
  return m;
}

// Symbolic parameters Lambda_0..Lambda_N.
std::vector<RatFunc> symbolic_Lambdas(int N);
std::vector<RatFunc> symbolic_lambdas(int N);

// Non-equivariant limit Lambda_i -> 1 of a class with symbolic parameters.
// DegenerateBasis when a monomial-basis coefficient has no limit.
KClassNonEq<RatFunc> noneq_limit(const KClassEq<RatFunc>& x);

}  // namespace qconf

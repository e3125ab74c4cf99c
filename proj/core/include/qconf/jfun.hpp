#pragma once

#include <string>
#include <vector>

#include "qconf/qseries.hpp"
#include "qconf/rings.hpp"
#include "qconf/specfun.hpp"

namespace qconf {

// f(Q) times a q-character whose q-shift multiplies by sigma_factor.  The
// character itself is never expanded.
template <ScalarField S>
struct QCharColumn {
  S sigma_factor;
  TruncSeries<S> series;
};

// Q^exponent f(Q); Q d/dQ acts on the prefactor by adding the exponent.
template <ScalarField S>
struct PowerColumn {
  S exponent;
  TruncSeries<S> series;
};

template <ScalarField S>
struct JSeriesEq {
  int N = 0;
  S q;
  std::vector<S> Lambda;
  std::vector<QCharColumn<S>> columns;  // fixed point i
};

template <ScalarField S>
struct JCohEq {
  int N = 0;
  S z;
  std::vector<S> lambda;
  std::vector<PowerColumn<S>> columns;
};

// components[i] is the coefficient of pi^i; the log symbol is L = ell_q(Q).
template <ScalarField S>
struct JSeriesNonEq {
  int N = 0;
  S q;
  std::vector<LogPoly<S>> components;
};

// components[i] is the coefficient of H^i; the log symbol is log Q.
template <ScalarField S>
struct JCohNonEq {
  int N = 0;
  S z;
  std::vector<LogPoly<S>> components;
};

// Row l, column i: delta_q^l of the pulled-back column i.
template <ScalarField S>
struct FundamentalEq {
  int N = 0;
  S q;
  S z;
  S scale;  // ((1-q)/z)^(N+1)
  std::vector<S> sigma_factors;
  std::vector<std::vector<TruncSeries<S>>> entries;
};

template <ScalarField S>
struct FundamentalNonEq {
  int N = 0;
  S q;
  S z;
  S scale;
  std::vector<std::vector<LogPoly<S>>> entries;
};

template <ScalarField S>
QCharColumn<S> char_sigma(const QCharColumn<S>& c, const S& q) {
  return {c.sigma_factor, c.sigma_factor * sigma_shift(c.series, q)};
}

template <ScalarField S>
QCharColumn<S> char_delta(const QCharColumn<S>& c, const S& q) {
  require_q_not_one(q);
  const S inv = one_of<S>(field_traits<S>::context_of(q)) / (q - one_of<S>(field_traits<S>::context_of(q)));
  return {c.sigma_factor, inv * (c.sigma_factor * sigma_shift(c.series, q) - c.series)};
}

namespace detail {

inline void check_N_D(int N, int D) {
  if (N < 0) raise(ErrorCode::InvalidArgument, "N must be >= 0");
  if (D < 0) raise(ErrorCode::InvalidArgument, "truncation order must be >= 0");
}

// Truncated polynomials in a nilpotent variable (pi or H) of degree <= N.
template <class T>
std::vector<T> nil_mul(const std::vector<T>& a, const std::vector<T>& b, int N, const T& zero) {
  std::vector<T> c(static_cast<std::size_t>(N + 1), zero);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(N); ++j) c[i + j] = c[i + j] + a[i] * b[j];
  }
  return c;
}

// (u + v X)^(-1) mod X^(N+1) = sum_k (-v)^k X^k / u^(k+1).
template <ScalarField S>
std::vector<S> nil_linear_inverse(const S& u, const S& v, int N) {
  const S inv_u = one_of<S>(field_traits<S>::context_of(u)) / u;
  std::vector<S> out;
  S term = inv_u;
  for (int k = 0; k <= N; ++k) {
    out.push_back(term);
    term = -(term * v * inv_u);
  }
  return out;
}

template <ScalarField S>
std::vector<S> nil_power(const std::vector<S>& a, int e, int N) {
  const auto ctx = field_traits<S>::context_of(a.front());
  std::vector<S> acc(static_cast<std::size_t>(N + 1), zero_of<S>(ctx));
  acc[0] = one_of<S>(ctx);
  for (int k = 0; k < e; ++k) acc = nil_mul(acc, a, N, zero_of<S>(ctx));
  return acc;
}

// Elementary symmetric e_0..e_n of xs (e_l = 0 beyond xs.size()).
template <ScalarField S>
std::vector<S> elementary_symmetric(const std::vector<S>& xs, int n, typename field_traits<S>::context ctx) {
  std::vector<S> e(static_cast<std::size_t>(n + 1), zero_of<S>(ctx));
  e[0] = one_of<S>(ctx);
  for (const auto& x : xs) {
    for (int l = n; l >= 1; --l) e[static_cast<std::size_t>(l)] = e[static_cast<std::size_t>(l)] + x * e[static_cast<std::size_t>(l - 1)];
  }
  return e;
}

// sum over (j_1..j_N) in [0,N]^N with sum l*j_l = b, k = sum j_l <= N of
// (-1)^k (N+k)!/(N! j_1!...j_N!) prod_l e_l^(j_l).
template <ScalarField S>
S multiindex_sum(int N, int b, const std::vector<S>& e, typename field_traits<S>::context ctx) {
  S total = zero_of<S>(ctx);
  std::vector<int> j(static_cast<std::size_t>(N + 1), 0);
  auto rec = [&](auto&& self, int l, int weight, int k) -> void {
    if (weight == b) {
      Rational coeff = factorial(static_cast<unsigned>(N + k)) / factorial(static_cast<unsigned>(N));
      S prod = one_of<S>(ctx);
      for (int m = 1; m <= N; ++m) {
        coeff = coeff / factorial(static_cast<unsigned>(j[static_cast<std::size_t>(m)]));
        if (j[static_cast<std::size_t>(m)] > 0) prod = prod * scalar_pow(e[static_cast<std::size_t>(m)], j[static_cast<std::size_t>(m)]);
      }
      if (k % 2 == 1) coeff = -coeff;
      total = total + field_traits<S>::from_rational(coeff, ctx) * prod;
      return;
    }
    if (l > N) return;
    for (int c = 0; c <= N && weight + c * l <= b && k + c <= N; ++c) {
      j[static_cast<std::size_t>(l)] = c;
      self(self, l + 1, weight + c * l, k + c);
    }
    j[static_cast<std::size_t>(l)] = 0;
  };
  rec(rec, 1, 0, 0);
  return total;
}

}  // namespace detail

// Columns S_i with Q^d coefficient 1/prod_j prod_{r=1..d} (1 - q^r Lambda_j/Lambda_i).
template <ScalarField S>
JSeriesEq<S> build_jk_eq(int N, int D, const S& q, const std::vector<S>& Lambda) {
  detail::check_N_D(N, D);
  if (static_cast<int>(Lambda.size()) != N + 1) raise(ErrorCode::InvalidArgument, "need N+1 equivariant parameters");
  const auto ctx = field_traits<S>::context_of(q);
  const S one = one_of<S>(ctx);
  JSeriesEq<S> J{N, q, Lambda, {}};
  for (int i = 0; i <= N; ++i) {
    std::vector<S> ratio;
    for (int j = 0; j <= N; ++j) ratio.push_back(Lambda[static_cast<std::size_t>(j)] / Lambda[static_cast<std::size_t>(i)]);
    std::vector<S> c{one};
    S qd = one;
    for (int d = 1; d <= D; ++d) {
      qd = qd * q;
      S denom = one;
      for (const auto& r : ratio) denom = denom * (one - qd * r);
      if (field_traits<S>::is_negligible(denom)) {
        raise(ErrorCode::ResonantParameters, "q-Pochhammer factor vanishes at column " + std::to_string(i) + ", degree " + std::to_string(d));
      }
      c.push_back(c.back() / denom);
    }
    J.columns.push_back({one / Lambda[static_cast<std::size_t>(i)], TruncSeries<S>(ctx, 0, std::move(c), D)});
  }
  return J;
}

inline JSeriesEq<RatFunc> build_jk_eq_symbolic(int N, int D) {
  return build_jk_eq<RatFunc>(N, D, RatFunc::q(), symbolic_Lambdas(N));
}

// Lambda_i = q^(-lambda_i/z).
inline std::vector<ComplexAP> lambda_to_Lambda(const ComplexAP& q, const ComplexAP& z, const std::vector<ComplexAP>& lambda) {
  std::vector<ComplexAP> out;
  for (const auto& l : lambda) out.push_back(principal_power(q, -(l / z)));
  return out;
}

inline JSeriesEq<ComplexAP> build_jk_eq_numeric(int N, int D, const ComplexAP& q, const ComplexAP& z,
                                                 const std::vector<ComplexAP>& lambda) {
  if (static_cast<int>(lambda.size()) != N + 1) raise(ErrorCode::InvalidArgument, "need N+1 equivariant parameters");
  return build_jk_eq<ComplexAP>(N, D, q, lambda_to_Lambda(q, z, lambda));
}

// Q^(lambda_i/z) times the series with Q^d coefficient
// prod_{r=1..d} prod_j 1/(lambda_i - lambda_j + r z).
template <ScalarField S>
JCohEq<S> build_jcoh_eq(int N, int D, const S& z, const std::vector<S>& lambda) {
  detail::check_N_D(N, D);
  if (static_cast<int>(lambda.size()) != N + 1) raise(ErrorCode::InvalidArgument, "need N+1 equivariant parameters");
  if (field_traits<S>::is_negligible(z)) raise(ErrorCode::InvalidArgument, "z must be nonzero");
  const auto ctx = field_traits<S>::context_of(z);
  const S one = one_of<S>(ctx);
  JCohEq<S> J{N, z, lambda, {}};
  for (int i = 0; i <= N; ++i) {
    std::vector<S> c{one};
    for (int d = 1; d <= D; ++d) {
      const S rz = field_traits<S>::from_rational(Rational(d), ctx) * z;
      S denom = one;
      for (int j = 0; j <= N; ++j) denom = denom * (lambda[static_cast<std::size_t>(i)] - lambda[static_cast<std::size_t>(j)] + rz);
      if (field_traits<S>::is_negligible(denom)) {
        raise(ErrorCode::ResonantParameters, "lambda_i - lambda_j + r z vanishes at column " + std::to_string(i) + ", degree " + std::to_string(d));
      }
      c.push_back(c.back() / denom);
    }
    J.columns.push_back({lambda[static_cast<std::size_t>(i)] / z, TruncSeries<S>(ctx, 0, std::move(c), D)});
  }
  return J;
}

// P^(-L) sum_d Q^d/(q P^(-1); q)_d^(N+1) with P^(-1) = 1 - pi, expanded mod pi^(N+1).
template <ScalarField S>
JSeriesNonEq<S> build_jk_noneq(int N, int D, const S& q) {
  detail::check_N_D(N, D);
  const auto ctx = field_traits<S>::context_of(q);
  const S one = one_of<S>(ctx);
  const S zero = zero_of<S>(ctx);
  // Hypergeometric part as pi-polynomial of series.
  std::vector<std::vector<S>> by_pi(static_cast<std::size_t>(N + 1));
  std::vector<S> acc(static_cast<std::size_t>(N + 1), zero);
  acc[0] = one;
  S qr = one;
  for (int d = 0; d <= D; ++d) {
    if (d > 0) {
      qr = qr * q;
      if (field_traits<S>::is_negligible(one - qr)) raise(ErrorCode::QEqualsOne, "1 - q^r vanishes");
      const auto inv = detail::nil_linear_inverse(one - qr, qr, N);
      acc = detail::nil_mul(acc, detail::nil_power(inv, N + 1, N), N, zero);
    }
    for (int i = 0; i <= N; ++i) by_pi[static_cast<std::size_t>(i)].push_back(acc[static_cast<std::size_t>(i)]);
  }
  std::vector<TruncSeries<S>> H;
  for (auto& c : by_pi) H.push_back(TruncSeries<S>(ctx, 0, std::move(c), D));
  JSeriesNonEq<S> J{N, q, {}};
  for (int i = 0; i <= N; ++i) {
    LogPoly<S> comp = LogPoly<S>::from_series(TruncSeries<S>::zero(D, ctx));
    for (int a = 0; a <= i; ++a) {
      LogPoly<S> e = log_binomial<S>(a, D, ctx);
      if (a % 2 == 1) e = -e;
      comp = comp + H[static_cast<std::size_t>(i - a)] * e;
    }
    J.components.push_back(comp.with_max_log_degree(N));
  }
  return J;
}

template <ScalarField S>
std::vector<LogPoly<S>> decompose_ji(const JSeriesNonEq<S>& J) {
  return J.components;
}

// Q^d coefficient: (1/(q;q)_d^(N+1)) * multiindex sum over e_l(q^m/(1-q^m), m = 1..d).
template <ScalarField S>
TruncSeries<S> f_b(int N, int b, int D, const S& q) {
  detail::check_N_D(N, D);
  if (b < 0 || b > N) raise(ErrorCode::InvalidArgument, "f_b needs 0 <= b <= N");
  const auto ctx = field_traits<S>::context_of(q);
  const S one = one_of<S>(ctx);
  std::vector<S> xs;
  std::vector<S> c;
  S inv_poch = one;
  S qm = one;
  for (int d = 0; d <= D; ++d) {
    if (d > 0) {
      qm = qm * q;
      if (field_traits<S>::is_negligible(one - qm)) raise(ErrorCode::QEqualsOne, "1 - q^m vanishes");
      const S inv = one / (one - qm);
      inv_poch = inv_poch * inv;
      xs.push_back(qm * inv);
    }
    const auto e = detail::elementary_symmetric(xs, N, ctx);
    c.push_back(scalar_pow(inv_poch, N + 1) * detail::multiindex_sum(N, b, e, ctx));
  }
  return TruncSeries<S>(ctx, 0, std::move(c), D);
}

// Q^d coefficient: (1/(z^d d!)^(N+1)) (1/z^b) * multiindex sum over e_l(1/m, m = 1..d).
template <ScalarField S>
TruncSeries<S> g_b(int N, int b, int D, const S& z) {
  detail::check_N_D(N, D);
  if (b < 0 || b > N) raise(ErrorCode::InvalidArgument, "g_b needs 0 <= b <= N");
  if (field_traits<S>::is_negligible(z)) raise(ErrorCode::InvalidArgument, "z must be nonzero");
  const auto ctx = field_traits<S>::context_of(z);
  const S one = one_of<S>(ctx);
  const S zb = one / scalar_pow(z, b);
  std::vector<S> ys;
  std::vector<S> c;
  S scale = one;
  for (int d = 0; d <= D; ++d) {
    if (d > 0) {
      const S m = field_traits<S>::from_rational(Rational(d), ctx);
      scale = scale / (z * m);
      ys.push_back(one / m);
    }
    const auto e = detail::elementary_symmetric(ys, N, ctx);
    c.push_back(scalar_pow(scale, N + 1) * zb * detail::multiindex_sum(N, b, e, ctx));
  }
  return TruncSeries<S>(ctx, 0, std::move(c), D);
}

// J_i = sum_{a+b=i} (-1)^a binom(L, a) f_b.
template <ScalarField S>
std::vector<LogPoly<S>> assemble_ji_from_fb(int N, int D, const S& q) {
  const auto ctx = field_traits<S>::context_of(q);
  std::vector<TruncSeries<S>> f;
  for (int b = 0; b <= N; ++b) f.push_back(f_b(N, b, D, q));
  std::vector<LogPoly<S>> out;
  for (int i = 0; i <= N; ++i) {
    LogPoly<S> comp = LogPoly<S>::from_series(TruncSeries<S>::zero(D, ctx));
    for (int a = 0; a <= i; ++a) {
      LogPoly<S> e = log_binomial<S>(a, D, ctx);
      if (a % 2 == 1) e = -e;
      comp = comp + f[static_cast<std::size_t>(i - a)] * e;
    }
    out.push_back(comp.with_max_log_degree(N));
  }
  return out;
}

namespace detail {

// sum_{a+b=i} (1/a!) (log Q / z)^a h_b.
template <ScalarField S>
std::vector<LogPoly<S>> attach_log_prefactor(const std::vector<TruncSeries<S>>& h, int N, const S& z) {
  const auto ctx = field_traits<S>::context_of(z);
  std::vector<LogPoly<S>> out;
  for (int i = 0; i <= N; ++i) {
    std::vector<TruncSeries<S>> parts;
    for (int a = 0; a <= i; ++a) {
      const S c = field_traits<S>::from_rational(Rational(1) / factorial(static_cast<unsigned>(a)), ctx) / scalar_pow(z, a);
      parts.push_back(c * h[static_cast<std::size_t>(i - a)]);
    }
    out.push_back(LogPoly<S>(std::move(parts), N));
  }
  return out;
}

}  // namespace detail

// Q^(H/z) sum_d Q^d / prod_{r=1..d} (H + r z)^(N+1), assembled from g_b.
template <ScalarField S>
JCohNonEq<S> build_jcoh_noneq(int N, int D, const S& z) {
  std::vector<TruncSeries<S>> g;
  for (int b = 0; b <= N; ++b) g.push_back(g_b(N, b, D, z));
  return {N, z, detail::attach_log_prefactor(g, N, z)};
}

// Same function by expanding prod (H + r z)^(-(N+1)) mod H^(N+1) directly.
template <ScalarField S>
JCohNonEq<S> build_jcoh_noneq_direct(int N, int D, const S& z) {
  detail::check_N_D(N, D);
  if (field_traits<S>::is_negligible(z)) raise(ErrorCode::InvalidArgument, "z must be nonzero");
  const auto ctx = field_traits<S>::context_of(z);
  const S zero = zero_of<S>(ctx);
  std::vector<S> acc(static_cast<std::size_t>(N + 1), zero);
  acc[0] = one_of<S>(ctx);
  std::vector<std::vector<S>> by_h(static_cast<std::size_t>(N + 1));
  for (int d = 0; d <= D; ++d) {
    if (d > 0) {
      const S rz = field_traits<S>::from_rational(Rational(d), ctx) * z;
      const auto inv = detail::nil_linear_inverse(rz, one_of<S>(ctx), N);
      acc = detail::nil_mul(acc, detail::nil_power(inv, N + 1, N), N, zero);
    }
    for (int i = 0; i <= N; ++i) by_h[static_cast<std::size_t>(i)].push_back(acc[static_cast<std::size_t>(i)]);
  }
  std::vector<TruncSeries<S>> h;
  for (auto& c : by_h) h.push_back(TruncSeries<S>(ctx, 0, std::move(c), D));
  return {N, z, detail::attach_log_prefactor(h, N, z)};
}

template <ScalarField S>
S pullback_scale(int N, const S& q, const S& z) {
  if (field_traits<S>::is_negligible(z)) raise(ErrorCode::InvalidArgument, "z must be nonzero");
  return scalar_pow((one_of<S>(field_traits<S>::context_of(q)) - q) / z, N + 1);
}

template <ScalarField S>
FundamentalEq<S> build_fundamental(const JSeriesEq<S>& J, const S& z) {
  const S c = pullback_scale(J.N, J.q, z);
  FundamentalEq<S> X{J.N, J.q, z, c, {}, {}};
  std::vector<QCharColumn<S>> row;
  for (const auto& col : J.columns) {
    X.sigma_factors.push_back(col.sigma_factor);
    row.push_back({col.sigma_factor, scale_Q(col.series, c)});
  }
  for (int l = 0; l <= J.N; ++l) {
    std::vector<TruncSeries<S>> r;
    for (auto& col : row) r.push_back(col.series);
    X.entries.push_back(std::move(r));
    if (l < J.N) {
      for (auto& col : row) col = char_delta(col, J.q);
    }
  }
  return X;
}

template <ScalarField S>
FundamentalNonEq<S> build_fundamental(const JSeriesNonEq<S>& J, const S& z) {
  const S c = pullback_scale(J.N, J.q, z);
  FundamentalNonEq<S> X{J.N, J.q, z, c, {}};
  std::vector<LogPoly<S>> row;
  for (const auto& comp : J.components) row.push_back(comp.map_parts([&](const TruncSeries<S>& s) { return scale_Q(s, c); }));
  for (int l = 0; l <= J.N; ++l) {
    X.entries.push_back(row);
    if (l < J.N) {
      for (auto& e : row) e = logpoly_delta(e, J.q);
    }
  }
  return X;
}

}  // namespace qconf

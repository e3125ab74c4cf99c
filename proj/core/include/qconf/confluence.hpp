#pragma once

#include <vector>

#include "qconf/convergence.hpp"
#include "qconf/jfun.hpp"
#include "qconf/qop.hpp"

namespace qconf {

enum class Variant { Eq, NonEq };

// Row l, column i: delta_q^l of
// Lambda_i^(-ell_q(Q)) sum_d (1-q)^(d(N+1)) Q^d / (z^(d(N+1)) prod_j (q Lambda_j/Lambda_i; q)_d).
template <ScalarField S>
struct TransformedEq {
  int N = 0;
  S q;
  S z;
  std::vector<S> sigma_factors;
  std::vector<std::vector<TruncSeries<S>>> entries;
};

// Fundamental matrix with column i multiplied by ((1-q)/z)^i.
template <ScalarField S>
struct TransformedNonEq {
  int N = 0;
  S q;
  S z;
  std::vector<std::vector<LogPoly<S>>> entries;
};

// Rebuilt from the closed-form entries rather than by multiplying X with a
// matrix of theta quotients.
template <ScalarField S>
TransformedEq<S> transform_eq(const FundamentalEq<S>& X) {
  const int N = X.N;
  const int D = X.entries.at(0).at(0).order();
  const auto ctx = field_traits<S>::context_of(X.q);
  const S one = one_of<S>(ctx);
  const S c = scalar_pow((one - X.q) / X.z, N + 1);
  TransformedEq<S> T{N, X.q, X.z, X.sigma_factors, {}};
  std::vector<QCharColumn<S>> row;
  for (int i = 0; i <= N; ++i) {
    const S& fi = X.sigma_factors[static_cast<std::size_t>(i)];
    std::vector<S> coeffs{one};
    S qr = one;
    for (int d = 1; d <= D; ++d) {
      qr = qr * X.q;
      S denom = one;
      for (int j = 0; j <= N; ++j) denom = denom * (one - qr * fi / X.sigma_factors[static_cast<std::size_t>(j)]);
      if (field_traits<S>::is_negligible(denom)) raise(ErrorCode::ResonantParameters, "q-Pochhammer factor vanishes");
      coeffs.push_back(coeffs.back() * c / denom);
    }
    row.push_back({fi, TruncSeries<S>(ctx, 0, std::move(coeffs), D)});
  }
  for (int l = 0; l <= N; ++l) {
    std::vector<TruncSeries<S>> r;
    for (const auto& col : row) r.push_back(col.series);
    T.entries.push_back(std::move(r));
    if (l < N) {
      for (auto& col : row) col = char_delta(col, X.q);
    }
  }
  return T;
}

template <ScalarField S>
TransformedNonEq<S> transform_noneq(const FundamentalNonEq<S>& X) {
  const auto ctx = field_traits<S>::context_of(X.q);
  const S s = (one_of<S>(ctx) - X.q) / X.z;
  TransformedNonEq<S> T{X.N, X.q, X.z, X.entries};
  for (auto& row : T.entries) {
    for (int i = 0; i <= X.N; ++i) row[static_cast<std::size_t>(i)] = scalar_pow(s, i) * row[static_cast<std::size_t>(i)];
  }
  return T;
}

template <ScalarField S>
FundamentalNonEq<S> inverse_transform_noneq(const TransformedNonEq<S>& T) {
  const auto ctx = field_traits<S>::context_of(T.q);
  const S s = (one_of<S>(ctx) - T.q) / T.z;
  FundamentalNonEq<S> X{T.N, T.q, T.z, scalar_pow(s, T.N + 1), T.entries};
  for (auto& row : X.entries) {
    for (int i = 0; i <= T.N; ++i) row[static_cast<std::size_t>(i)] = scalar_pow(s, -i) * row[static_cast<std::size_t>(i)];
  }
  return X;
}

// prod_{r=1..d} prod_j 1/(lambda_i - lambda_j + r z).
Rational coh_eq_coefficient(int i, int d, const Rational& z, const std::vector<Rational>& lambda);

struct EqLimit {
  ConvergenceReport report;
  std::vector<CohClassEq<ComplexAP>> assembled;  // Q^d coefficient per d, fixed-point basis
  std::vector<Rational> exponents;               // Q^(lambda_i/z) markers
  double gamma_max_error = 0;                    // against build_jcoh_eq
  bool gamma_match = false;
};

struct NonEqLimit {
  ConvergenceReport report;
  JCohNonEq<ComplexAP> assembled;  // log symbol: log Q
  double gamma_max_error = 0;      // against build_jcoh_noneq
  bool gamma_match = false;
};

// Ts[k] is the transformed solution at q0^ts[k].
EqLimit limit_eq(const std::vector<TransformedEq<ComplexAP>>& Ts, const std::vector<double>& ts, const Rational& z,
                 const std::vector<Rational>& lambda, double tol);
// The L^a part is divided by (q-1)^a, the regularized q-logarithm.
NonEqLimit limit_noneq(const std::vector<TransformedNonEq<ComplexAP>>& Ts, const std::vector<double>& ts, const Rational& z,
                       double tol);

struct MainTheoremParams {
  Variant variant = Variant::Eq;
  int N = 1;
  int D = 3;
  ComplexAP q0;
  Rational z = Rational(1);
  std::vector<Rational> lambda;  // N+1 entries for Variant::Eq
  std::vector<double> ts;
  double tol = 1e-3;
};

struct MainTheoremReport {
  Variant variant = Variant::Eq;
  ConvergenceReport report;
  double gamma_max_error = 0;
  bool gamma_match = false;
  bool pass() const { return report.pass() && gamma_match; }
};

// Build, pull back, transform, take limits and compare with the cohomological
// J-function.  ResonantParameters is raised before any limit is attempted.
MainTheoremReport main_theorem_report(const MainTheoremParams& p);

TransformedEq<ComplexAP> transformed_eq_at(int N, int D, const ComplexAP& q, const Rational& z, const std::vector<Rational>& lambda);
TransformedNonEq<ComplexAP> transformed_noneq_at(int N, int D, const ComplexAP& q, const Rational& z);

}  // namespace qconf

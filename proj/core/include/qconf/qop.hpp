#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qconf/convergence.hpp"
#include "qconf/jfun.hpp"
#include "qconf/qsystems.hpp"

namespace qconf {

enum class OpBasis { Sigma, Delta };

// sum_k a_k(Q) B^k with B = sigma or delta_q; coefficients act on the left.
template <ScalarField S>
struct QDiffOp {
  OpBasis basis = OpBasis::Sigma;
  S q;
  std::vector<QPoly<S>> coeffs;
  // Set by pullback_op: the Q-scale c in a_k(Q) -> a_k(cQ).
  std::optional<S> pullback_scale;
  // Set by normalize_op: the overall factor the coefficients were multiplied by.
  std::optional<S> normalization;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  int q_degree() const {
    int m = 0;
    for (const auto& c : coeffs) m = std::max(m, c.degree());
    return m;
  }
};

// sum_k b_k(Q) theta^k, theta = Q d/dQ.
template <ScalarField S>
struct DiffOp {
  std::vector<QPoly<S>> coeffs;
  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  int q_degree() const {
    int m = 0;
    for (const auto& c : coeffs) m = std::max(m, c.degree());
    return m;
  }
};

namespace detail {

template <ScalarField S>
QPoly<S> constant_minus_Q(const S& c) {
  const auto ctx = field_traits<S>::context_of(c);
  return QPoly<S>(std::vector<S>{c, -one_of<S>(ctx)});
}

template <ScalarField S>
void require_leading(const std::vector<QPoly<S>>& coeffs) {
  if (coeffs.empty() || coeffs.back().is_zero()) raise(ErrorCode::LeadingCoefficientVanishes, "leading coefficient is identically zero");
}

}  // namespace detail

// prod_j (1 - Lambda_j sigma) - Q = sum_k (-1)^k e_k(Lambda) sigma^k - Q.
template <ScalarField S>
QDiffOp<S> make_kth_operator(const std::vector<S>& Lambda, const S& q) {
  if (Lambda.empty()) raise(ErrorCode::InvalidArgument, "need at least one equivariant parameter");
  const auto ctx = field_traits<S>::context_of(q);
  const int n = static_cast<int>(Lambda.size());
  const auto e = detail::elementary_symmetric(Lambda, n, ctx);
  QDiffOp<S> op{OpBasis::Sigma, q, {}, std::nullopt, std::nullopt};
  for (int k = 0; k <= n; ++k) {
    const S c = (k % 2 == 0) ? e[static_cast<std::size_t>(k)] : -e[static_cast<std::size_t>(k)];
    op.coeffs.push_back(k == 0 ? detail::constant_minus_Q(c) : QPoly<S>::constant(c));
  }
  return op;
}

// (1 - sigma)^(N+1) - Q.
template <ScalarField S>
QDiffOp<S> make_kth_operator_noneq(int N, const S& q) {
  if (N < 0) raise(ErrorCode::InvalidArgument, "N must be >= 0");
  return make_kth_operator(std::vector<S>(static_cast<std::size_t>(N + 1), one_of<S>(field_traits<S>::context_of(q))), q);
}

// prod_j (-lambda_j + z theta) - Q.
template <ScalarField S>
DiffOp<S> make_coh_operator(const S& z, const std::vector<S>& lambda) {
  if (lambda.empty()) raise(ErrorCode::InvalidArgument, "need at least one equivariant parameter");
  const auto ctx = field_traits<S>::context_of(z);
  const int n = static_cast<int>(lambda.size());
  std::vector<S> neg;
  for (const auto& l : lambda) neg.push_back(-l);
  const auto e = detail::elementary_symmetric(neg, n, ctx);
  DiffOp<S> op;
  for (int k = 0; k <= n; ++k) {
    const S c = scalar_pow(z, k) * e[static_cast<std::size_t>(n - k)];
    op.coeffs.push_back(k == 0 ? detail::constant_minus_Q(c) : QPoly<S>::constant(c));
  }
  return op;
}

// (z theta)^(N+1) - Q.
template <ScalarField S>
DiffOp<S> make_coh_operator_noneq(int N, const S& z) {
  if (N < 0) raise(ErrorCode::InvalidArgument, "N must be >= 0");
  return make_coh_operator(z, std::vector<S>(static_cast<std::size_t>(N + 1), zero_of<S>(field_traits<S>::context_of(z))));
}

// sigma = Id + (q-1) delta.
template <ScalarField S>
QDiffOp<S> to_delta_form(const QDiffOp<S>& op) {
  if (op.basis == OpBasis::Delta) return op;
  require_q_not_one(op.q);
  const auto ctx = field_traits<S>::context_of(op.q);
  const S qm1 = op.q - one_of<S>(ctx);
  const int n = op.degree();
  QDiffOp<S> out = op;
  out.basis = OpBasis::Delta;
  out.coeffs.assign(static_cast<std::size_t>(n + 1), QPoly<S>());
  for (int j = 0; j <= n; ++j) {
    QPoly<S> acc({}, ctx);
    for (int k = j; k <= n; ++k) {
      acc = acc + field_traits<S>::from_rational(binomial(k, j), ctx) * op.coeffs[static_cast<std::size_t>(k)];
    }
    out.coeffs[static_cast<std::size_t>(j)] = scalar_pow(qm1, j) * acc;
  }
  return out;
}

// delta = (sigma - Id)/(q-1).
template <ScalarField S>
QDiffOp<S> to_sigma_form(const QDiffOp<S>& op) {
  if (op.basis == OpBasis::Sigma) return op;
  require_q_not_one(op.q);
  const auto ctx = field_traits<S>::context_of(op.q);
  const S inv = one_of<S>(ctx) / (op.q - one_of<S>(ctx));
  const int n = op.degree();
  QDiffOp<S> out = op;
  out.basis = OpBasis::Sigma;
  out.coeffs.assign(static_cast<std::size_t>(n + 1), QPoly<S>());
  for (int k = 0; k <= n; ++k) {
    QPoly<S> acc({}, ctx);
    for (int j = k; j <= n; ++j) {
      Rational c = binomial(j, k);
      if ((j - k) % 2 == 1) c = -c;
      acc = acc + (field_traits<S>::from_rational(c, ctx) * scalar_pow(inv, j)) * op.coeffs[static_cast<std::size_t>(j)];
    }
    out.coeffs[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

// a_k(Q) -> a_k(cQ) with c = ((1-q)/z)^exponent; exponent defaults to the order.
template <ScalarField S>
QDiffOp<S> pullback_op(const QDiffOp<S>& op, const S& z, std::optional<int> exponent = std::nullopt) {
  if (field_traits<S>::is_negligible(z)) raise(ErrorCode::InvalidArgument, "z must be nonzero");
  const auto ctx = field_traits<S>::context_of(op.q);
  const S c = scalar_pow((one_of<S>(ctx) - op.q) / z, exponent.value_or(op.degree()));
  QDiffOp<S> out = op;
  for (auto& a : out.coeffs) a = a.scaled_argument(c);
  out.pullback_scale = op.pullback_scale ? *op.pullback_scale * c : c;
  return out;
}

// Multiplies every coefficient by (z/(1-q))^exponent, the factor that makes
// the pulled-back J-operators have a nontrivial q -> 1 limit.
template <ScalarField S>
QDiffOp<S> normalize_op(const QDiffOp<S>& op, const S& z, std::optional<int> exponent = std::nullopt) {
  const auto ctx = field_traits<S>::context_of(op.q);
  const S one = one_of<S>(ctx);
  if (field_traits<S>::is_negligible(one - op.q)) raise(ErrorCode::QEqualsOne, "normalization needs q != 1");
  const S f = scalar_pow(z / (one - op.q), exponent.value_or(op.degree()));
  QDiffOp<S> out = op;
  for (auto& a : out.coeffs) a = f * a;
  out.normalization = op.normalization ? *op.normalization * f : f;
  return out;
}

// delta-form, pulled back by phi_{q,z} and normalized.
template <ScalarField S>
QDiffOp<S> pulled_back_operator(const QDiffOp<S>& sigma_op, const S& z) {
  return normalize_op(pullback_op(to_delta_form(sigma_op), z), z);
}

namespace detail {

template <ScalarField S>
TruncSeries<S> basis_step(OpBasis b, const TruncSeries<S>& f, const S& q) {
  return b == OpBasis::Sigma ? sigma_shift(f, q) : delta_q(f, q);
}
template <ScalarField S>
QCharColumn<S> basis_step(OpBasis b, const QCharColumn<S>& f, const S& q) {
  return b == OpBasis::Sigma ? char_sigma(f, q) : char_delta(f, q);
}
template <ScalarField S>
LogPoly<S> basis_step(OpBasis b, const LogPoly<S>& f, const S& q) {
  return b == OpBasis::Sigma ? logpoly_sigma(f, q) : logpoly_delta(f, q);
}

template <ScalarField S>
TruncSeries<S> apply_coeff(const QPoly<S>& a, const TruncSeries<S>& f) {
  return a.times(f);
}
template <ScalarField S>
TruncSeries<S> apply_coeff(const QPoly<S>& a, const QCharColumn<S>& f) {
  return a.times(f.series);
}
template <ScalarField S>
LogPoly<S> apply_coeff(const QPoly<S>& a, const LogPoly<S>& f) {
  return f.map_parts([&](const TruncSeries<S>& s) { return a.times(s); });
}

template <class T>
int order_of(const T& f) {
  if constexpr (requires { f.series; }) {
    return f.series.order();
  } else {
    return f.order();
  }
}

template <ScalarField S, class T>
auto apply_q_operator(const QDiffOp<S>& op, const T& sol) {
  if (order_of(sol) < op.q_degree()) {
    raise(ErrorCode::TruncationTooShort, "solution is truncated below the operator's Q-degree");
  }
  T power = sol;
  auto acc = apply_coeff(op.coeffs.front(), power);
  for (int k = 1; k <= op.degree(); ++k) {
    power = basis_step(op.basis, power, op.q);
    acc = acc + apply_coeff(op.coeffs[static_cast<std::size_t>(k)], power);
  }
  return acc;
}

}  // namespace detail

template <ScalarField S>
TruncSeries<S> residual(const QDiffOp<S>& op, const TruncSeries<S>& sol) {
  return detail::apply_q_operator(op, sol);
}

// Column carrying a q-character: sigma acts as sigma_factor * sigma_Q.
template <ScalarField S>
TruncSeries<S> residual(const QDiffOp<S>& op, const QCharColumn<S>& sol) {
  return detail::apply_q_operator(op, sol);
}

// Log symbol L = ell_q(Q): sigma sends L to L + 1.
template <ScalarField S>
LogPoly<S> residual(const QDiffOp<S>& op, const LogPoly<S>& sol) {
  return detail::apply_q_operator(op, sol);
}

namespace detail {

template <ScalarField S>
TruncSeries<S> theta_shifted(const TruncSeries<S>& f, const S& e) {
  return theta_derivative(f) + e * f;
}

// theta on sum_a (log Q)^a f_a.
template <ScalarField S>
LogPoly<S> theta_log(const LogPoly<S>& f) {
  const auto ctx = f.context();
  std::vector<TruncSeries<S>> parts;
  const int n = f.stored_degree();
  for (int a = 0; a <= n; ++a) {
    TruncSeries<S> p = theta_derivative(f.part(a));
    if (a + 1 <= n) p = p + field_traits<S>::from_rational(Rational(a + 1), ctx) * f.part(a + 1);
    parts.push_back(std::move(p));
  }
  return LogPoly<S>(std::move(parts), f.max_log_degree());
}

template <ScalarField S>
void require_order(const DiffOp<S>& op, int order) {
  if (order < op.q_degree()) raise(ErrorCode::TruncationTooShort, "solution is truncated below the operator's Q-degree");
}

}  // namespace detail

template <ScalarField S>
TruncSeries<S> residual(const DiffOp<S>& op, const TruncSeries<S>& sol) {
  detail::require_order(op, sol.order());
  TruncSeries<S> power = sol;
  TruncSeries<S> acc = op.coeffs.front().times(power);
  for (int k = 1; k <= op.degree(); ++k) {
    power = theta_derivative(power);
    acc = acc + op.coeffs[static_cast<std::size_t>(k)].times(power);
  }
  return acc;
}

// Q^e f: theta acts on f as theta + e.
template <ScalarField S>
TruncSeries<S> residual(const DiffOp<S>& op, const PowerColumn<S>& sol) {
  detail::require_order(op, sol.series.order());
  TruncSeries<S> power = sol.series;
  TruncSeries<S> acc = op.coeffs.front().times(power);
  for (int k = 1; k <= op.degree(); ++k) {
    power = detail::theta_shifted(power, sol.exponent);
    acc = acc + op.coeffs[static_cast<std::size_t>(k)].times(power);
  }
  return acc;
}

// Log symbol log Q: theta (log Q)^a = a (log Q)^(a-1).
template <ScalarField S>
LogPoly<S> residual(const DiffOp<S>& op, const LogPoly<S>& sol) {
  detail::require_order(op, sol.order());
  LogPoly<S> power = sol;
  LogPoly<S> acc = sol.map_parts([&](const TruncSeries<S>& s) { return op.coeffs.front().times(s); });
  for (int k = 1; k <= op.degree(); ++k) {
    power = detail::theta_log(power);
    acc = acc + power.map_parts([&](const TruncSeries<S>& s) { return op.coeffs[static_cast<std::size_t>(k)].times(s); });
  }
  return acc;
}

// Companion system sigma Y = A Y.  sigma-form: Y = (y, sigma y, ...); delta-form:
// Y = (y, delta y, ...) and A = Id + (q-1) C.
template <ScalarField S>
QSystem<S> companion(const QDiffOp<S>& op) {
  detail::require_leading(op.coeffs);
  const int n = op.degree();
  if (n < 1) raise(ErrorCode::InvalidArgument, "companion needs an operator of order >= 1");
  const auto ctx = field_traits<S>::context_of(op.q);
  const auto zero = QRatFunc<S>::constant(zero_of<S>(ctx));
  const auto one = QRatFunc<S>::constant(one_of<S>(ctx));
  Matrix<QRatFunc<S>> C(n, n, zero);
  for (int i = 0; i + 1 < n; ++i) C(i, i + 1) = one;
  const QPoly<S>& lead = op.coeffs.back();
  for (int k = 0; k < n; ++k) C(n - 1, k) = QRatFunc<S>(-op.coeffs[static_cast<std::size_t>(k)], lead);
  if (op.basis == OpBasis::Sigma) return {op.q, C};
  const auto qm1 = QRatFunc<S>::constant(op.q - one_of<S>(ctx));
  return {op.q, identity_qmatrix<S>(n, ctx) + scale_matrix(C, qm1)};
}

// theta Y = C Y for Y = (y, theta y, ...).
template <ScalarField S>
Matrix<QRatFunc<S>> companion_theta(const DiffOp<S>& op, typename field_traits<S>::context ctx = {}) {
  detail::require_leading(op.coeffs);
  const int n = op.degree();
  if (n < 1) raise(ErrorCode::InvalidArgument, "companion needs an operator of order >= 1");
  const auto zero = QRatFunc<S>::constant(zero_of<S>(ctx));
  Matrix<QRatFunc<S>> C(n, n, zero);
  for (int i = 0; i + 1 < n; ++i) C(i, i + 1) = QRatFunc<S>::constant(one_of<S>(ctx));
  for (int k = 0; k < n; ++k) C(n - 1, k) = QRatFunc<S>(-op.coeffs[static_cast<std::size_t>(k)], op.coeffs.back());
  return C;
}

// sigma X - A X for a fundamental matrix of the pulled-back operator.
// Entry (l, i) of the result; all zero means X solves the companion system.
template <ScalarField S>
std::vector<std::vector<TruncSeries<S>>> companion_residual(const QSystem<S>& sys, const FundamentalEq<S>& X) {
  const int n = sys.rank();
  if (static_cast<int>(X.entries.size()) != n) raise(ErrorCode::InvalidArgument, "matrix sizes do not match");
  std::vector<std::vector<TruncSeries<S>>> out;
  for (int l = 0; l < n; ++l) {
    std::vector<TruncSeries<S>> row;
    for (int i = 0; i < n; ++i) {
      const auto& col = X.entries;
      TruncSeries<S> r = X.sigma_factors[static_cast<std::size_t>(i)] * sigma_shift(col[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)], sys.q);
      for (int m = 0; m < n; ++m) r = r - sys.A(l, m).times(col[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)]);
      row.push_back(std::move(r));
    }
    out.push_back(std::move(row));
  }
  return out;
}

template <ScalarField S>
std::vector<std::vector<LogPoly<S>>> companion_residual(const QSystem<S>& sys, const FundamentalNonEq<S>& X) {
  const int n = sys.rank();
  if (static_cast<int>(X.entries.size()) != n) raise(ErrorCode::InvalidArgument, "matrix sizes do not match");
  std::vector<std::vector<LogPoly<S>>> out;
  for (int l = 0; l < n; ++l) {
    std::vector<LogPoly<S>> row;
    for (int i = 0; i < n; ++i) {
      LogPoly<S> r = logpoly_sigma(X.entries[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)], sys.q);
      for (int m = 0; m < n; ++m) {
        const auto& a = sys.A(l, m);
        r = r - X.entries[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)].map_parts([&](const TruncSeries<S>& s) { return a.times(s); });
      }
      row.push_back(std::move(r));
    }
    out.push_back(std::move(row));
  }
  return out;
}

// One row per (delta power k, Q power m).
struct FormalLimitReport {
  ConvergenceReport table;
  DiffOp<ComplexAP> candidate;  // coefficients at the smallest t
  bool confluent() const { return table.pass(); }
};

using QDiffOpFamily = std::function<QDiffOp<ComplexAP>(const ComplexAP& q)>;

// Follows the delta-form coefficients of family(q0^t) along ts and compares
// them with the theta-coefficients of target.  DivergentCoefficient when a
// coefficient's error grows along the whole grid beyond 1.
FormalLimitReport formal_limit(const QDiffOpFamily& family, const DiffOp<ComplexAP>& target, const ComplexAP& q0,
                               const std::vector<double>& ts, double tol = 1e-3);

// The pulled-back, normalized equivariant K-theoretic operator at numeric q
// with Lambda_i = q^(-lambda_i/z).
QDiffOp<ComplexAP> pulled_back_kth_eq(const ComplexAP& q, const ComplexAP& z, const std::vector<ComplexAP>& lambda);
QDiffOp<ComplexAP> pulled_back_kth_noneq(int N, const ComplexAP& q, const ComplexAP& z);

// q -> companion system of the pulled-back equivariant operator.
QSystemFamily kth_eq_companion_family(const ComplexAP& z, const std::vector<ComplexAP>& lambda);
QSystemFamily kth_noneq_companion_family(int N, const ComplexAP& z);
// theta-companion of prod_j (-lambda_j + z theta) - Q, the expected limit of B_q.
Matrix<QRatFunc<ComplexAP>> coh_companion_limit(const ComplexAP& z, const std::vector<ComplexAP>& lambda);

}  // namespace qconf

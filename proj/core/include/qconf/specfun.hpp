#pragma once

#include <map>
#include <vector>

#include "qconf/qseries.hpp"
#include "qconf/scalars.hpp"

namespace qconf {

// (x; q)_d = prod_{r=0}^{d-1} (1 - q^r x); 1 for d = 0.
template <ScalarField S>
S qpochhammer(const S& x, const S& q, int d) {
  if (d < 0) raise(ErrorCode::InvalidArgument, "qpochhammer needs d >= 0");
  const auto ctx = field_traits<S>::context_of(x);
  const S one = one_of<S>(ctx);
  S acc = one;
  S qr = one;
  for (int r = 0; r < d; ++r) {
    acc = acc * (one - qr * x);
    qr = qr * q;
  }
  return acc;
}

// Coefficients q^{d(d-1)/2} of the theta series for |d| <= M.
template <ScalarField S>
struct ThetaWindow {
  S q;
  int M = 0;
  std::map<int, S> coefficients;
};

template <ScalarField S>
ThetaWindow<S> make_theta_window(const S& q, int M) {
  if (M < 1) raise(ErrorCode::InvalidArgument, "theta window needs M >= 1");
  ThetaWindow<S> w{q, M, {}};
  for (int d = -M; d <= M; ++d) {
    const long e = static_cast<long>(d) * (d - 1) / 2;
    w.coefficients.emplace(d, scalar_pow(q, e));
  }
  return w;
}

struct QPochInf {
  ComplexAP value;
  // |value - (x;q)_inf| <= error_bound.
  double error_bound = 0.0;
  int factors = 0;
};

// (x; q)_inf, truncated once the tail sum |x| |q|^R / (1 - |q|) drops below tol.
QPochInf qpochhammer_inf(const ComplexAP& x, const ComplexAP& q, double tol);

struct ThetaSums {
  ComplexAP theta;
  // sum_d d q^{d(d-1)/2} Q^d, i.e. Q * theta'(Q).
  ComplexAP q_theta_prime;
  int window = 0;
  long working_bits = 0;
};

// Smallest M whose two-sided tail bound is below tol (absolute).
int theta_window_for(const ComplexAP& q, const ComplexAP& Q, double log2_tol);

// Window sums at the precision of the inputs.  With M = 0 the window is
// chosen adaptively so that the tail is below 2^(-bits) relative to |theta|;
// with an explicit M, WindowTooSmall is raised when its tail is larger.
// The working precision grows until cancellation in the sums is covered.
ThetaSums theta_sums(const ComplexAP& q, const ComplexAP& Q, int M = 0);

ComplexAP theta_eval(const ComplexAP& q, const ComplexAP& Q, int M = 0);
// -Q theta'(Q) / theta(Q); NearThetaZero within 1e-3 |Q| of -q^Z.
ComplexAP ell_q_eval(const ComplexAP& q, const ComplexAP& Q, int M = 0);
// theta(Q) / theta(lambda Q).
ComplexAP e_q_char(const ComplexAP& q, const ComplexAP& lambda, const ComplexAP& Q);

// NearThetaZero when Q lies within rel_guard |Q| of a point of -q^Z.
void check_theta_zero_distance(const ComplexAP& q, const ComplexAP& Q, double rel_guard = 1e-3);

struct LogLimitRow {
  double t = 0.0;
  ComplexAP value;  // (q^t - 1) ell_{q^t}(Q)
  double error = 0.0;
};

// |(q0^t - 1) ell_{q0^t}(Q) - Log Q| for each t.  SpiralCut when -Q lies on
// q0^R (for real q0 in (0,1): Q a negative real).
std::vector<LogLimitRow> q_log_limit_check(const ComplexAP& q0, const ComplexAP& Q, const std::vector<double>& ts);

// Signed Stirling numbers of the first kind: L(L-1)...(L-k+1) = sum_a s(k,a) L^a.
std::vector<Rational> falling_factorial_coefficients(int k);

// binom(L, k) = L(L-1)...(L-k+1)/k! with constant series coefficients.
template <ScalarField S>
LogPoly<S> log_binomial(int k, int order, typename field_traits<S>::context ctx = {}) {
  if (k < 0) raise(ErrorCode::InvalidArgument, "log_binomial needs k >= 0");
  const auto s = falling_factorial_coefficients(k);
  const Rational kf = factorial(static_cast<unsigned>(k));
  std::vector<TruncSeries<S>> parts;
  for (const auto& c : s) {
    parts.push_back(TruncSeries<S>::constant(field_traits<S>::from_rational(c / kf, ctx), order));
  }
  return LogPoly<S>(std::move(parts));
}

}  // namespace qconf

#include "qconf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qconf {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double log_abs(const ComplexAP& x) { return log(abs(x)).to_double(); }

// log(e^a + e^b) without overflow.
double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

void require_modulus_below_one(const ComplexAP& q) {
  const BigFloat m = abs(q);
  if (m.is_zero() || !(m < BigFloat(1L, 64))) {
    raise(ErrorCode::ModulusQNotLessThanOne, "theta and q-logarithm need 0 < |q| < 1");
  }
}

struct LogMagnitudes {
  double lq;  // log|q| < 0
  double lQ;  // log|Q|
  double term(long d) const { return 0.5 * static_cast<double>(d) * static_cast<double>(d - 1) * lq + static_cast<double>(d) * lQ; }
  // log of the bound on sum_{|d| > M} |terms|; +inf while the tails are not yet geometric.
  double tail(int M) const {
    const double right_ratio = (M + 1) * lq + lQ;
    const double left_ratio = (M + 1) * lq - lQ;
    if (right_ratio > -kLn2 || left_ratio > -kLn2) return std::numeric_limits<double>::infinity();
    return kLn2 + log_add(term(M + 1), term(-(M + 1)));
  }
};

int window_for(const LogMagnitudes& lm, double log_tol) {
  int M = 1;
  while (!(lm.tail(M) < log_tol)) {
    if (M > (1 << 26)) raise(ErrorCode::WindowTooSmall, "theta window would exceed 2^26 terms");
    M = M < 16 ? M + 1 : M + M / 4;
  }
  // Step back to the smallest admissible M.
  int lo = std::max(1, M - M / 4 - 1);
  while (lo < M && !(lm.tail(lo) < log_tol)) ++lo;
  return lo;
}

}  // namespace

QPochInf qpochhammer_inf(const ComplexAP& x, const ComplexAP& q, double tol) {
  const long bits = std::max(x.bits(), q.bits());
  const double aq = abs(q).to_double();
  if (!(aq < 1.0)) raise(ErrorCode::ModulusQNotLessThanOne, "(x;q)_inf needs |q| < 1");
  if (!(tol > 0.0)) raise(ErrorCode::InvalidArgument, "tolerance must be positive");
  const double ax = abs(x).to_double();
  const ComplexAP one(Rational(1), bits);
  ComplexAP acc = one;
  ComplexAP qr = one;  // q^r, with q^0 = 1 also for q = 0
  int r = 0;
  double term = ax;  // |q|^r |x|
  while (true) {
    const double tail = aq == 0.0 ? (r == 0 ? ax : 0.0) : term / (1.0 - aq);
    if (tail < tol || term == 0.0) break;
    acc = acc * (one - qr * x);
    qr = qr * q;
    term *= aq;
    ++r;
    if (r > 10000000) raise(ErrorCode::InvalidArgument, "(x;q)_inf did not reach the tolerance");
  }
  const double s = aq == 0.0 ? 0.0 : term / (1.0 - aq);
  return {acc, abs(acc).to_double() * std::expm1(s), r};
}

int theta_window_for(const ComplexAP& q, const ComplexAP& Q, double log2_tol) {
  require_modulus_below_one(q);
  if (Q.is_zero()) raise(ErrorCode::InvalidArgument, "theta needs Q != 0");
  const LogMagnitudes lm{log_abs(q), log_abs(Q)};
  return window_for(lm, log2_tol * kLn2);
}

void check_theta_zero_distance(const ComplexAP& q, const ComplexAP& Q, double rel_guard) {
  require_modulus_below_one(q);
  if (Q.is_zero()) raise(ErrorCode::InvalidArgument, "theta needs Q != 0");
  const double lq = log_abs(q);
  const double kstar = log_abs(Q) / lq;
  const long spread = static_cast<long>(std::min(10000.0, std::ceil(1.01 * rel_guard / -lq))) + 2;
  const long k0 = std::lround(kstar);
  const BigFloat guard = BigFloat(rel_guard, 64) * abs(Q);
  const long bits = std::max<long>(64, std::min(q.bits(), Q.bits()));
  const ComplexAP qq = q.with_bits(bits);
  for (long k = k0 - spread; k <= k0 + spread; ++k) {
    const ComplexAP zk = -pow(qq, k);
    if (abs(Q.with_bits(bits) - zk) < guard) {
      raise(ErrorCode::NearThetaZero, "Q is within " + std::to_string(rel_guard) + "|Q| of the theta zero -q^" +
                                          std::to_string(k));
    }
  }
}

ThetaSums theta_sums(const ComplexAP& q, const ComplexAP& Q, int M) {
  require_modulus_below_one(q);
  if (Q.is_zero()) raise(ErrorCode::InvalidArgument, "theta needs Q != 0");
  if (M < 0) raise(ErrorCode::InvalidArgument, "theta window must be nonnegative");
  check_theta_zero_distance(q, Q);
  const long bits = std::max(q.bits(), Q.bits());
  const LogMagnitudes lm{log_abs(q), log_abs(Q)};
  const double log_target = -(static_cast<double>(bits) + 8.0) * kLn2;

  // Largest term, used for the first window guess.
  const double dpeak = std::clamp(0.5 - lm.lQ / lm.lq, -1e9, 1e9);
  double log_peak = 0.0;
  for (double d : {std::floor(dpeak), std::ceil(dpeak)}) log_peak = std::max(log_peak, lm.term(static_cast<long>(d)));

  const bool adaptive = M == 0;
  int window = adaptive ? window_for(lm, log_target + std::max(0.0, log_peak)) : M;
  long w = bits + 64;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 40) raise(ErrorCode::WindowTooSmall, "theta evaluation did not stabilize");
    const ComplexAP qw = q.with_bits(w);
    const ComplexAP Qw = Q.with_bits(w);
    const ComplexAP Qi = ComplexAP(Rational(1), w) / Qw;
    ComplexAP sum(Rational(1), w);
    ComplexAP dsum(w);
    double log_abs_sum = 0.0;   // log sum |term_d|
    double log_abs_dsum = -std::numeric_limits<double>::infinity();
    ComplexAP term(Rational(1), w);
    ComplexAP p(Rational(1), w);
    for (int d = 1; d <= window; ++d) {
      term = term * (p * Qw);
      p = p * qw;
      sum += term;
      dsum += ComplexAP(Rational(d), w) * term;
      const double lt = lm.term(d);
      log_abs_sum = log_add(log_abs_sum, lt);
      log_abs_dsum = log_add(log_abs_dsum, lt + std::log(static_cast<double>(d)));
    }
    term = ComplexAP(Rational(1), w);
    p = qw;
    for (int m = 1; m <= window; ++m) {
      term = term * (p * Qi);
      p = p * qw;
      sum += term;
      dsum -= ComplexAP(Rational(m), w) * term;
      const double lt = lm.term(-m);
      log_abs_sum = log_add(log_abs_sum, lt);
      log_abs_dsum = log_add(log_abs_dsum, lt + std::log(static_cast<double>(m)));
    }
    if (sum.is_zero()) raise(ErrorCode::NearThetaZero, "theta sum vanished");
    const double log_s = log_abs(sum);
    const double log_d = dsum.is_zero() ? log_s : std::max(log_s, log_abs(dsum));

    const double tail = lm.tail(window);
    const double tail_d = tail + std::log(2.0 * (window + 2));
    if (tail > log_target + log_s || tail_d > log_target + log_d) {
      if (!adaptive) {
        raise(ErrorCode::WindowTooSmall, "tail beyond M = " + std::to_string(window) + " exceeds the tolerance");
      }
      window = std::max(window + 1, window_for(lm, log_target + std::min(log_s, log_d) - std::log(2.0 * (window + 2))));
      continue;
    }
    const double growth = std::log(6.0 * window + 20.0);
    const double round_s = log_abs_sum + growth - static_cast<double>(w) * kLn2;
    const double round_d = log_abs_dsum + growth - static_cast<double>(w) * kLn2;
    const double excess = std::max(round_s - (log_target + log_s), round_d - (log_target + log_d));
    if (excess > 0.0) {
      w += static_cast<long>(std::ceil(excess / kLn2)) + 32;
      continue;
    }
    return {sum.with_bits(bits), dsum.with_bits(bits), window, w};
  }
}

ComplexAP theta_eval(const ComplexAP& q, const ComplexAP& Q, int M) { return theta_sums(q, Q, M).theta; }

ComplexAP ell_q_eval(const ComplexAP& q, const ComplexAP& Q, int M) {
  const ThetaSums s = theta_sums(q, Q, M);
  return -(s.q_theta_prime / s.theta);
}

ComplexAP e_q_char(const ComplexAP& q, const ComplexAP& lambda, const ComplexAP& Q) {
  if (lambda.is_zero()) raise(ErrorCode::InvalidArgument, "q-character needs lambda != 0");
  return theta_eval(q, Q) / theta_eval(q, lambda * Q);
}

std::vector<LogLimitRow> q_log_limit_check(const ComplexAP& q0, const ComplexAP& Q, const std::vector<double>& ts) {
  if (Q.is_zero()) raise(ErrorCode::InvalidArgument, "q-logarithm limit needs Q != 0");
  const long bits = std::max(q0.bits(), Q.bits());
  const ComplexAP lmq = log(-Q);
  const ComplexAP lq0 = log(q0);
  const BigFloat two_pi = BigFloat::pi(bits) * BigFloat(2L, bits);
  for (long k = -3; k <= 3; ++k) {
    const ComplexAP shifted = lmq + ComplexAP(BigFloat(bits), two_pi * BigFloat(k, bits));
    const ComplexAP ratio = shifted / lq0;
    if (abs(ratio.imag()) <= BigFloat(1e-12, 64) * (abs(ratio) + BigFloat(1L, 64))) {
      raise(ErrorCode::SpiralCut, "Q lies on the spiral -q0^R where the q-logarithm limit is not defined");
    }
  }
  const ComplexAP target = log(Q);
  std::vector<LogLimitRow> rows;
  for (double t : ts) {
    if (!(t > 0.0 && t <= 1.0)) raise(ErrorCode::InvalidArgument, "t must lie in (0, 1]");
    const ComplexAP q = principal_power(q0, ComplexAP(BigFloat(t, bits), BigFloat(bits)));
    const ComplexAP value = (q - ComplexAP(Rational(1), bits)) * ell_q_eval(q, Q);
    rows.push_back({t, value, abs(value - target).to_double()});
  }
  return rows;
}

std::vector<Rational> falling_factorial_coefficients(int k) {
  std::vector<Rational> c{Rational(1)};
  for (int r = 0; r < k; ++r) {
    std::vector<Rational> next(c.size() + 1, Rational(0));
    for (std::size_t a = 0; a < c.size(); ++a) {
      next[a + 1] += c[a];
      next[a] -= Rational(r) * c[a];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace qconf

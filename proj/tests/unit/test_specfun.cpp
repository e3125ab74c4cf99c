#include <gtest/gtest.h>

#include <cmath>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/printers.hpp"
#include "qconf/specfun.hpp"

using namespace qconf;

namespace {

constexpr long kBits = 256;

ComplexAP c(double re, double im = 0.0) { return ComplexAP(re, im, kBits); }

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(QPochhammer, FiniteProductMatchesOracle) {
  gen::Gen g(20);
  for (int trial = 0; trial < 40; ++trial) {
    const Rational x = g.rational(), q = g.small_q();
    const int d = g.integer(0, 7);
    EXPECT_EQ(qpochhammer(x, q, d), oracle::pochhammer(x, q, d));
  }
}

TEST(QPochhammer, InfiniteProductWithinBound) {
  gen::Gen g(21);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexAP q = g.point(0.1, 0.8, kBits), x = g.point(0.1, 2.0, kBits);
    const auto r = qpochhammer_inf(x, q, 1e-25);
    const auto ref = oracle::pochhammer_inf(oracle::to_cplx(x), oracle::to_cplx(q));
    EXPECT_NEAR(r.value.real().to_double(), ref.real(), 1e-12 * (1 + std::abs(ref)));
    EXPECT_NEAR(r.value.imag().to_double(), ref.imag(), 1e-12 * (1 + std::abs(ref)));
    EXPECT_LE(r.error_bound, 1.01e-25 * abs(r.value).to_double());
  }
}

TEST(QPochhammer, InfiniteProductNeedsSmallModulus) {
  EXPECT_EQ(code_of([] { (void)qpochhammer_inf(c(0.5), c(1.0), 1e-10); }), ErrorCode::ModulusQNotLessThanOne);
}

TEST(Theta, MatchesTripleProduct) {
  gen::Gen g(22);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexAP q = g.point(0.1, 0.8, kBits), Q = g.point(0.2, 4.0, kBits);
    try {
      check_theta_zero_distance(q, Q, 1e-2);
    } catch (const Error&) {
      continue;
    }
    const auto ref = oracle::theta_triple_product(oracle::to_cplx(q), oracle::to_cplx(Q));
    const auto th = oracle::to_cplx(theta_eval(q, Q));
    EXPECT_LT(std::abs(th - ref), 1e-10 * (1 + std::abs(ref))) << trial;
  }
}

TEST(Theta, FunctionalEquation) {
  gen::Gen g(23);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexAP q = g.point(0.1, 0.9, kBits), Q = g.point(0.2, 3.0, kBits);
    EXPECT_LT(abs(Q * theta_eval(q, q * Q) - theta_eval(q, Q)).to_double(), 1e-40);
  }
}

TEST(Theta, SumsReportDerivative) {
  const ComplexAP q = c(0.3), Q = c(0.7);
  const auto s = theta_sums(q, Q);
  // Q theta'(Q) by a symmetric difference in double precision.
  const double h = 1e-6;
  const double num = (oracle::theta_triple_product(0.3, 0.7 + h) - oracle::theta_triple_product(0.3, 0.7 - h)).real() / (2 * h);
  EXPECT_NEAR(s.q_theta_prime.real().to_double(), 0.7 * num, 1e-7);
  EXPECT_GT(s.window, 0);
}

TEST(Theta, ExplicitWindowTooSmallRaises) {
  EXPECT_EQ(code_of([] { (void)theta_eval(c(0.9), c(1.0), 2); }), ErrorCode::WindowTooSmall);
}

TEST(Theta, ModulusMustBeBelowOne) {
  EXPECT_EQ(code_of([] { (void)theta_eval(c(1.2), c(1.0)); }), ErrorCode::ModulusQNotLessThanOne);
}

TEST(Theta, WindowCoefficients) {
  const auto w = make_theta_window(Rational(1, 2), 3);
  EXPECT_EQ(w.coefficients.at(0), Rational(1));
  EXPECT_EQ(w.coefficients.at(1), Rational(1));
  EXPECT_EQ(w.coefficients.at(2), Rational(1, 2));
  EXPECT_EQ(w.coefficients.at(-1), Rational(1, 2));
  EXPECT_EQ(w.coefficients.at(3), Rational(1, 8));
}

TEST(QLog, MatchesProductOracle) {
  gen::Gen g(24);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexAP q = g.point(0.1, 0.8, kBits), Q = g.point(0.2, 3.0, kBits);
    try {
      check_theta_zero_distance(q, Q, 1e-2);
    } catch (const Error&) {
      continue;
    }
    const auto ref = oracle::ell_from_product(oracle::to_cplx(q), oracle::to_cplx(Q));
    const auto v = oracle::to_cplx(ell_q_eval(q, Q));
    EXPECT_LT(std::abs(v - ref), 1e-9 * (1 + std::abs(ref)));
  }
}

TEST(QLog, ShiftAddsOne) {
  gen::Gen g(25);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexAP q = g.point(0.2, 0.8, kBits), Q = g.point(0.3, 2.5, kBits);
    try {
      check_theta_zero_distance(q, Q, 1e-2);
      check_theta_zero_distance(q, q * Q, 1e-2);
    } catch (const Error&) {
      continue;
    }
    EXPECT_LT(abs(ell_q_eval(q, q * Q) - ell_q_eval(q, Q) - c(1)).to_double(), 1e-30);
  }
}

TEST(QLog, NearThetaZeroRaises) {
  EXPECT_EQ(code_of([] { (void)ell_q_eval(c(0.5), c(-0.5)); }), ErrorCode::NearThetaZero);
  EXPECT_EQ(code_of([] { (void)ell_q_eval(c(0.5), c(-1.0)); }), ErrorCode::NearThetaZero);
}

TEST(QLog, LimitApproachesPrincipalLog) {
  std::vector<double> ts;
  for (int k = 1; k <= 12; ++k) ts.push_back(std::ldexp(1.0, -k));
  for (const auto& Q : {c(2.0), c(1.0, 1.0), c(0.3)}) {
    const auto rows = q_log_limit_check(c(0.5), Q, ts);
    ASSERT_EQ(rows.size(), ts.size());
    for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_LT(rows[k].error, rows[k - 1].error);
    EXPECT_LT(rows.back().error, 1e-3);
  }
}

TEST(QLog, LimitOnSpiralCutRaises) {
  EXPECT_EQ(code_of([] { (void)q_log_limit_check(c(0.5), c(-2.0), {0.5}); }), ErrorCode::SpiralCut);
}

TEST(QCharacter, EigenfunctionOfSigma) {
  gen::Gen g(26);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexAP q = g.point(0.2, 0.8, kBits), Q = g.point(0.3, 2.5, kBits), lambda = g.point(0.5, 2.0, kBits);
    try {
      for (const auto& p : {Q, q * Q, lambda * Q, lambda * q * Q}) check_theta_zero_distance(q, p, 1e-2);
    } catch (const Error&) {
      continue;
    }
    EXPECT_LT(abs(e_q_char(q, lambda, q * Q) - lambda * e_q_char(q, lambda, Q)).to_double(), 1e-30);
  }
}

TEST(QCharacter, ZeroLambdaRaises) {
  EXPECT_EQ(code_of([] { (void)e_q_char(c(0.5), c(0.0), c(1.0)); }), ErrorCode::InvalidArgument);
}

TEST(LogBinomial, StirlingCoefficients) {
  EXPECT_EQ(falling_factorial_coefficients(4),
            (std::vector<Rational>{Rational(0), Rational(-6), Rational(11), Rational(-6), Rational(1)}));
  EXPECT_EQ(falling_factorial_coefficients(0), (std::vector<Rational>{Rational(1)}));
}

TEST(LogBinomial, EvaluatesToBinomialAtIntegers) {
  for (int k = 0; k <= 5; ++k) {
    const auto b = log_binomial<Rational>(k, 2);
    for (int n = -3; n <= 8; ++n) {
      Rational expected = Rational(1);
      for (int j = 0; j < k; ++j) expected *= Rational(n - j);
      expected /= factorial(static_cast<unsigned>(k));
      EXPECT_EQ(b.at_log_value(Rational(n)).coeff(0), expected) << "k=" << k << " n=" << n;
    }
  }
}

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/printers.hpp"
#include "qconf/rings.hpp"

using namespace qconf;

TEST(FixedPoint, PartitionOfUnitySymbolic) {
  for (int N = 0; N <= 4; ++N) {
    const auto Lambda = symbolic_Lambdas(N);
    std::vector<RatFunc> acc(static_cast<std::size_t>(N + 1), RatFunc(0));
    for (int i = 0; i <= N; ++i) {
      const auto m = eta_to_monomial(KClassEq<RatFunc>::indicator(N, i), Lambda);
      for (int k = 0; k <= N; ++k) acc[static_cast<std::size_t>(k)] += m[static_cast<std::size_t>(k)];
    }
    EXPECT_EQ(acc[0], RatFunc(1)) << "N=" << N;
    for (int k = 1; k <= N; ++k) EXPECT_TRUE(acc[static_cast<std::size_t>(k)].is_zero()) << "N=" << N << " k=" << k;
  }
}

TEST(FixedPoint, IdempotentsMultiplyAsExpected) {
  const int N = 3;
  for (int i = 0; i <= N; ++i) {
    const auto ei = KClassEq<Rational>::indicator(N, i);
    EXPECT_EQ(ei * ei, ei);
    for (int j = 0; j <= N; ++j) {
      if (j != i) {
        EXPECT_EQ(ei * KClassEq<Rational>::indicator(N, j), KClassEq<Rational>(N, std::vector<Rational>(4, Rational(0))));
      }
    }
  }
}

TEST(FixedPoint, MonomialRoundTrip) {
  gen::Gen g(30);
  for (int trial = 0; trial < 40; ++trial) {
    const int N = g.integer(0, 4);
    const auto Lambda = g.distinct_nonzero_rationals(N + 1);
    const KClassEq<Rational> x(N, g.rationals(N + 1));
    EXPECT_EQ(monomial_to_eta(eta_to_monomial(x, Lambda), Lambda), x);
  }
}

TEST(FixedPoint, MonomialBasisIsARingMap) {
  // Product of fixed-point values equals the product of polynomials in P^{-1}
  // reduced by prod_j (1 - Lambda_j P^{-1}).
  gen::Gen g(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int N = g.integer(1, 3);
    const auto Lambda = g.distinct_nonzero_rationals(N + 1);
    const KClassEq<Rational> x(N, g.rationals(N + 1)), y(N, g.rationals(N + 1));
    const auto mx = eta_to_monomial(x, Lambda), my = eta_to_monomial(y, Lambda);
    // Evaluate the full product polynomial at each node.
    for (int i = 0; i <= N; ++i) {
      const Rational X = Rational(1) / Lambda[static_cast<std::size_t>(i)];
      Rational px(0), py(0), p(1);
      for (int k = 0; k <= N; ++k) {
        px += mx[static_cast<std::size_t>(k)] * p;
        py += my[static_cast<std::size_t>(k)] * p;
        p *= X;
      }
      EXPECT_EQ(px * py, (x * y).value(i));
    }
  }
}

TEST(FixedPoint, CoincidingParametersRaise) {
  try {
    (void)eta_to_monomial(KClassEq<Rational>::unit(1), {Rational(2), Rational(2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoincidingEquivariantParameters);
  }
}

TEST(Gamma, RingIsomorphismLawsEquivariant) {
  gen::Gen g(32);
  for (int trial = 0; trial < 60; ++trial) {
    const int N = g.integer(0, 4);
    const auto lambda = g.distinct_rationals(N + 1);
    const KClassEq<Rational> x(N, g.rationals(N + 1)), y(N, g.rationals(N + 1));
    const Rational c = g.rational();
    EXPECT_EQ(gamma_eq(x * y, lambda), gamma_eq(x, lambda) * gamma_eq(y, lambda));
    EXPECT_EQ(gamma_eq(x + y, lambda), gamma_eq(x, lambda) + gamma_eq(y, lambda));
    EXPECT_EQ(gamma_eq(c * x, lambda), c * gamma_eq(x, lambda));
    EXPECT_EQ(gamma_eq(KClassEq<Rational>::unit(N), lambda), CohClassEq<Rational>::unit(N));
    EXPECT_EQ(gamma_eq_inverse(gamma_eq(x, lambda), lambda), x);
  }
}

TEST(Gamma, RingIsomorphismLawsNonEquivariant) {
  gen::Gen g(33);
  for (int trial = 0; trial < 60; ++trial) {
    const int N = g.integer(0, 4);
    const KClassNonEq<Rational> a(N, g.rationals(N + 1)), b(N, g.rationals(N + 1));
    EXPECT_EQ(gamma_noneq(a * b), gamma_noneq(a) * gamma_noneq(b));
    EXPECT_EQ(gamma_noneq(a + b), gamma_noneq(a) + gamma_noneq(b));
    EXPECT_EQ(gamma_noneq(KClassNonEq<Rational>::unit(N)), CohClassNonEq<Rational>::unit(N));
    EXPECT_EQ(gamma_noneq_inverse(gamma_noneq(a)), a);
  }
}

TEST(Gamma, GeneratorIsNilpotent) {
  const auto pi = KClassNonEq<Rational>::generator_power(3, 1);
  EXPECT_EQ(pi * pi * pi * pi, KClassNonEq<Rational>(3, std::vector<Rational>(4, Rational(0))));
  EXPECT_EQ(gamma_noneq(pi * pi), CohClassNonEq<Rational>::generator_power(3, 2));
}

TEST(Gamma, EquivariantClassesNeedDistinctParameters) {
  try {
    (void)gamma_eq(KClassEq<Rational>::unit(1), {Rational(1), Rational(1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoincidingEquivariantParameters);
  }
}

TEST(CohomologyInterpolation, RecoversPolynomialCoefficients) {
  gen::Gen g(34);
  for (int trial = 0; trial < 30; ++trial) {
    const int N = g.integer(0, 4);
    const auto lambda = g.distinct_rationals(N + 1);
    const auto coeffs = g.rationals(N + 1);
    std::vector<Rational> values;
    for (const auto& l : lambda) {
      Rational v(0), p(1);
      for (const auto& c : coeffs) {
        v += c * p;
        p *= l;
      }
      values.push_back(v);
    }
    EXPECT_EQ(coh_eq_to_monomial(CohClassEq<Rational>(N, values), lambda), coeffs);
  }
}

TEST(NonEquivariantLimit, OfPowersOfTheLineBundle) {
  // Values Lambda_i^{-1} are the class P^{-1} = 1 - pi.
  for (int N = 1; N <= 3; ++N) {
    std::vector<RatFunc> v;
    for (int i = 0; i <= N; ++i) v.push_back(RatFunc(1) / RatFunc::Lambda(i));
    const auto lim = noneq_limit(KClassEq<RatFunc>(N, v));
    EXPECT_EQ(lim.coefficient(0), RatFunc(1));
    EXPECT_EQ(lim.coefficient(1), RatFunc(-1));
    for (int k = 2; k <= N; ++k) EXPECT_TRUE(lim.coefficient(k).is_zero());
  }
}

TEST(NonEquivariantLimit, SingleIdempotentHasNoLimit) {
  try {
    (void)noneq_limit(KClassEq<RatFunc>::indicator(1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateBasis);
  }
}

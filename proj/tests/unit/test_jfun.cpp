#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/printers.hpp"
#include "qconf/jfun.hpp"
#include "qconf/qop.hpp"

using namespace qconf;

namespace {

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

TEST(JKNonEq, LogFreePartMatchesOracle) {
  for (const Rational& q : {Rational(1, 2), Rational(-2, 3), Rational(3, 7)}) {
    for (int N = 0; N <= 3; ++N) {
      const auto J = build_jk_noneq<Rational>(N, 5, q);
      for (int i = 0; i <= N; ++i) {
        for (int d = 0; d <= 5; ++d) {
          EXPECT_EQ(J.components[static_cast<std::size_t>(i)].part(0).coeff(d), oracle::k_noneq_logfree(N, d, i, q))
              << "N=" << N << " i=" << i << " d=" << d;
        }
      }
    }
  }
}

TEST(JKNonEq, SymbolicLowDegreeValues) {
  const auto J = build_jk_noneq<RatFunc>(1, 1, RatFunc::q());
  const RatFunc q = RatFunc::q();
  // Frozen from the oracle: 1/(1 - q)^2 at Q^1.
  EXPECT_EQ(J.components[0].part(0).coeff(1), RatFunc(1) / ((q - RatFunc(1)) * (q - RatFunc(1))));
  // -binom(L, 1) contributes -L to the pi^1 component.
  EXPECT_EQ(J.components[1].part(1).coeff(0), RatFunc(-1));
  EXPECT_EQ(J.components[1].part(0).coeff(0), RatFunc(0));
}

TEST(JKNonEq, EvaluatedAtRationalQMatchesSymbolic) {
  const auto Js = build_jk_noneq<RatFunc>(2, 3, RatFunc::q());
  const auto Jr = build_jk_noneq<Rational>(2, 3, Rational(2, 5));
  for (int i = 0; i <= 2; ++i) {
    for (int a = 0; a <= Js.components[static_cast<std::size_t>(i)].stored_degree(); ++a) {
      for (int d = 0; d <= 3; ++d) {
        const Rational v = ratfunc_eval(Js.components[static_cast<std::size_t>(i)].part(a).coeff(d),
                                        std::map<int, Rational>{{kVarQ, Rational(2, 5)}});
        EXPECT_EQ(v, Jr.components[static_cast<std::size_t>(i)].part_or_zero(a).coeff(d));
      }
    }
  }
}

TEST(JKNonEq, DecompositionAgreesWithFbRoute) {
  for (int N = 0; N <= 3; ++N) {
    for (int D = 0; D <= 5; ++D) {
      const auto J = build_jk_noneq<Rational>(N, D, Rational(1, 3));
      const auto a = decompose_ji(J);
      const auto b = assemble_ji_from_fb<Rational>(N, D, Rational(1, 3));
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]) << "N=" << N << " D=" << D << " i=" << i;
    }
  }
  const auto Js = build_jk_noneq<RatFunc>(2, 3, RatFunc::q());
  const auto fb = assemble_ji_from_fb<RatFunc>(2, 3, RatFunc::q());
  for (std::size_t i = 0; i < fb.size(); ++i) EXPECT_EQ(decompose_ji(Js)[i], fb[i]);
}

TEST(JKNonEq, SolvesTheQDifferenceEquation) {
  for (int N = 0; N <= 2; ++N) {
    const auto J = build_jk_noneq<RatFunc>(N, 5, RatFunc::q());
    const auto op = make_kth_operator_noneq<RatFunc>(N, RatFunc::q());
    for (const auto& c : J.components) EXPECT_TRUE(residual(op, c).is_zero());
  }
}

TEST(JKNonEq, RejectsBadArguments) {
  EXPECT_EQ(code_of([] { (void)build_jk_noneq<Rational>(-1, 3, Rational(1, 2)); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { (void)build_jk_noneq<Rational>(1, -1, Rational(1, 2)); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { (void)build_jk_noneq<Rational>(1, 2, Rational(1)); }), ErrorCode::QEqualsOne);
  EXPECT_EQ(code_of([] { (void)f_b<Rational>(2, 3, 2, Rational(1, 2)); }), ErrorCode::InvalidArgument);
}

TEST(JKEq, ColumnsMatchOracle) {
  gen::Gen g(40);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = g.integer(0, 3);
    const Rational q = g.small_q();
    std::vector<Rational> Lambda;
    for (int i = 0; i <= N; ++i) Lambda.push_back(Rational(i + 2) * Rational(g.integer(1, 5), 7) + Rational(i, 11));
    JSeriesEq<Rational> J;
    try {
      J = build_jk_eq<Rational>(N, 4, q, Lambda);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::ResonantParameters);
      continue;
    }
    for (int i = 0; i <= N; ++i) {
      const auto& col = J.columns[static_cast<std::size_t>(i)];
      EXPECT_EQ(col.sigma_factor, Rational(1) / Lambda[static_cast<std::size_t>(i)]);
      for (int d = 0; d <= 4; ++d) EXPECT_EQ(col.series.coeff(d), oracle::k_eq_coefficient(i, d, q, Lambda));
    }
  }
}

TEST(JKEq, ResonantParametersRaise) {
  // q Lambda_1 / Lambda_0 = 1.
  EXPECT_EQ(code_of([] { (void)build_jk_eq<Rational>(1, 2, Rational(1, 2), {Rational(1), Rational(2)}); }),
            ErrorCode::ResonantParameters);
}

TEST(JKEq, NumericParametersFollowExponentialMap) {
  const ComplexAP q(Rational(1, 2), 256), z(Rational(2), 256);
  const std::vector<ComplexAP> lambda{ComplexAP(Rational(0), 256), ComplexAP(Rational(1, 3), 256)};
  const auto L = lambda_to_Lambda(q, z, lambda);
  EXPECT_NEAR(L[1].real().to_double(), std::pow(0.5, -1.0 / 6.0), 1e-15);
  const auto J = build_jk_eq_numeric(1, 4, q, z, lambda);
  const auto op = make_kth_operator<ComplexAP>(J.Lambda, q);
  for (const auto& col : J.columns) {
    const auto r = residual(op, col);
    for (int d = 0; d <= r.order(); ++d) EXPECT_LT(abs(r.coeff(d)).to_double(), 1e-60);
  }
}

TEST(JCohEq, ColumnsMatchOracle) {
  const std::vector<Rational> lambda{Rational(0), Rational(1, 3), Rational(17, 21)};
  for (const Rational& z : {Rational(1), Rational(2, 3)}) {
    const auto J = build_jcoh_eq<Rational>(2, 5, z, lambda);
    for (int i = 0; i <= 2; ++i) {
      EXPECT_EQ(J.columns[static_cast<std::size_t>(i)].exponent, lambda[static_cast<std::size_t>(i)] / z);
      for (int d = 0; d <= 5; ++d) {
        EXPECT_EQ(J.columns[static_cast<std::size_t>(i)].series.coeff(d), oracle::coh_eq_coefficient(i, d, z, lambda));
      }
    }
  }
  // Frozen anchor: (i = 0, d = 1) with lambda = (0, 1/3), z = 1 is 3/2.
  EXPECT_EQ(build_jcoh_eq<Rational>(1, 1, Rational(1), {Rational(0), Rational(1, 3)}).columns[0].series.coeff(1), Rational(3, 2));
}

TEST(JCohEq, ResonanceRaises) {
  EXPECT_EQ(code_of([] { (void)build_jcoh_eq<Rational>(1, 2, Rational(1), {Rational(0), Rational(1)}); }),
            ErrorCode::ResonantParameters);
}

TEST(JCohNonEq, CoefficientsMatchOracle) {
  for (int N = 0; N <= 3; ++N) {
    for (const Rational& z : {Rational(1), Rational(3, 2)}) {
      const auto J = build_jcoh_noneq<Rational>(N, 4, z);
      for (int i = 0; i <= N; ++i) {
        for (int a = 0; a <= i; ++a) {
          for (int d = 0; d <= 4; ++d) {
            EXPECT_EQ(J.components[static_cast<std::size_t>(i)].part(a).coeff(d), oracle::coh_noneq_coefficient(N, d, i, a, z))
                << "N=" << N << " i=" << i << " a=" << a << " d=" << d;
          }
        }
      }
    }
  }
}

TEST(JCohNonEq, ProjectivePlaneDisplayedValues) {
  const auto J = build_jcoh_noneq<Rational>(2, 2, Rational(1));
  EXPECT_EQ(J.components[0].part(0).coeff(1), Rational(1));
  EXPECT_EQ(J.components[1].part(0).coeff(1), Rational(-3));
  EXPECT_EQ(J.components[2].part(0).coeff(1), Rational(6));
  EXPECT_EQ(J.components[0].part(0).coeff(2), Rational(1, 8));
  EXPECT_EQ(J.components[1].part(0).coeff(2), Rational(-9, 16));
  EXPECT_EQ(J.components[2].part(0).coeff(2), Rational(3, 2));
}

TEST(JCohNonEq, TwoRoutesAgree) {
  for (int N = 0; N <= 3; ++N) {
    for (int D = 0; D <= 6; ++D) {
      const auto a = build_jcoh_noneq<Rational>(N, D, Rational(2, 5));
      const auto b = build_jcoh_noneq_direct<Rational>(N, D, Rational(2, 5));
      for (int i = 0; i <= N; ++i) EXPECT_EQ(a.components[static_cast<std::size_t>(i)], b.components[static_cast<std::size_t>(i)]);
    }
  }
}

TEST(Helpers, ElementarySymmetricMatchesSubsets) {
  gen::Gen g(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto xs = g.rationals(g.integer(0, 6));
    const int n = g.integer(0, 4);
    const auto e = detail::elementary_symmetric<Rational>(xs, n, {});
    for (int k = 0; k <= n; ++k) EXPECT_EQ(e[static_cast<std::size_t>(k)], oracle::elementary_by_subsets(xs, k));
  }
}

TEST(Helpers, NilpotentInverse) {
  const auto inv = detail::nil_linear_inverse(Rational(2), Rational(3), 3);
  const auto prod = detail::nil_mul<Rational>(inv, {Rational(2), Rational(3)}, 3, Rational(0));
  EXPECT_EQ(prod, (std::vector<Rational>{Rational(1), Rational(0), Rational(0), Rational(0)}));
}

TEST(Fundamental, RowsAreDeltaPowersOfPulledBackColumns) {
  const auto J = build_jk_eq<Rational>(1, 4, Rational(1, 3), {Rational(1), Rational(5, 2)});
  const auto X = build_fundamental(J, Rational(1));
  EXPECT_EQ(X.scale, pullback_scale(1, Rational(1, 3), Rational(1)));
  EXPECT_EQ(X.scale, Rational(4, 9));
  for (int i = 0; i <= 1; ++i) {
    const QCharColumn<Rational> c0{X.sigma_factors[static_cast<std::size_t>(i)], X.entries[0][static_cast<std::size_t>(i)]};
    EXPECT_EQ(char_delta(c0, Rational(1, 3)).series, X.entries[1][static_cast<std::size_t>(i)]);
    EXPECT_EQ(X.entries[0][static_cast<std::size_t>(i)].coeff(2),
              J.columns[static_cast<std::size_t>(i)].series.coeff(2) * pow(X.scale, 2));
  }
}

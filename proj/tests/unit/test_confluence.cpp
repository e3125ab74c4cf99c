#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/printers.hpp"
#include "qconf/confluence.hpp"
#include "qconf/convergence.hpp"
#include "qconf/qop.hpp"

using namespace qconf;

namespace {

constexpr long kBits = 256;

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

std::vector<double> grid() { return {1e-1, 1e-2, 1e-3, 1e-4}; }

}  // namespace

TEST(Transform, EquivariantColumnsSolvePulledBackEquation) {
  const Rational q(1, 3), z(3, 2);
  const std::vector<Rational> Lambda{Rational(1), Rational(5, 2), Rational(-2, 7)};
  const auto T = transform_eq(build_fundamental(build_jk_eq<Rational>(2, 6, q, Lambda), z));
  const auto op = pullback_op(make_kth_operator(Lambda, q), z);
  for (int i = 0; i <= 2; ++i) {
    const QCharColumn<Rational> col{T.sigma_factors[static_cast<std::size_t>(i)], T.entries[0][static_cast<std::size_t>(i)]};
    EXPECT_TRUE(residual(op, col).is_zero()) << "column " << i;
    // Rows are successive delta_q powers.
    EXPECT_EQ(char_delta(col, q).series, T.entries[1][static_cast<std::size_t>(i)]);
  }
}

TEST(Transform, NumericEquivariantResidualIsSmall) {
  const std::vector<Rational> lambda{Rational(0), Rational(1, 3)};
  for (double t : {0.1, 0.01}) {
    const ComplexAP q = q_at(ComplexAP(Rational(1, 2), kBits), t);
    const auto T = transformed_eq_at(1, 5, q, Rational(1), lambda);
    std::vector<ComplexAP> lc;
    for (const auto& l : lambda) lc.push_back(ComplexAP(l, kBits));
    const auto op = pullback_op(make_kth_operator(lambda_to_Lambda(q, ComplexAP(Rational(1), kBits), lc), q), ComplexAP(Rational(1), kBits));
    for (int i = 0; i <= 1; ++i) {
      const auto r = residual(op, QCharColumn<ComplexAP>{T.sigma_factors[static_cast<std::size_t>(i)], T.entries[0][static_cast<std::size_t>(i)]});
      for (int d = 0; d <= r.order(); ++d) EXPECT_LT(abs(r.coeff(d)).to_double(), 1e-10);
    }
  }
}

TEST(Transform, NonEquivariantIsInvertible) {
  for (int N = 0; N <= 3; ++N) {
    const Rational q(2, 5), z(3, 2);
    const auto X = build_fundamental(build_jk_noneq<Rational>(N, 4, q), z);
    const auto T = transform_noneq(X);
    const auto back = inverse_transform_noneq(T);
    EXPECT_EQ(back.scale, X.scale);
    for (int l = 0; l <= N; ++l) {
      for (int i = 0; i <= N; ++i) {
        EXPECT_EQ(back.entries[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)],
                  X.entries[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)]);
      }
    }
    // Column i carries ((1-q)/z)^i.
    if (N >= 1) {
      EXPECT_EQ(T.entries[0][1], ((Rational(1) - q) / z) * X.entries[0][1]);
    }
  }
}

TEST(Transform, NonEquivariantColumnsStillSolveTheSystem) {
  const Rational q(1, 3), z(1);
  const int N = 2;
  const auto T = transform_noneq(build_fundamental(build_jk_noneq<Rational>(N, 5, q), z));
  const auto sys = companion(pulled_back_operator(make_kth_operator_noneq(N, q), z));
  // Column scaling commutes with the system, so the transform is again a solution.
  const auto R = companion_residual(sys, inverse_transform_noneq(T));
  for (const auto& row : R) {
    for (const auto& r : row) EXPECT_TRUE(r.is_zero());
  }
  for (int i = 0; i <= N; ++i) {
    EXPECT_TRUE(residual(pullback_op(make_kth_operator_noneq(N, q), z), T.entries[0][static_cast<std::size_t>(i)]).is_zero());
  }
}

TEST(CohCoefficient, MatchesOracleAndFlagsResonance) {
  gen::Gen g(70);
  for (int trial = 0; trial < 30; ++trial) {
    const int N = g.integer(0, 3);
    const auto lambda = g.distinct_rationals(N + 1);
    const Rational z = g.nonzero_rational();
    const int i = g.integer(0, N), d = g.integer(0, 4);
    Rational got;
    try {
      got = coh_eq_coefficient(i, d, z, lambda);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ResonantParameters);
      continue;
    }
    EXPECT_EQ(got, oracle::coh_eq_coefficient(i, d, z, lambda));
  }
  EXPECT_EQ(code_of([] { (void)coh_eq_coefficient(0, 2, Rational(1), {Rational(0), Rational(1)}); }),
            ErrorCode::ResonantParameters);
}

TEST(Limit, EquivariantLimitMatchesCohomology) {
  const std::vector<Rational> lambda{Rational(0), Rational(1, 3)};
  const ComplexAP q0(Rational(1, 2), kBits);
  std::vector<TransformedEq<ComplexAP>> Ts;
  for (double t : grid()) Ts.push_back(transformed_eq_at(1, 3, q_at(q0, t), Rational(1), lambda));
  const auto lim = limit_eq(Ts, grid(), Rational(1), lambda, 1e-3);
  EXPECT_TRUE(lim.report.pass());
  EXPECT_TRUE(lim.gamma_match);
  EXPECT_LT(lim.gamma_max_error, 1e-3);
  ASSERT_EQ(lim.exponents.size(), 2U);
  EXPECT_EQ(lim.exponents[1], Rational(1, 3));
  for (const auto& row : lim.report.rows) {
    if (row.exact_target) {
      EXPECT_LT(row.final_error, 1e-3) << row.basis << " Q^" << row.qdeg;
    }
  }
}

TEST(Limit, NonEquivariantLimitMatchesCohomology) {
  const ComplexAP q0(Rational(1, 2), kBits);
  std::vector<TransformedNonEq<ComplexAP>> Ts;
  for (double t : grid()) Ts.push_back(transformed_noneq_at(1, 3, q_at(q0, t), Rational(1)));
  const auto lim = limit_noneq(Ts, grid(), Rational(1), 1e-3);
  EXPECT_TRUE(lim.report.pass());
  EXPECT_TRUE(lim.gamma_match);
  // The leading coefficient of the pi^0 component tends to 1.
  EXPECT_LT(abs(lim.assembled.components[0].part(0).coeff(0) - ComplexAP(Rational(1), kBits)).to_double(), 1e-3);
}

TEST(Limit, LimitNeedsMatchingGrid) {
  const ComplexAP q0(Rational(1, 2), kBits);
  std::vector<TransformedNonEq<ComplexAP>> Ts{transformed_noneq_at(1, 2, q_at(q0, 0.1), Rational(1))};
  EXPECT_THROW((void)limit_noneq(Ts, grid(), Rational(1), 1e-3), Error);
}

TEST(MainTheorem, BothVariantsPass) {
  MainTheoremParams p;
  p.q0 = ComplexAP(Rational(1, 2), kBits);
  p.ts = grid();
  p.variant = Variant::Eq;
  p.N = 1;
  p.lambda = {Rational(0), Rational(1, 3)};
  const auto eq = main_theorem_report(p);
  EXPECT_TRUE(eq.pass());
  EXPECT_EQ(eq.variant, Variant::Eq);

  p.variant = Variant::NonEq;
  p.N = 2;
  p.lambda.clear();
  const auto ne = main_theorem_report(p);
  EXPECT_TRUE(ne.pass());
  EXPECT_LT(ne.gamma_max_error, 1e-3);
}

TEST(MainTheorem, ResonanceIsReportedBeforeLimits) {
  MainTheoremParams p;
  p.q0 = ComplexAP(Rational(1, 2), kBits);
  p.ts = grid();
  p.N = 1;
  p.lambda = {Rational(0), Rational(1)};
  EXPECT_EQ(code_of([&] { (void)main_theorem_report(p); }), ErrorCode::ResonantParameters);
}

TEST(MainTheorem, LambdaCountMustMatch) {
  MainTheoremParams p;
  p.q0 = ComplexAP(Rational(1, 2), kBits);
  p.ts = grid();
  p.N = 2;
  p.lambda = {Rational(0), Rational(1, 3)};
  EXPECT_EQ(code_of([&] { (void)main_theorem_report(p); }), ErrorCode::InvalidArgument);
}

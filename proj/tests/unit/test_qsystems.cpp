#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/printers.hpp"
#include "qconf/qop.hpp"
#include "qconf/qsystems.hpp"

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

using QR = QRatFunc<Rational>;
using QM = Matrix<QR>;

QR poly(std::vector<Rational> c) { return QR(QPoly<Rational>(std::move(c))); }

// Random matrix with entries a + b Q; upper unitriangular when `unimodular`.
QM random_qmatrix(gen::Gen& g, int n, bool unimodular) {
  QM m(n, n, QR::constant(Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (unimodular && j < i) continue;
      m(i, j) = (unimodular && i == j) ? QR::constant(Rational(1)) : poly({g.rational(), g.rational()});
    }
  }
  return m;
}

ComplexAP c(const Rational& re, const Rational& im = Rational(0)) { return ComplexAP(re, im, kBits); }

SauloyOptions base_options() {
  SauloyOptions opt;
  opt.q0 = c(Rational(1, 2));
  opt.ts = {1e-1, 1e-2, 1e-3, 1e-4};
  opt.samples = {c(Rational(0)), c(Rational(1, 2)), c(Rational(1), Rational(1))};
  return opt;
}

}  // namespace

TEST(Matrices, DeterminantAndAdjugate) {
  gen::Gen g(60);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = g.integer(1, 4);
    Matrix<Rational> m(n, n, Rational(0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = g.rational();
    }
    const Rational det = determinant(m);
    const auto prod = m * adjugate(m, Rational(1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) EXPECT_EQ(prod(i, j), i == j ? det : Rational(0));
    }
  }
  Matrix<Rational> v(3, 3, Rational(0));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) v(i, j) = pow(Rational(i + 2), j);
  }
  // Vandermonde on 2, 3, 4.
  EXPECT_EQ(determinant(v), Rational(2));
}

TEST(Gauge, RoundTripRestoresSystem) {
  gen::Gen g(61);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = g.integer(1, 3);
    const Rational q = g.small_q();
    const QSystem<Rational> sys{q, random_qmatrix(g, n, false)};
    const QM F = random_qmatrix(g, n, true);
    const auto back = gauge(gauge(sys, F), inverse_qmatrix(F));
    EXPECT_EQ(back.A, sys.A);
  }
}

TEST(Gauge, ComposesAsAProduct) {
  gen::Gen g(62);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = g.integer(1, 3);
    const QSystem<Rational> sys{g.small_q(), random_qmatrix(g, n, false)};
    const QM F = random_qmatrix(g, n, true), G = random_qmatrix(g, n, true);
    EXPECT_EQ(gauge(gauge(sys, F), G).A, gauge(sys, G * F).A);
  }
}

TEST(Gauge, SingularMatrixRaises) {
  QM F(2, 2, poly({Rational(1), Rational(1)}));
  const QSystem<Rational> sys{Rational(1, 2), identity_qmatrix<Rational>(2, {})};
  EXPECT_EQ(code_of([&] { (void)gauge(sys, F); }), ErrorCode::SingularGauge);
  EXPECT_EQ(code_of([&] { (void)gauge(sys, identity_qmatrix<Rational>(3, {})); }), ErrorCode::InvalidArgument);
}

TEST(Pullback, ComposesScales) {
  gen::Gen g(63);
  for (int trial = 0; trial < 15; ++trial) {
    const QSystem<Rational> sys{g.small_q(), random_qmatrix(g, 2, false)};
    const Rational a = g.nonzero_rational(), b = g.nonzero_rational();
    EXPECT_EQ(pullback_system(pullback_system(sys, a), b).A, pullback_system(sys, a * b).A);
    EXPECT_EQ(pullback_system(sys, a).A(0, 0).eval(a), sys.A(0, 0).eval(Rational(1)));
  }
}

TEST(Pullback, ZeroScaleRaises) {
  const QSystem<Rational> sys{Rational(1, 2), identity_qmatrix<Rational>(2, {})};
  EXPECT_EQ(code_of([&] { (void)pullback_system(sys, Rational(0)); }), ErrorCode::ZeroScale);
}

TEST(RegularSingular, CompanionOfKTheoreticOperator) {
  const auto sys = companion(make_kth_operator<Rational>({Rational(2), Rational(3)}, Rational(1, 2)));
  const auto w = is_regular_singular_witness(sys);
  EXPECT_TRUE(w.witness());
  // det A(0) = a_0(0) / a_2 = 1/6.
  EXPECT_EQ(*w.det_A0, Rational(1, 6));
}

TEST(RegularSingular, PoleAtZeroIsNoWitness) {
  QM A(1, 1, QR(QPoly<Rational>({Rational(1)}), QPoly<Rational>({Rational(0), Rational(1)})));
  const auto w = is_regular_singular_witness(QSystem<Rational>{Rational(1, 2), A});
  EXPECT_FALSE(w.defined_at_zero);
  EXPECT_FALSE(w.witness());
  QM B(1, 1, poly({Rational(0), Rational(1)}));
  const auto wb = is_regular_singular_witness(QSystem<Rational>{Rational(1, 2), B});
  EXPECT_TRUE(wb.defined_at_zero);
  EXPECT_FALSE(wb.invertible_at_zero);
}

TEST(Eigen, EigenpairsOfRandomMatrices) {
  gen::Gen g(64);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = g.integer(1, 4);
    Matrix<ComplexAP> M(n, n, c(Rational(0)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) M(i, j) = g.point(0.1, 3.0, kBits);
    }
    const auto eig = eigenvalues(M);
    ASSERT_EQ(static_cast<int>(eig.size()), n);
    const auto V = eigenvectors(M, eig);
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        ComplexAP mv = c(Rational(0));
        for (int j = 0; j < n; ++j) mv = mv + M(i, j) * V(j, k);
        EXPECT_LT(abs(mv - eig[static_cast<std::size_t>(k)] * V(i, k)).to_double(), 1e-40);
      }
    }
  }
}

TEST(Eigen, CharacteristicPolynomialOfDiagonal) {
  Matrix<ComplexAP> M(2, 2, c(Rational(0)));
  M(0, 0) = c(Rational(2));
  M(1, 1) = c(Rational(3));
  const auto p = characteristic_polynomial(M);
  EXPECT_NEAR(p[0].real().to_double(), 6.0, 1e-60);
  EXPECT_NEAR(p[1].real().to_double(), -5.0, 1e-60);
  EXPECT_NEAR(p[2].real().to_double(), 1.0, 1e-60);
}

TEST(Resonance, QNonresonance) {
  const ComplexAP q = c(Rational(1, 2));
  EXPECT_TRUE(is_nonresonant({c(Rational(1)), c(Rational(3))}, q));
  EXPECT_FALSE(is_nonresonant({c(Rational(1)), c(Rational(1, 8))}, q));
  EXPECT_FALSE(is_nonresonant({c(Rational(2)), c(Rational(2))}, q));
  EXPECT_TRUE(is_nonresonant_differential({c(Rational(0)), c(Rational(1, 3))}));
  EXPECT_FALSE(is_nonresonant_differential({c(Rational(0)), c(Rational(2))}));
}

TEST(Resonance, SameSpiral) {
  const ComplexAP q0 = c(Rational(1, 2));
  EXPECT_TRUE(same_spiral(c(Rational(3)), c(Rational(3, 8)), q0));
  EXPECT_TRUE(same_spiral(c(Rational(3)), c(Rational(3)), q0));
  // For real q0 the spiral through a positive real is the whole positive ray.
  EXPECT_TRUE(same_spiral(c(Rational(3)), c(Rational(1)), q0));
  EXPECT_FALSE(same_spiral(c(Rational(3)), c(Rational(-3, 2)), q0));
  EXPECT_FALSE(same_spiral(c(Rational(3)), c(Rational(1), Rational(1)), q0));
}

TEST(Sauloy, DiagonalPowerFamilyIsConfluent) {
  auto opt = base_options();
  const std::vector<ComplexAP> ex{c(Rational(0)), c(Rational(1, 3))};
  const auto rep = sauloy_confluence_check(diagonal_power_family(ex), opt);
  EXPECT_TRUE(rep.pass());
  EXPECT_TRUE(rep.sample_based);
  ASSERT_EQ(rep.limit_exponents.size(), 2U);
  for (const auto& row : rep.condition_ii) EXPECT_LT(row.final_error, 1e-3);
}

TEST(Sauloy, EquivariantCompanionFamilyIsConfluent) {
  auto opt = base_options();
  const ComplexAP z = c(Rational(1));
  const std::vector<ComplexAP> lam{c(Rational(0)), c(Rational(1, 3))};
  opt.limit = coh_companion_limit(z, lam);
  const auto rep = sauloy_confluence_check(kth_eq_companion_family(z, lam), opt);
  EXPECT_TRUE(rep.condition_i);
  EXPECT_TRUE(rep.condition_ii_pass);
  EXPECT_TRUE(rep.condition_iii);
  EXPECT_TRUE(rep.condition_iv);
  // Exponents of the limit at Q = 0 are lambda_i / z.
  ASSERT_EQ(rep.limit_exponents.size(), 2U);
  double best = 1;
  for (const auto& e : rep.limit_exponents) best = std::min(best, abs(e - c(Rational(1, 3))).to_double());
  EXPECT_LT(best, 1e-20);
}

TEST(Sauloy, NonEquivariantFamilyIsJordan) {
  auto opt = base_options();
  const ComplexAP z = c(Rational(1));
  opt.limit = coh_companion_limit(z, {c(Rational(0)), c(Rational(0))});
  EXPECT_EQ(code_of([&] { (void)sauloy_confluence_check(kth_noneq_companion_family(1, z), opt); }),
            ErrorCode::JordanCaseUnsupported);
}

TEST(Sauloy, DivergentFamilyRaises) {
  EXPECT_EQ(code_of([] { (void)sauloy_confluence_check(divergent_control_family(2), base_options()); }),
            ErrorCode::NoConvergence);
}

TEST(Sauloy, PolesOnCommonSpiralRaise) {
  auto opt = base_options();
  opt.declared_poles = {c(Rational(3)), c(Rational(3, 4))};
  EXPECT_EQ(code_of([&] { (void)sauloy_confluence_check(diagonal_power_family({c(Rational(0))}), opt); }),
            ErrorCode::PolesOnCommonSpiral);
  opt.declared_poles = {c(Rational(3)), c(Rational(1), Rational(1))};
  EXPECT_TRUE(sauloy_confluence_check(diagonal_power_family({c(Rational(0))}), opt).condition_i);
}

TEST(Sauloy, BMatrixOfDiagonalFamily) {
  const ComplexAP q = c(Rational(1, 2));
  const auto B = b_matrix(diagonal_power_family({c(Rational(2))})(q), c(Rational(0)));
  // (q^2 - 1)/(q - 1) = q + 1.
  EXPECT_LT(abs(B(0, 0) - c(Rational(3, 2))).to_double(), 1e-60);
}

#include "qconf/qsystems.hpp"

#include <cmath>

#include "qconf/convergence.hpp"

namespace qconf {
namespace {

ComplexAP czero(long bits) { return ComplexAP(bits); }
ComplexAP cone(long bits) { return ComplexAP(Rational(1), bits); }

double max_abs_diff(const Matrix<ComplexAP>& a, const Matrix<ComplexAP>& b) {
  double m = 0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, abs(a(i, j) - b(i, j)).to_double());
  }
  return m;
}

ComplexAP horner(const std::vector<ComplexAP>& c, const ComplexAP& x) {
  ComplexAP acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * x + c[k];
  return acc;
}

ComplexAP horner_derivative(const std::vector<ComplexAP>& c, const ComplexAP& x) {
  const long bits = x.bits();
  ComplexAP acc = czero(bits);
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    acc = acc * x + c[k] * ComplexAP(Rational(static_cast<long>(k)), bits);
  }
  return acc;
}

}  // namespace

std::vector<ComplexAP> characteristic_polynomial(const Matrix<ComplexAP>& M) {
  const int n = M.rows();
  if (n != M.cols() || n == 0) raise(ErrorCode::InvalidArgument, "characteristic polynomial needs a square matrix");
  const long bits = M(0, 0).bits();
  std::vector<ComplexAP> c(static_cast<std::size_t>(n + 1), czero(bits));
  c[static_cast<std::size_t>(n)] = cone(bits);
  const auto I = Matrix<ComplexAP>::identity(n, czero(bits), cone(bits));
  Matrix<ComplexAP> Mk(n, n, czero(bits));
  for (int k = 1; k <= n; ++k) {
    Mk = M * Mk + scale_matrix(I, c[static_cast<std::size_t>(n - k + 1)]);
    const auto MMk = M * Mk;
    ComplexAP tr = czero(bits);
    for (int i = 0; i < n; ++i) tr = tr + MMk(i, i);
    c[static_cast<std::size_t>(n - k)] = -(tr / ComplexAP(Rational(k), bits));
  }
  return c;
}

std::vector<ComplexAP> polynomial_roots(const std::vector<ComplexAP>& coeffs) {
  std::vector<ComplexAP> c = coeffs;
  while (c.size() > 1 && c.back().is_zero()) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  const long bits = c.front().bits();
  const ComplexAP lead = c.back();
  for (auto& x : c) x = x / lead;
  if (n == 1) return {-c[0]};
  double radius = 1;
  for (int k = 0; k < n; ++k) radius = std::max(radius, 1 + abs(c[static_cast<std::size_t>(k)]).to_double());
  std::vector<ComplexAP> z;
  for (int k = 0; k < n; ++k) {
    const double ang = 2 * M_PI * k / n + 0.4;
    z.emplace_back(0.5 * radius * std::cos(ang), 0.5 * radius * std::sin(ang), bits);
  }
  const BigFloat eps = BigFloat::exp2i(-(bits - 16), 64);
  for (int iter = 0; iter < 2000; ++iter) {
    bool done = true;
    for (int i = 0; i < n; ++i) {
      const ComplexAP p = horner(c, z[static_cast<std::size_t>(i)]);
      if (p.is_zero()) continue;
      const ComplexAP ratio = p / horner_derivative(c, z[static_cast<std::size_t>(i)]);
      ComplexAP s = czero(bits);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        s = s + cone(bits) / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      }
      const ComplexAP step = ratio / (cone(bits) - ratio * s);
      z[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] - step;
      BigFloat scale = abs(z[static_cast<std::size_t>(i)]);
      if (scale < BigFloat(1L, 64)) scale = BigFloat(1L, 64);
      if (!(abs(step) <= eps * scale)) done = false;
    }
    if (done) break;
  }
  return z;
}

std::vector<ComplexAP> eigenvalues(const Matrix<ComplexAP>& M) {
  return polynomial_roots(characteristic_polynomial(M));
}

Matrix<ComplexAP> eigenvectors(const Matrix<ComplexAP>& M, const std::vector<ComplexAP>& eig) {
  const int n = M.rows();
  const long bits = M(0, 0).bits();
  Matrix<ComplexAP> V(n, static_cast<int>(eig.size()), czero(bits));
  const auto I = Matrix<ComplexAP>::identity(n, czero(bits), cone(bits));
  for (std::size_t k = 0; k < eig.size(); ++k) {
    if (n == 1) {
      V(0, static_cast<int>(k)) = cone(bits);
      continue;
    }
    const auto adj = adjugate(M - scale_matrix(I, eig[k]), cone(bits));
    int best = 0;
    double best_norm = -1;
    for (int j = 0; j < n; ++j) {
      double norm = 0;
      for (int i = 0; i < n; ++i) norm = std::max(norm, abs(adj(i, j)).to_double());
      if (norm > best_norm) {
        best_norm = norm;
        best = j;
      }
    }
    for (int i = 0; i < n; ++i) V(i, static_cast<int>(k)) = adj(i, best);
  }
  return V;
}

bool is_nonresonant(const std::vector<ComplexAP>& eig, const ComplexAP& q, int k_max, double tol) {
  const long bits = q.bits();
  for (std::size_t i = 0; i < eig.size(); ++i) {
    for (std::size_t j = 0; j < eig.size(); ++j) {
      if (i == j) continue;
      if (eig[j].is_zero()) return false;
      const ComplexAP r = eig[i] / eig[j];
      ComplexAP qk = pow(q, -k_max);
      for (int k = -k_max; k <= k_max; ++k) {
        const double scale = std::max(1.0, abs(qk).to_double());
        if (abs(r - qk).to_double() < tol * scale) return false;
        qk = qk * q;
      }
    }
  }
  (void)bits;
  return true;
}

bool is_nonresonant_differential(const std::vector<ComplexAP>& e, double tol) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      const auto d = (e[i] - e[j]).to_complex();
      if (std::abs(d.imag()) < tol && std::abs(d.real() - std::round(d.real())) < tol) return false;
    }
  }
  return true;
}

bool same_spiral(const ComplexAP& Qa, const ComplexAP& Qb, const ComplexAP& q0, double tol) {
  const ComplexAP w = log(Qa / Qb);
  const ComplexAP l = log(q0);
  const double alpha = l.real().to_double();
  if (alpha == 0) raise(ErrorCode::InvalidArgument, "spirals need |q0| != 1");
  const double k = (w * conj(l)).imag().to_double() / (2 * M_PI * alpha);
  return std::abs(k - std::round(k)) < tol * std::max(1.0, std::abs(k));
}

QSystemFamily diagonal_power_family(const std::vector<ComplexAP>& exponents) {
  return [exponents](const ComplexAP& q) {
    const long bits = q.bits();
    const int n = static_cast<int>(exponents.size());
    auto A = identity_qmatrix<ComplexAP>(n, NumericContext{bits});
    for (int k = 0; k < n; ++k) A(k, k) = QRatFunc<ComplexAP>::constant(principal_power(q, exponents[static_cast<std::size_t>(k)]));
    return QSystem<ComplexAP>{q, A};
  };
}

QSystemFamily divergent_control_family(int n) {
  return [n](const ComplexAP& q) {
    const long bits = q.bits();
    auto A = identity_qmatrix<ComplexAP>(n, NumericContext{bits});
    for (int k = 0; k < n; ++k) A(k, k) = QRatFunc<ComplexAP>::constant(ComplexAP(Rational(2), bits));
    return QSystem<ComplexAP>{q, A};
  };
}

Matrix<ComplexAP> b_matrix(const QSystem<ComplexAP>& sys, const ComplexAP& Q) {
  const long bits = sys.q.bits();
  const auto A = evaluate_matrix(sys.A, Q);
  const auto I = Matrix<ComplexAP>::identity(A.rows(), czero(bits), cone(bits));
  return scale_matrix(A - I, cone(bits) / (sys.q - cone(bits)));
}

namespace {

// Eigenvectors normalized so that component pivot[k] of column k is 1.
Matrix<ComplexAP> normalized(const Matrix<ComplexAP>& V, const std::vector<int>& pivot) {
  Matrix<ComplexAP> out = V;
  for (int k = 0; k < V.cols(); ++k) {
    const ComplexAP p = V(pivot[static_cast<std::size_t>(k)], k);
    if (field_traits<ComplexAP>::is_negligible(p)) raise(ErrorCode::NoConvergence, "eigenvector pivot vanishes");
    for (int i = 0; i < V.rows(); ++i) out(i, k) = V(i, k) / p;
  }
  return out;
}

std::vector<ComplexAP> match_order(const std::vector<ComplexAP>& eig, const std::vector<ComplexAP>& ref) {
  std::vector<ComplexAP> out;
  std::vector<bool> used(eig.size(), false);
  for (const auto& r : ref) {
    std::size_t best = 0;
    double best_d = INFINITY;
    for (std::size_t k = 0; k < eig.size(); ++k) {
      if (used[k]) continue;
      const double d = abs(eig[k] - r).to_double();
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    used[best] = true;
    out.push_back(eig[best]);
  }
  return out;
}

}  // namespace

SauloyReport sauloy_confluence_check(const QSystemFamily& family, const SauloyOptions& opt) {
  if (opt.ts.empty()) raise(ErrorCode::InvalidArgument, "t-grid is empty");
  const long bits = opt.q0.bits();
  SauloyReport rep;

  for (std::size_t a = 0; a < opt.declared_poles.size(); ++a) {
    for (std::size_t b = a + 1; b < opt.declared_poles.size(); ++b) {
      if (same_spiral(opt.declared_poles[a], opt.declared_poles[b], opt.q0)) {
        raise(ErrorCode::PolesOnCommonSpiral, "poles " + opt.declared_poles[a].to_string(12) + " and " +
                                                  opt.declared_poles[b].to_string(12) + " lie on a common q0-spiral");
      }
    }
  }
  rep.condition_i = true;

  std::vector<QSystem<ComplexAP>> systems;
  for (double t : opt.ts) systems.push_back(family(q_at(opt.q0, t)));

  // (ii)
  rep.condition_ii_pass = true;
  for (const auto& Q : opt.samples) {
    SauloySampleRow row{Q, {}, false, 0};
    std::vector<Matrix<ComplexAP>> Bs;
    for (const auto& sys : systems) Bs.push_back(b_matrix(sys, Q));
    if (opt.limit) {
      const auto target = evaluate_matrix(*opt.limit, Q);
      for (const auto& B : Bs) row.errors.push_back(max_abs_diff(B, target));
    } else {
      for (std::size_t k = 0; k + 1 < Bs.size(); ++k) row.errors.push_back(max_abs_diff(Bs[k + 1], Bs[k]));
    }
    row.monotone = errors_decreasing(row.errors);
    row.final_error = row.errors.empty() ? INFINITY : row.errors.back();
    if (!row.monotone || !(row.final_error < opt.tol)) rep.condition_ii_pass = false;
    rep.condition_ii.push_back(std::move(row));
  }
  if (!rep.condition_ii_pass) {
    raise(ErrorCode::NoConvergence, "B_q(t) does not converge at every sample point");
  }

  // (iii)
  std::optional<Matrix<ComplexAP>> B0;
  try {
    B0 = opt.limit ? evaluate_matrix(*opt.limit, czero(bits)) : b_matrix(systems.back(), czero(bits));
    rep.limit_regular_singular = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NearZeroDenominator) throw;
  }
  if (B0) {
    rep.limit_exponents = eigenvalues(*B0);
    rep.limit_nonresonant = is_nonresonant_differential(rep.limit_exponents);
  }
  const auto w = is_regular_singular_witness(systems.back());
  rep.q_side_regular_singular = w.witness();
  if (w.witness()) rep.q_side_nonresonant = is_nonresonant(eigenvalues(*w.A0), systems.back().q);
  rep.condition_iii = rep.limit_regular_singular && rep.limit_nonresonant && rep.q_side_regular_singular && rep.q_side_nonresonant;

  // (iv)
  if (B0) {
    for (std::size_t a = 0; a < rep.limit_exponents.size(); ++a) {
      for (std::size_t b = a + 1; b < rep.limit_exponents.size(); ++b) {
        if (abs(rep.limit_exponents[a] - rep.limit_exponents[b]).to_double() < 1e-8) {
          raise(ErrorCode::JordanCaseUnsupported, "repeated exponent at Q = 0; only distinct exponents are supported");
        }
      }
    }
    const auto V = eigenvectors(*B0, rep.limit_exponents);
    std::vector<int> pivot;
    for (int k = 0; k < V.cols(); ++k) {
      int best = 0;
      for (int i = 1; i < V.rows(); ++i) {
        if (abs(V(i, k)) > abs(V(best, k))) best = i;
      }
      pivot.push_back(best);
    }
    const auto P = normalized(V, pivot);
    for (const auto& sys : systems) {
      const auto Bt = b_matrix(sys, czero(bits));
      const auto eig = match_order(eigenvalues(Bt), rep.limit_exponents);
      rep.condition_iv_errors.push_back(max_abs_diff(normalized(eigenvectors(Bt, eig), pivot), P));
    }
    rep.condition_iv = errors_decreasing(rep.condition_iv_errors) && rep.condition_iv_errors.back() < opt.tol;
    if (!rep.condition_iv) raise(ErrorCode::NoConvergence, "diagonalizing transforms of B_q(0) do not converge");
  }
  return rep;
}

}  // namespace qconf

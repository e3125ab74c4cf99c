#pragma once

// Reference computations used to check the library.  Each one takes a
// different route from the code under test: naive loops, direct products,
// closed-form expansions in double precision.

#include <cmath>
#include <complex>
#include <vector>

#include "qconf/scalars.hpp"

namespace oracle {

using qconf::Rational;
using cplx = std::complex<double>;

// Coefficient lists, index = degree.
using RPoly = std::vector<Rational>;

inline RPoly truncate(RPoly p, int n) {
  p.resize(static_cast<std::size_t>(n + 1), Rational(0));
  return p;
}

// Schoolbook product modulo x^{n+1}.
inline RPoly mul(const RPoly& a, const RPoly& b, int n) {
  RPoly out(static_cast<std::size_t>(n + 1), Rational(0));
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= n; ++i) {
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// 1/(c + x) = sum_k (-1)^k x^k / c^{k+1} modulo x^{n+1}.
inline RPoly inverse_linear(const Rational& c, int n) {
  RPoly out;
  Rational p = Rational(1) / c;
  for (int k = 0; k <= n; ++k) {
    out.push_back(k % 2 == 0 ? p : -p);
    p /= c;
  }
  return out;
}

// prod_{r=1}^d (H + r z)^{-(N+1)} modulo H^{N+1}.
inline RPoly coh_noneq_factor(int N, int d, const Rational& z) {
  RPoly acc{Rational(1)};
  acc = truncate(acc, N);
  for (int r = 1; r <= d; ++r) {
    const RPoly inv = inverse_linear(Rational(r) * z, N);
    for (int k = 0; k <= N; ++k) acc = mul(acc, inv, N);
  }
  return acc;
}

// Coefficient of Q^d H^i (log Q)^a in Q^{H/z} sum_d Q^d prod_r (H + r z)^{-(N+1)}.
inline Rational coh_noneq_coefficient(int N, int d, int i, int a, const Rational& z) {
  if (a > i) return Rational(0);
  const RPoly p = coh_noneq_factor(N, d, z);
  return p[static_cast<std::size_t>(i - a)] / (qconf::factorial(static_cast<unsigned>(a)) * qconf::pow(z, a));
}

// prod_{r=1}^d prod_j (lambda_i - lambda_j + r z)^{-1}.
inline Rational coh_eq_coefficient(int i, int d, const Rational& z, const std::vector<Rational>& lambda) {
  Rational acc(1);
  for (int r = 1; r <= d; ++r) {
    for (const auto& lj : lambda) acc /= lambda[static_cast<std::size_t>(i)] - lj + Rational(r) * z;
  }
  return acc;
}

// prod_{r=1}^d prod_j (1 - q^r Lambda_j / Lambda_i)^{-1}.
inline Rational k_eq_coefficient(int i, int d, const Rational& q, const std::vector<Rational>& Lambda) {
  Rational acc(1);
  for (int r = 1; r <= d; ++r) {
    for (const auto& Lj : Lambda) acc /= Rational(1) - qconf::pow(q, r) * Lj / Lambda[static_cast<std::size_t>(i)];
  }
  return acc;
}

// Log-free part of J^K: [pi^i] sum_d Q^d prod_r ((1 - q^r) + q^r pi)^{-(N+1)}.
inline Rational k_noneq_logfree(int N, int d, int i, const Rational& q) {
  RPoly acc = truncate({Rational(1)}, N);
  for (int r = 1; r <= d; ++r) {
    const Rational qr = qconf::pow(q, r);
    // 1/((1 - q^r) + q^r pi) = (1/q^r) * 1/(c + pi), c = (1 - q^r)/q^r.
    RPoly inv = inverse_linear((Rational(1) - qr) / qr, N);
    for (auto& c : inv) c /= qr;
    for (int k = 0; k <= N; ++k) acc = mul(acc, inv, N);
  }
  return acc[static_cast<std::size_t>(i)];
}

// e_k(x_1..x_n) by summing over all k-subsets.
inline Rational elementary_by_subsets(const std::vector<Rational>& x, int k) {
  const int n = static_cast<int>(x.size());
  Rational total(0);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    Rational p(1);
    for (int j = 0; j < n; ++j) {
      if (mask & (1u << j)) p *= x[static_cast<std::size_t>(j)];
    }
    total += p;
  }
  return total;
}

// (x; q)_d as a plain product.
inline Rational pochhammer(const Rational& x, const Rational& q, int d) {
  Rational acc(1);
  Rational qr(1);
  for (int r = 0; r < d; ++r) {
    acc *= Rational(1) - qr * x;
    qr *= q;
  }
  return acc;
}

inline cplx pochhammer_inf(cplx x, cplx q) {
  cplx acc = 1;
  cplx qr = 1;
  for (int r = 0; r < 4000 && std::abs(qr) > 1e-30; ++r) {
    acc *= 1.0 - qr * x;
    qr *= q;
  }
  return acc;
}

// Jacobi triple product: theta_q(Q) = (q;q)_inf (-Q;q)_inf (-q/Q;q)_inf.
inline cplx theta_triple_product(cplx q, cplx Q) {
  return pochhammer_inf(q, q) * pochhammer_inf(-Q, q) * pochhammer_inf(-q / Q, q);
}

// -Q theta'(Q)/theta(Q) from the product: the logarithmic derivative of each factor.
inline cplx ell_from_product(cplx q, cplx Q) {
  cplx s = 0;
  cplx qr = 1;
  for (int r = 0; r < 4000 && std::abs(qr) > 1e-30; ++r) {
    // d/dQ log(1 + q^r Q) = q^r / (1 + q^r Q); d/dQ log(1 + q^{r+1}/Q) = -q^{r+1}/Q^2 / (1 + q^{r+1}/Q).
    s += qr * Q / (1.0 + qr * Q);
    const cplx u = qr * q / Q;
    s -= u / (1.0 + u);
    qr *= q;
  }
  return -s;
}

inline cplx to_cplx(const qconf::ComplexAP& x) { return {x.real().to_double(), x.imag().to_double()}; }

}  // namespace oracle

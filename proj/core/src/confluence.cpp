#include "qconf/confluence.hpp"

#include <algorithm>

namespace qconf {
namespace {

void check_grid(const std::vector<double>& ts, std::size_t n) {
  if (ts.empty() || ts.size() != n) raise(ErrorCode::InvalidArgument, "one transformed solution per t is required");
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if (!(ts[k] < ts[k - 1])) raise(ErrorCode::InvalidArgument, "t-grid must decrease");
  }
}

std::vector<ComplexAP> to_complex(const std::vector<Rational>& xs, long bits) {
  std::vector<ComplexAP> out;
  for (const auto& x : xs) out.emplace_back(x, bits);
  return out;
}

}  // namespace

Rational coh_eq_coefficient(int i, int d, const Rational& z, const std::vector<Rational>& lambda) {
  Rational acc(1);
  for (int r = 1; r <= d; ++r) {
    for (const auto& lj : lambda) {
      const Rational den = lambda.at(static_cast<std::size_t>(i)) - lj + Rational(r) * z;
      if (den.is_zero()) raise(ErrorCode::ResonantParameters, "lambda_i - lambda_j + r z vanishes");
      acc = acc / den;
    }
  }
  return acc;
}

EqLimit limit_eq(const std::vector<TransformedEq<ComplexAP>>& Ts, const std::vector<double>& ts, const Rational& z,
                 const std::vector<Rational>& lambda, double tol) {
  check_grid(ts, Ts.size());
  const int N = Ts.front().N;
  const int D = Ts.front().entries.at(0).at(0).order();
  const long bits = Ts.front().q.bits();
  EqLimit out;
  out.report.tol = tol;
  for (int i = 0; i <= N; ++i) out.exponents.push_back(lambda.at(static_cast<std::size_t>(i)) / z);
  for (int i = 0; i <= N; ++i) {
    for (int d = 0; d <= D; ++d) {
      ConvergenceRow row;
      row.basis = "eta" + std::to_string(i);
      row.qdeg = d;
      row.ts = ts;
      row.exact_target = coh_eq_coefficient(i, d, z, lambda);
      row.target = ComplexAP(*row.exact_target, bits);
      for (const auto& T : Ts) row.values.push_back(T.entries[0][static_cast<std::size_t>(i)].coeff(d));
      judge_row(row, tol, true);
      if (row.errors.size() >= 2 && row.final_error > 1 && row.errors.back() > row.errors.front()) {
        raise(ErrorCode::NoConvergence, "coefficient (" + row.basis + ", Q^" + std::to_string(d) + ") moves away from its limit");
      }
      out.report.rows.push_back(std::move(row));
    }
  }
  // Assemble at the smallest t and compare with the cohomological side.
  const auto coh = build_jcoh_eq<Rational>(N, D, z, lambda);
  double worst = 0;
  for (int d = 0; d <= D; ++d) {
    std::vector<ComplexAP> vals;
    for (int i = 0; i <= N; ++i) vals.push_back(Ts.back().entries[0][static_cast<std::size_t>(i)].coeff(d));
    CohClassEq<ComplexAP> cls(N, vals);
    const auto lam = to_complex(lambda, bits);
    // Fixed-point values are carried over unchanged by gamma_eq.
    const auto image = gamma_eq(KClassEq<ComplexAP>(N, cls.values()), lam);
    for (int i = 0; i <= N; ++i) {
      const ComplexAP target(coh.columns[static_cast<std::size_t>(i)].series.coeff(d), bits);
      worst = std::max(worst, relative_error(image.value(i), target));
    }
    out.assembled.push_back(std::move(cls));
  }
  out.gamma_max_error = worst;
  out.gamma_match = worst < tol;
  return out;
}

NonEqLimit limit_noneq(const std::vector<TransformedNonEq<ComplexAP>>& Ts, const std::vector<double>& ts, const Rational& z,
                       double tol) {
  check_grid(ts, Ts.size());
  const int N = Ts.front().N;
  const int D = Ts.front().entries.at(0).at(0).order();
  const long bits = Ts.front().q.bits();
  const auto coh = build_jcoh_noneq<Rational>(N, D, z);
  NonEqLimit out;
  out.report.tol = tol;
  auto regularized = [&](const TransformedNonEq<ComplexAP>& T, int i, int a, int d) {
    const auto& e = T.entries[0][static_cast<std::size_t>(i)];
    const ComplexAP v = e.part_or_zero(a).coeff(d);
    return v / pow(T.q - ComplexAP(Rational(1), bits), a);
  };
  for (int i = 0; i <= N; ++i) {
    for (int a = 0; a <= i; ++a) {
      for (int d = 0; d <= D; ++d) {
        ConvergenceRow row;
        row.basis = "H^" + std::to_string(i);
        row.qdeg = d;
        row.logdeg = a;
        row.ts = ts;
        row.exact_target = coh.components[static_cast<std::size_t>(i)].part_or_zero(a).coeff(d);
        row.target = ComplexAP(*row.exact_target, bits);
        for (const auto& T : Ts) row.values.push_back(regularized(T, i, a, d));
        judge_row(row, tol, true);
        if (row.errors.size() >= 2 && row.final_error > 1 && row.errors.back() > row.errors.front()) {
          raise(ErrorCode::NoConvergence, "coefficient (" + row.basis + ", Q^" + std::to_string(d) + ") moves away from its limit");
        }
        out.report.rows.push_back(std::move(row));
      }
    }
  }
  const auto ctx = NumericContext{bits};
  std::vector<LogPoly<ComplexAP>> comps;
  double worst = 0;
  for (int i = 0; i <= N; ++i) {
    std::vector<TruncSeries<ComplexAP>> parts;
    for (int a = 0; a <= i; ++a) {
      std::vector<ComplexAP> c;
      for (int d = 0; d <= D; ++d) {
        c.push_back(regularized(Ts.back(), i, a, d));
        const ComplexAP target(coh.components[static_cast<std::size_t>(i)].part_or_zero(a).coeff(d), bits);
        worst = std::max(worst, relative_error(c.back(), target));
      }
      parts.emplace_back(ctx, 0, std::move(c), D);
    }
    comps.emplace_back(std::move(parts), N);
  }
  out.assembled = JCohNonEq<ComplexAP>{N, ComplexAP(z, bits), std::move(comps)};
  out.gamma_max_error = worst;
  out.gamma_match = worst < tol;
  return out;
}

TransformedEq<ComplexAP> transformed_eq_at(int N, int D, const ComplexAP& q, const Rational& z, const std::vector<Rational>& lambda) {
  const long bits = q.bits();
  const ComplexAP zc(z, bits);
  const auto J = build_jk_eq_numeric(N, D, q, zc, to_complex(lambda, bits));
  return transform_eq(build_fundamental(J, zc));
}

TransformedNonEq<ComplexAP> transformed_noneq_at(int N, int D, const ComplexAP& q, const Rational& z) {
  const ComplexAP zc(z, q.bits());
  return transform_noneq(build_fundamental(build_jk_noneq(N, D, q), zc));
}

MainTheoremReport main_theorem_report(const MainTheoremParams& p) {
  if (p.N < 0 || p.D < 0) raise(ErrorCode::InvalidArgument, "N and D must be >= 0");
  if (p.z.is_zero()) raise(ErrorCode::InvalidArgument, "z must be nonzero");
  if (p.ts.empty()) raise(ErrorCode::InvalidArgument, "t-grid is empty");
  MainTheoremReport rep;
  rep.variant = p.variant;
  if (p.variant == Variant::Eq) {
    if (static_cast<int>(p.lambda.size()) != p.N + 1) raise(ErrorCode::InvalidArgument, "need N+1 equivariant parameters");
    for (int i = 0; i <= p.N; ++i) {
      for (int d = 1; d <= p.D; ++d) coh_eq_coefficient(i, d, p.z, p.lambda);
    }
    std::vector<TransformedEq<ComplexAP>> Ts;
    for (double t : p.ts) Ts.push_back(transformed_eq_at(p.N, p.D, q_at(p.q0, t), p.z, p.lambda));
    auto lim = limit_eq(Ts, p.ts, p.z, p.lambda, p.tol);
    rep.report = std::move(lim.report);
    rep.gamma_max_error = lim.gamma_max_error;
    rep.gamma_match = lim.gamma_match;
  } else {
    std::vector<TransformedNonEq<ComplexAP>> Ts;
    for (double t : p.ts) Ts.push_back(transformed_noneq_at(p.N, p.D, q_at(p.q0, t), p.z));
    auto lim = limit_noneq(Ts, p.ts, p.z, p.tol);
    rep.report = std::move(lim.report);
    rep.gamma_max_error = lim.gamma_max_error;
    rep.gamma_match = lim.gamma_match;
  }
  return rep;
}

}  // namespace qconf

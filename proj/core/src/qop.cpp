#include "qconf/qop.hpp"

namespace qconf {

FormalLimitReport formal_limit(const QDiffOpFamily& family, const DiffOp<ComplexAP>& target, const ComplexAP& q0,
                               const std::vector<double>& ts, double tol) {
  if (ts.empty()) raise(ErrorCode::InvalidArgument, "t-grid is empty");
  std::vector<QDiffOp<ComplexAP>> ops;
  for (double t : ts) {
    auto op = family(q_at(q0, t));
    if (op.basis != OpBasis::Delta) op = to_delta_form(op);
    if (op.degree() != target.degree()) raise(ErrorCode::InvalidArgument, "operator and target have different orders");
    ops.push_back(std::move(op));
  }
  int qdeg = target.q_degree();
  for (const auto& op : ops) qdeg = std::max(qdeg, op.q_degree());

  FormalLimitReport rep;
  rep.table.tol = tol;
  for (int k = 0; k <= target.degree(); ++k) {
    for (int m = 0; m <= qdeg; ++m) {
      ConvergenceRow row;
      row.basis = "delta^" + std::to_string(k);
      row.qdeg = m;
      row.ts = ts;
      row.target = target.coeffs[static_cast<std::size_t>(k)].coeff(m);
      for (const auto& op : ops) row.values.push_back(op.coeffs[static_cast<std::size_t>(k)].coeff(m));
      judge_row(row, tol, false);
      bool growing = row.errors.size() >= 2 && row.final_error > 1;
      for (std::size_t j = 1; j < row.errors.size(); ++j) {
        if (!(row.errors[j] > row.errors[j - 1])) growing = false;
      }
      if (growing) {
        raise(ErrorCode::DivergentCoefficient, "coefficient of delta^" + std::to_string(k) + " Q^" + std::to_string(m) + " grows as t -> 0");
      }
      rep.table.rows.push_back(std::move(row));
    }
  }
  rep.candidate.coeffs = ops.back().coeffs;
  return rep;
}

QDiffOp<ComplexAP> pulled_back_kth_eq(const ComplexAP& q, const ComplexAP& z, const std::vector<ComplexAP>& lambda) {
  return pulled_back_operator(make_kth_operator(lambda_to_Lambda(q, z, lambda), q), z);
}

QDiffOp<ComplexAP> pulled_back_kth_noneq(int N, const ComplexAP& q, const ComplexAP& z) {
  return pulled_back_operator(make_kth_operator_noneq(N, q), z);
}

QSystemFamily kth_eq_companion_family(const ComplexAP& z, const std::vector<ComplexAP>& lambda) {
  return [z, lambda](const ComplexAP& q) { return companion(pulled_back_kth_eq(q, z, lambda)); };
}

QSystemFamily kth_noneq_companion_family(int N, const ComplexAP& z) {
  return [N, z](const ComplexAP& q) { return companion(pulled_back_kth_noneq(N, q, z)); };
}

Matrix<QRatFunc<ComplexAP>> coh_companion_limit(const ComplexAP& z, const std::vector<ComplexAP>& lambda) {
  return companion_theta(make_coh_operator(z, lambda), NumericContext{z.bits()});
}

}  // namespace qconf

#include "qconf/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "qconf/error.hpp"

namespace qconf {

bool errors_decreasing(const std::vector<double>& errors) {
  if (errors.empty()) return false;
  const std::size_t start = errors.size() >= 3 ? errors.size() - 3 : 0;
  for (std::size_t k = start + 1; k < errors.size(); ++k) {
    if (errors[k] <= kErrorFloor) continue;
    if (!(errors[k] < errors[k - 1])) return false;
  }
  return true;
}

double absolute_error(const ComplexAP& value, const ComplexAP& target) {
  return abs(value - target).to_double();
}

double relative_error(const ComplexAP& value, const ComplexAP& target) {
  const double err = absolute_error(value, target);
  if (target.is_zero()) return err;
  return err / abs(target).to_double();
}

ComplexAP q_at(const ComplexAP& q0, double t) {
  return principal_power(q0, ComplexAP(t, 0.0, q0.bits()));
}

std::vector<double> geometric_grid(double start, double ratio, int count) {
  if (!(start > 0) || !(ratio > 0) || !(ratio < 1) || count < 1) {
    raise(ErrorCode::InvalidArgument, "t-grid needs start > 0, 0 < ratio < 1 and count >= 1");
  }
  std::vector<double> ts;
  double t = start;
  for (int k = 0; k < count; ++k) {
    ts.push_back(t);
    t *= ratio;
  }
  return ts;
}

void judge_row(ConvergenceRow& row, double tol, bool relative) {
  row.errors.clear();
  for (const auto& v : row.values) row.errors.push_back(relative ? relative_error(v, row.target) : absolute_error(v, row.target));
  row.monotone = errors_decreasing(row.errors);
  row.final_error = row.errors.empty() ? INFINITY : row.errors.back();
  row.pass = row.monotone && row.final_error < tol;
}

bool ConvergenceReport::pass() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return r.pass; });
}

}  // namespace qconf

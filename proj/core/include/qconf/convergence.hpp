#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qconf/scalars/complex_ap.hpp"
#include "qconf/scalars/rational.hpp"

namespace qconf {

// Errors at or below this floor are indistinguishable from exact agreement.
inline constexpr double kErrorFloor = 1e-30;

// The last three errors decrease strictly, where two errors both at the floor
// count as decreasing.  Fewer than three errors: all of them are used.
bool errors_decreasing(const std::vector<double>& errors);

// |value - target| / |target|, or the absolute error when target is 0.
double relative_error(const ComplexAP& value, const ComplexAP& target);
double absolute_error(const ComplexAP& value, const ComplexAP& target);

// q0^t for real t.
ComplexAP q_at(const ComplexAP& q0, double t);

// t = start * ratio^k, k = 0..count-1.
std::vector<double> geometric_grid(double start, double ratio, int count);

// One coefficient followed along the t-grid.
struct ConvergenceRow {
  std::string basis;
  int qdeg = 0;
  int logdeg = 0;
  std::vector<double> ts;
  std::vector<ComplexAP> values;
  ComplexAP target;
  std::optional<Rational> exact_target;
  std::vector<double> errors;
  bool monotone = false;
  double final_error = 0;
  bool pass = false;
};

// Fills errors, monotone, final_error and pass.
void judge_row(ConvergenceRow& row, double tol, bool relative);

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double tol = 1e-3;
  bool pass() const;
};

}  // namespace qconf

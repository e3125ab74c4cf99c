#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qconf/qseries.hpp"

namespace qconf {

// num(Q)/den(Q) without cancellation; equality is decided by cross-multiplying.
template <ScalarField S>
class QRatFunc {
 public:
  QRatFunc() = default;
  explicit QRatFunc(QPoly<S> num) : num_(std::move(num)), den_(QPoly<S>::constant(one_of<S>(num_.context()))) {}
  QRatFunc(QPoly<S> num, QPoly<S> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) raise(ErrorCode::NearZeroDenominator, "rational function with zero denominator");
  }
  static QRatFunc constant(const S& c) { return QRatFunc(QPoly<S>::constant(c)); }

  const QPoly<S>& numerator() const noexcept { return num_; }
  const QPoly<S>& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  // Common powers of Q removed from numerator and denominator.
  QRatFunc reduced_at_zero() const {
    if (num_.is_zero()) return *this;
    const int v = std::min(num_.valuation(), den_.valuation());
    if (v == 0) return *this;
    auto drop = [v](const QPoly<S>& p) {
      return QPoly<S>(std::vector<S>(p.coefficients().begin() + v, p.coefficients().end()), p.context());
    };
    return QRatFunc(drop(num_), drop(den_));
  }

  S eval(const S& Q) const {
    const QRatFunc r = field_traits<S>::is_zero(Q) ? reduced_at_zero() : *this;
    const S d = r.den_.eval(Q);
    if (field_traits<S>::is_negligible(d)) raise(ErrorCode::NearZeroDenominator, "rational function has a pole at the evaluation point");
    return r.num_.eval(Q) / d;
  }

  // f(cQ).
  QRatFunc scaled_argument(const S& c) const { return QRatFunc(num_.scaled_argument(c), den_.scaled_argument(c)); }

  friend QRatFunc operator+(const QRatFunc& a, const QRatFunc& b) {
    if (a.den_ == b.den_) return QRatFunc(a.num_ + b.num_, a.den_);
    return QRatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend QRatFunc operator-(const QRatFunc& a) { return QRatFunc(-a.num_, a.den_); }
  friend QRatFunc operator-(const QRatFunc& a, const QRatFunc& b) { return a + (-b); }
  friend QRatFunc operator*(const QRatFunc& a, const QRatFunc& b) { return QRatFunc(a.num_ * b.num_, a.den_ * b.den_); }
  friend QRatFunc operator/(const QRatFunc& a, const QRatFunc& b) {
    if (b.num_.is_zero()) raise(ErrorCode::NearZeroDenominator, "division by the zero rational function");
    return QRatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const QRatFunc& a, const QRatFunc& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

  // Expansion at Q = 0 times a series, to the series' known order.
  TruncSeries<S> times(const TruncSeries<S>& f) const {
    if (den_.degree() == 0) return (one_of<S>(den_.context()) / den_.coeff(0)) * num_.times(f);
    const int v = den_.valuation();
    const TruncSeries<S> den_series(den_.context(), 0, den_.coefficients(), std::max(den_.degree(), f.order() + 2 * v));
    return series_invert(den_series) * num_.times(f);
  }

  std::string to_string() const {
    if (den_.degree() == 0 && den_.coeff(0) == one_of<S>(den_.context())) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  QPoly<S> num_;
  QPoly<S> den_;
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& fill) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}
  static Matrix identity(int n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (int i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(data_.front()));
    Matrix<U> out(rows_, cols_, f(data_.front()));
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    }
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.data_[k] + b.data_[k];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.data_[k] - b.data_[k];
    return c;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) raise(ErrorCode::InvalidArgument, "matrix shapes do not match");
    Matrix c(a.rows_, b.cols_, a.data_.front() - a.data_.front());
    for (int i = 0; i < a.rows_; ++i) {
      for (int j = 0; j < b.cols_; ++j) {
        T acc = a(i, 0) * b(0, j);
        for (int k = 1; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
        c(i, j) = acc;
      }
    }
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k) {
      if (!(a.data_[k] == b.data_[k])) return false;
    }
    return true;
  }

  Matrix minor_matrix(int r, int c) const {
    Matrix m(rows_ - 1, cols_ - 1, data_.front());
    for (int i = 0, ii = 0; i < rows_; ++i) {
      if (i == r) continue;
      for (int j = 0, jj = 0; j < cols_; ++j) {
        if (j == c) continue;
        m(ii, jj++) = (*this)(i, j);
      }
      ++ii;
    }
    return m;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) raise(ErrorCode::InvalidArgument, "matrix shapes do not match");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

// Laplace expansion; intended for the small ranks used here.
template <class T>
T determinant(const Matrix<T>& m) {
  if (m.rows() != m.cols() || m.rows() == 0) raise(ErrorCode::InvalidArgument, "determinant needs a nonempty square matrix");
  if (m.rows() == 1) return m(0, 0);
  T acc = m(0, 0) * determinant(m.minor_matrix(0, 0));
  for (int j = 1; j < m.cols(); ++j) {
    const T term = m(0, j) * determinant(m.minor_matrix(0, j));
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// `one` is the 1x1 adjugate.
template <class T>
Matrix<T> adjugate(const Matrix<T>& m, const T& one) {
  const int n = m.rows();
  Matrix<T> adj = m;
  if (n == 1) {
    adj(0, 0) = one;
    return adj;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const T c = determinant(m.minor_matrix(j, i));
      adj(i, j) = ((i + j) % 2 == 0) ? c : -c;
    }
  }
  return adj;
}

template <class T>
Matrix<T> scale_matrix(const Matrix<T>& m, const T& s) {
  return m.map([&](const T& x) { return s * x; });
}

template <ScalarField S>
struct QSystem {
  S q;
  Matrix<QRatFunc<S>> A;
  int rank() const noexcept { return A.rows(); }
};

template <ScalarField S>
Matrix<QRatFunc<S>> identity_qmatrix(int n, typename field_traits<S>::context ctx) {
  return Matrix<QRatFunc<S>>::identity(n, QRatFunc<S>::constant(zero_of<S>(ctx)), QRatFunc<S>::constant(one_of<S>(ctx)));
}

template <ScalarField S>
Matrix<S> evaluate_matrix(const Matrix<QRatFunc<S>>& m, const S& Q) {
  return m.map([&](const QRatFunc<S>& f) { return f.eval(Q); });
}

// F^(-1) as a matrix of rational functions; SingularGauge if det F vanishes identically.
template <ScalarField S>
Matrix<QRatFunc<S>> inverse_qmatrix(const Matrix<QRatFunc<S>>& F) {
  const QRatFunc<S> det = determinant(F);
  bool vanishes = det.numerator().is_zero();
  if (!vanishes && !field_traits<S>::exact) {
    vanishes = true;
    for (const auto& c : det.numerator().coefficients()) {
      if (!field_traits<S>::is_negligible(c)) vanishes = false;
    }
  }
  if (vanishes) raise(ErrorCode::SingularGauge, "gauge matrix is not invertible");
  const QRatFunc<S> inv_det = QRatFunc<S>(det.denominator(), det.numerator());
  return scale_matrix(adjugate(F, QRatFunc<S>::constant(one_of<S>(det.numerator().context()))), inv_det);
}

// (sigma F) A F^(-1).
template <ScalarField S>
QSystem<S> gauge(const QSystem<S>& sys, const Matrix<QRatFunc<S>>& F) {
  if (F.rows() != sys.rank() || F.cols() != sys.rank()) raise(ErrorCode::InvalidArgument, "gauge matrix has the wrong size");
  const auto Finv = inverse_qmatrix(F);
  const auto sF = F.map([&](const QRatFunc<S>& f) { return f.scaled_argument(sys.q); });
  return {sys.q, sF * sys.A * Finv};
}

// A(Q) -> A(Q/c).
template <ScalarField S>
QSystem<S> pullback_system(const QSystem<S>& sys, const S& c) {
  if (field_traits<S>::is_negligible(c)) raise(ErrorCode::ZeroScale, "pullback scale must be nonzero");
  const S inv = one_of<S>(field_traits<S>::context_of(c)) / c;
  return {sys.q, sys.A.map([&](const QRatFunc<S>& f) { return f.scaled_argument(inv); })};
}

template <ScalarField S>
struct RegularSingularWitness {
  bool defined_at_zero = false;
  bool invertible_at_zero = false;
  std::optional<Matrix<S>> A0;
  std::optional<S> det_A0;
  bool witness() const noexcept { return defined_at_zero && invertible_at_zero; }
};

template <ScalarField S>
RegularSingularWitness<S> is_regular_singular_witness(const QSystem<S>& sys) {
  RegularSingularWitness<S> r;
  const auto ctx = field_traits<S>::context_of(sys.q);
  try {
    r.A0 = evaluate_matrix(sys.A, zero_of<S>(ctx));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NearZeroDenominator) throw;
    return r;
  }
  r.defined_at_zero = true;
  r.det_A0 = determinant(*r.A0);
  r.invertible_at_zero = !field_traits<S>::is_negligible(*r.det_A0);
  return r;
}

// Numeric tools (ComplexAP, rank <= 4).

// Characteristic polynomial coefficients c_0..c_n of det(x I - M), monic.
std::vector<ComplexAP> characteristic_polynomial(const Matrix<ComplexAP>& M);
// Roots of sum c_k x^k (c_n != 0) by simultaneous iteration and Newton polishing.
std::vector<ComplexAP> polynomial_roots(const std::vector<ComplexAP>& c);
std::vector<ComplexAP> eigenvalues(const Matrix<ComplexAP>& M);
// Columns are eigenvectors for the given simple eigenvalues.
Matrix<ComplexAP> eigenvectors(const Matrix<ComplexAP>& M, const std::vector<ComplexAP>& eig);

// No ratio of two eigenvalues (i != j) lies within tol of q^k, |k| <= k_max.
bool is_nonresonant(const std::vector<ComplexAP>& eigenvalues, const ComplexAP& q, int k_max = 50, double tol = 1e-12);
// Differential analogue: no two exponents differ by an integer.
bool is_nonresonant_differential(const std::vector<ComplexAP>& exponents, double tol = 1e-8);

// True when Q_a q0^R and Q_b q0^R are the same spiral.
bool same_spiral(const ComplexAP& Qa, const ComplexAP& Qb, const ComplexAP& q0, double tol = 1e-12);

using QSystemFamily = std::function<QSystem<ComplexAP>(const ComplexAP& q)>;

struct SauloyOptions {
  ComplexAP q0;
  std::vector<double> ts;  // decreasing to 0
  std::vector<ComplexAP> samples;
  std::vector<ComplexAP> declared_poles;  // poles of B at q0
  // Expected limit B~(Q); when absent the value at the smallest t is used
  // and successive differences are judged instead.
  std::optional<Matrix<QRatFunc<ComplexAP>>> limit;
  double tol = 1e-3;
};

struct SauloySampleRow {
  ComplexAP Q;
  std::vector<double> errors;
  bool monotone = false;
  double final_error = 0;
};

struct SauloyReport {
  bool condition_i = false;
  std::vector<SauloySampleRow> condition_ii;
  bool condition_ii_pass = false;
  bool limit_regular_singular = false;
  bool limit_nonresonant = false;
  bool q_side_regular_singular = false;
  bool q_side_nonresonant = false;
  std::vector<ComplexAP> limit_exponents;
  bool condition_iii = false;
  std::vector<double> condition_iv_errors;
  bool condition_iv = false;
  bool sample_based = true;
  bool pass() const noexcept { return condition_i && condition_ii_pass && condition_iii && condition_iv; }
};

// A = diag(q^a_k); B_q(0) tends to diag(a_k).
QSystemFamily diagonal_power_family(const std::vector<ComplexAP>& exponents);
// A = 2 Id, so B_q = Id/(q - 1) has no limit.
QSystemFamily divergent_control_family(int n);

// B_q = (A_q - Id)/(q - 1) at q = q0^t.
Matrix<ComplexAP> b_matrix(const QSystem<ComplexAP>& sys, const ComplexAP& Q);

// Checks conditions (i)-(iv) of a confluent family.  Throws PolesOnCommonSpiral,
// NoConvergence, JordanCaseUnsupported.
SauloyReport sauloy_confluence_check(const QSystemFamily& family, const SauloyOptions& opt);

}  // namespace qconf

#include "qconf/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qconf/confluence.hpp"
#include "qconf/jfun.hpp"
#include "qconf/qop.hpp"
#include "qconf/qsystems.hpp"
#include "qconf/specfun.hpp"

namespace qconf::cli {
namespace {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string variant;
  std::string level = "solution";
  std::string function = "theta";
  int N = 1;
  int D = 3;
  std::string q0 = "0.5";
  std::string z = "1";
  std::string lambda;
  std::string q;
  bool numeric_q0 = false;  // jfun: --q0 given, evaluate at q = q0
  std::string at = "2";
  std::string samples = "0,1/2,1+i";
  std::string exponents = "0,1/3";
  std::string poles;
  double t_start = 0.1;
  double t_ratio = 0.1;
  int t_count = 4;
  double tol = 1e-3;
  long bits = 0;
  int window = 0;
  int steps = 12;
  bool check_qde = false;
  bool log_limit = false;
  int corrupt_degree = -1;
  std::string format = "json";
  std::string output = "-";
};

long default_bits() {
  if (const char* env = std::getenv("QCONF_PRECISION_BITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 64) throw ConfigError("QCONF_PRECISION_BITS must be an integer >= 64");
    return v;
  }
  return kDefaultPrecisionBits;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

Rational parse_rational(const std::string& s, const char* what) {
  try {
    return Rational::parse(s);
  } catch (const Error&) {
    throw ConfigError(std::string("invalid ") + what + " '" + s + "'");
  }
}

ComplexAP parse_complex(const std::string& s, long bits, const char* what) {
  try {
    return ComplexAP::parse(s, bits);
  } catch (const Error&) {
    throw ConfigError(std::string("invalid ") + what + " '" + s + "'");
  }
}

// Small distinct values in [0, 1): no two differ by an integer.
std::vector<Rational> default_lambdas(int N) {
  static const std::vector<Rational> table{Rational(0),     Rational(1, 3),  Rational(17, 21),
                                           Rational(16, 55), Rational(5, 13), Rational(3, 17)};
  if (N + 1 > static_cast<int>(table.size())) throw ConfigError("give --lambda explicitly for N > 5");
  return std::vector<Rational>(table.begin(), table.begin() + N + 1);
}

std::vector<Rational> lambdas(const Options& o) {
  if (o.lambda.empty()) return default_lambdas(o.N);
  std::vector<Rational> out;
  for (const auto& s : split_list(o.lambda)) out.push_back(parse_rational(s, "lambda"));
  if (static_cast<int>(out.size()) != o.N + 1) throw ConfigError("--lambda needs N+1 = " + std::to_string(o.N + 1) + " values");
  return out;
}

ComplexAP q0_value(const Options& o) {
  const Rational q0 = parse_rational(o.q0, "q0");
  if (!(Rational(0) < q0) || !(q0 < Rational(1))) throw ConfigError("q0 must satisfy 0 < q0 < 1, got " + o.q0);
  return ComplexAP(q0, o.bits);
}

Rational z_value(const Options& o) {
  const Rational z = parse_rational(o.z, "z");
  if (z.is_zero()) throw ConfigError("z must be nonzero");
  return z;
}

std::vector<double> t_grid(const Options& o) {
  if (!(o.t_start > 0) || !(o.t_ratio > 0) || !(o.t_ratio < 1) || o.t_count < 1) {
    throw ConfigError("t-grid needs --t-start > 0, 0 < --t-ratio < 1, --t-count >= 1");
  }
  return geometric_grid(o.t_start, o.t_ratio, o.t_count);
}

void validate_common(const Options& o) {
  if (o.N < 0) throw ConfigError("--n must be >= 0");
  if (o.D < 0) throw ConfigError("--trunc must be >= 0");
  if (!(o.tol > 0)) throw ConfigError("--tol must be > 0");
  if (o.format != "json" && o.format != "csv") throw ConfigError("--format must be json or csv");
}

json num(const ComplexAP& x) {
  return json{{"re", x.real().to_string(0)}, {"im", x.imag().to_string(0)}, {"bits", x.bits()}};
}

json value_of(const Rational& x) { return x.to_string(); }
json value_of(const RatFunc& x) { return x.to_string(); }
json value_of(const ComplexAP& x) { return num(x); }

std::string csv_value(const Rational& x) { return x.to_string(); }
std::string csv_value(const RatFunc& x) { return x.to_string(); }
std::string csv_value(const ComplexAP& x) { return x.to_string(0); }

std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

// Plain rows shared by the table-producing commands.
struct TableRow {
  std::string basis;
  int qdeg = 0;
  int logdeg = 0;
  std::string t;
  std::string value;
  std::string target;
  std::string error;
};

std::string to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "basis,qdeg,logdeg,t,value,target,error\n";
  for (const auto& r : rows) {
    os << r.basis << ',' << r.qdeg << ',' << r.logdeg << ',' << r.t << ',' << r.value << ',' << r.target << ',' << r.error << '\n';
  }
  return os.str();
}

json header(const std::string& command) { return json{{"schema", "qconf/1"}, {"command", command}}; }

struct Result {
  std::string text;
  int code = kPass;
};

Result emit(const Options& o, const json& j, const std::vector<TableRow>* rows) {
  if (o.format == "csv") {
    if (rows == nullptr) throw ConfigError("csv output is only available for tables");
    return {to_csv(*rows), kPass};
  }
  return {j.dump(2) + "\n", kPass};
}

// jfun

template <class S>
void series_rows(const std::string& basis, int logdeg, const TruncSeries<S>& s, json& arr, std::vector<TableRow>& rows) {
  for (int d = 0; d <= s.order(); ++d) {
    const S c = s.coeff(d);
    arr.push_back(json{{"basis", basis}, {"qdeg", d}, {"logdeg", logdeg}, {"value", value_of(c)}});
    rows.push_back({basis, d, logdeg, "", csv_value(c), "", ""});
  }
}

template <class S>
void logpoly_rows(const std::string& basis, const LogPoly<S>& p, json& arr, std::vector<TableRow>& rows) {
  // Sorted by degree, then log-degree.
  for (int d = 0; d <= p.order(); ++d) {
    for (int a = 0; a <= p.stored_degree(); ++a) {
      const S c = p.part(a).coeff(d);
      arr.push_back(json{{"basis", basis}, {"qdeg", d}, {"logdeg", a}, {"value", value_of(c)}});
      rows.push_back({basis, d, a, "", csv_value(c), "", ""});
    }
  }
}

Result cmd_jfun(const Options& o) {
  validate_common(o);
  json j = header("jfun");
  j["variant"] = o.variant;
  j["N"] = o.N;
  j["truncation"] = o.D;
  json coeffs = json::array();
  std::vector<TableRow> rows;
  if (o.variant == "kth") {
    if (!o.numeric_q0) {
      const auto J = build_jk_noneq<RatFunc>(o.N, o.D, RatFunc::q());
      j["field"] = "Q(q)";
      j["log_symbol"] = "L = ell_q(Q)";
      for (int i = 0; i <= o.N; ++i) logpoly_rows("pi^" + std::to_string(i), J.components[static_cast<std::size_t>(i)], coeffs, rows);
    } else {
      const auto J = build_jk_noneq<ComplexAP>(o.N, o.D, q0_value(o));
      j["field"] = "complex";
      j["log_symbol"] = "L = ell_q(Q)";
      for (int i = 0; i <= o.N; ++i) logpoly_rows("pi^" + std::to_string(i), J.components[static_cast<std::size_t>(i)], coeffs, rows);
    }
  } else if (o.variant == "kth-eq") {
    json markers = json::array();
    if (!o.numeric_q0) {
      const auto J = build_jk_eq_symbolic(o.N, o.D);
      j["field"] = "Q(q, Lambda)";
      for (int i = 0; i <= o.N; ++i) {
        const auto& col = J.columns[static_cast<std::size_t>(i)];
        markers.push_back(json{{"basis", "eta" + std::to_string(i)}, {"sigma_factor", value_of(col.sigma_factor)}});
        series_rows("eta" + std::to_string(i), 0, col.series, coeffs, rows);
      }
    } else {
      const ComplexAP q = q0_value(o);
      std::vector<ComplexAP> lam;
      for (const auto& l : lambdas(o)) lam.emplace_back(l, o.bits);
      const auto J = build_jk_eq_numeric(o.N, o.D, q, ComplexAP(z_value(o), o.bits), lam);
      j["field"] = "complex";
      for (int i = 0; i <= o.N; ++i) {
        const auto& col = J.columns[static_cast<std::size_t>(i)];
        markers.push_back(json{{"basis", "eta" + std::to_string(i)}, {"sigma_factor", value_of(col.sigma_factor)}});
        series_rows("eta" + std::to_string(i), 0, col.series, coeffs, rows);
      }
    }
    j["markers"] = markers;
  } else if (o.variant == "coh") {
    const Rational z = z_value(o);
    const auto J = build_jcoh_noneq<Rational>(o.N, o.D, z);
    j["z"] = z.to_string();
    j["log_symbol"] = "log Q";
    for (int i = 0; i <= o.N; ++i) logpoly_rows("H^" + std::to_string(i), J.components[static_cast<std::size_t>(i)], coeffs, rows);
  } else if (o.variant == "coh-eq") {
    const Rational z = z_value(o);
    const auto lam = lambdas(o);
    const auto J = build_jcoh_eq<Rational>(o.N, o.D, z, lam);
    j["z"] = z.to_string();
    json markers = json::array();
    for (int i = 0; i <= o.N; ++i) {
      const auto& col = J.columns[static_cast<std::size_t>(i)];
      markers.push_back(json{{"basis", "eta" + std::to_string(i)}, {"exponent", value_of(col.exponent)}});
      series_rows("eta" + std::to_string(i), 0, col.series, coeffs, rows);
    }
    j["markers"] = markers;
  } else {
    throw ConfigError("--variant must be kth, kth-eq, coh or coh-eq");
  }
  j["coefficients"] = coeffs;
  return emit(o, j, &rows);
}

// verify

template <class S>
TruncSeries<S> corrupted(const TruncSeries<S>& s, int d) {
  if (d < 0) return s;
  return s + TruncSeries<S>::monomial(one_of<S>(s.context()), d, s.order());
}

template <class S>
LogPoly<S> corrupted(const LogPoly<S>& p, int d) {
  if (d < 0) return p;
  std::vector<TruncSeries<S>> parts = p.parts();
  parts[0] = corrupted(parts[0], d);
  return LogPoly<S>(std::move(parts), p.max_log_degree());
}

struct Located {
  bool zero = true;
  int degree = -1;
  std::string basis;
  std::string value = "0";
};

template <class S>
void locate(const std::string& basis, const TruncSeries<S>& r, Located& loc) {
  for (int d = 0; d <= r.order(); ++d) {
    const S c = r.coeff(d);
    if (field_traits<S>::is_zero(c)) continue;
    if (loc.zero || d < loc.degree) {
      loc.zero = false;
      loc.degree = d;
      loc.basis = basis;
      loc.value = field_traits<S>::to_string(c);
    }
    return;
  }
}

template <class S>
void locate(const std::string& basis, const LogPoly<S>& r, Located& loc) {
  for (const auto& p : r.parts()) locate(basis, p, loc);
}

Result cmd_verify(const Options& o) {
  validate_common(o);
  if (o.corrupt_degree > o.D) throw ConfigError("--corrupt-degree must not exceed --trunc");
  json j = header("verify");
  Located loc;
  std::string equation;
  const std::string n1 = std::to_string(o.N + 1);
  if (o.variant == "kth") {
    equation = "(1 - sigma)^" + n1 + " - Q";
    const auto q = RatFunc::q();
    const auto J = build_jk_noneq<RatFunc>(o.N, o.D, q);
    const auto op = make_kth_operator_noneq<RatFunc>(o.N, q);
    for (int i = 0; i <= o.N; ++i) {
      const auto& c = J.components[static_cast<std::size_t>(i)];
      locate("pi^" + std::to_string(i), residual(op, i == 0 ? corrupted(c, o.corrupt_degree) : c), loc);
    }
  } else if (o.variant == "kth-eq") {
    equation = "prod_j (1 - Lambda_j sigma) - Q";
    const auto J = build_jk_eq_symbolic(o.N, o.D);
    const auto op = make_kth_operator<RatFunc>(J.Lambda, J.q);
    for (int i = 0; i <= o.N; ++i) {
      auto col = J.columns[static_cast<std::size_t>(i)];
      if (i == 0) col.series = corrupted(col.series, o.corrupt_degree);
      locate("eta" + std::to_string(i), residual(op, col), loc);
    }
  } else if (o.variant == "coh") {
    equation = "(z theta)^" + n1 + " - Q";
    const Rational z = z_value(o);
    const auto J = build_jcoh_noneq<Rational>(o.N, o.D, z);
    const auto op = make_coh_operator_noneq<Rational>(o.N, z);
    for (int i = 0; i <= o.N; ++i) {
      const auto& c = J.components[static_cast<std::size_t>(i)];
      locate("H^" + std::to_string(i), residual(op, i == 0 ? corrupted(c, o.corrupt_degree) : c), loc);
    }
  } else if (o.variant == "coh-eq") {
    equation = "prod_j (-lambda_j + z theta) - Q";
    const Rational z = z_value(o);
    const auto lam = lambdas(o);
    const auto J = build_jcoh_eq<Rational>(o.N, o.D, z, lam);
    const auto op = make_coh_operator<Rational>(z, lam);
    for (int i = 0; i <= o.N; ++i) {
      auto col = J.columns[static_cast<std::size_t>(i)];
      if (i == 0) col.series = corrupted(col.series, o.corrupt_degree);
      locate("eta" + std::to_string(i), residual(op, col), loc);
    }
  } else {
    throw ConfigError("--variant must be kth, kth-eq, coh or coh-eq");
  }
  j["equation"] = equation;
  j["N"] = o.N;
  j["truncation"] = o.D;
  j["residual_max"] = loc.value;
  j["pass"] = loc.zero;
  if (!loc.zero) j["located"] = json{{"basis", loc.basis}, {"qdeg", loc.degree}};
  Result r = emit(o, j, nullptr);
  r.code = loc.zero ? kPass : kFail;
  return r;
}

// confluence

void report_rows(const ConvergenceReport& rep, json& arr, json& summary, std::vector<TableRow>& rows) {
  for (const auto& row : rep.rows) {
    const json target = row.exact_target ? json(row.exact_target->to_string()) : num(row.target);
    const std::string target_csv = row.exact_target ? row.exact_target->to_string() : row.target.to_string(0);
    for (std::size_t k = 0; k < row.ts.size(); ++k) {
      arr.push_back(json{{"basis", row.basis},
                         {"qdeg", row.qdeg},
                         {"logdeg", row.logdeg},
                         {"t", row.ts[k]},
                         {"value", num(row.values[k])},
                         {"target", target},
                         {"error", row.errors[k]},
                         {"monotone", row.monotone}});
      rows.push_back({row.basis, row.qdeg, row.logdeg, fmt_double(row.ts[k]), row.values[k].to_string(0), target_csv,
                      fmt_double(row.errors[k])});
    }
    summary.push_back(json{{"basis", row.basis},
                           {"qdeg", row.qdeg},
                           {"logdeg", row.logdeg},
                           {"final_error", row.final_error},
                           {"monotone", row.monotone},
                           {"pass", row.pass}});
  }
}

json params_json(const Options& o, const std::vector<double>& ts) {
  json p{{"N", o.N}, {"trunc", o.D}, {"q0", o.q0}, {"z", o.z}, {"tol", o.tol}, {"bits", o.bits}};
  if (o.variant == "eq") {
    json l = json::array();
    for (const auto& x : lambdas(o)) l.push_back(x.to_string());
    p["lambda"] = l;
  }
  p["t"] = ts;
  return p;
}

Result cmd_confluence(const Options& o) {
  validate_common(o);
  if (o.variant != "eq" && o.variant != "noneq") throw ConfigError("--variant must be eq or noneq");
  if (o.level != "solution" && o.level != "equation") throw ConfigError("--level must be solution or equation");
  const ComplexAP q0 = q0_value(o);
  const Rational z = z_value(o);
  const auto ts = t_grid(o);
  const bool eq = o.variant == "eq";
  std::vector<Rational> lam;
  if (eq) {
    lam = lambdas(o);
    for (int i = 0; i <= o.N; ++i) {
      for (int d = 1; d <= std::max(o.D, 1); ++d) coh_eq_coefficient(i, d, z, lam);
    }
  }
  json j = header("confluence");
  j["level"] = o.level;
  j["variant"] = o.variant;
  j["parameters"] = params_json(o, ts);
  json arr = json::array();
  json summary = json::array();
  std::vector<TableRow> rows;
  bool pass = false;
  if (o.level == "solution") {
    MainTheoremParams p;
    p.variant = eq ? Variant::Eq : Variant::NonEq;
    p.N = o.N;
    p.D = o.D;
    p.q0 = q0;
    p.z = z;
    p.lambda = lam;
    p.ts = ts;
    p.tol = o.tol;
    const auto rep = main_theorem_report(p);
    report_rows(rep.report, arr, summary, rows);
    j["gamma_max_error"] = rep.gamma_max_error;
    j["gamma_match"] = rep.gamma_match;
    pass = rep.pass();
  } else {
    const ComplexAP zc(z, o.bits);
    std::vector<ComplexAP> lc;
    for (const auto& l : lam) lc.emplace_back(l, o.bits);
    QDiffOpFamily family;
    DiffOp<ComplexAP> target;
    DiffOp<Rational> exact;
    if (eq) {
      family = [zc, lc](const ComplexAP& q) { return pulled_back_kth_eq(q, zc, lc); };
      target = make_coh_operator(zc, lc);
      exact = make_coh_operator(z, lam);
    } else {
      const int N = o.N;
      family = [zc, N](const ComplexAP& q) { return pulled_back_kth_noneq(N, q, zc); };
      target = make_coh_operator_noneq(o.N, zc);
      exact = make_coh_operator_noneq(o.N, z);
    }
    auto rep = formal_limit(family, target, q0, ts, o.tol);
    for (auto& row : rep.table.rows) {
      const int k = std::stoi(row.basis.substr(row.basis.find('^') + 1));
      row.exact_target = exact.coeffs[static_cast<std::size_t>(k)].coeff(row.qdeg);
    }
    report_rows(rep.table, arr, summary, rows);
    pass = rep.confluent();
  }
  j["rows"] = arr;
  j["summary"] = summary;
  j["verdict"] = pass ? "pass" : "fail";
  Result r = emit(o, j, &rows);
  r.code = pass ? kPass : kConvergenceError;
  return r;
}

// specfun

Result cmd_specfun(const Options& o) {
  if (o.format != "json" && o.format != "csv") throw ConfigError("--format must be json or csv");
  const ComplexAP q = parse_complex(o.q.empty() ? "0.5" : o.q, o.bits, "q");
  const ComplexAP Q = parse_complex(o.at, o.bits, "argument");
  if (o.window < 0) throw ConfigError("--m must be >= 0");
  if (o.steps < 1) throw ConfigError("--steps must be >= 1");
  json j = header("specfun");
  j["function"] = o.function;
  j["q"] = num(q);
  j["at"] = num(Q);
  std::vector<TableRow> rows;
  bool have_rows = false;
  bool pass = true;
  const ComplexAP one(Rational(1), o.bits);
  if (o.function == "theta") {
    const auto s = theta_sums(q, Q, o.window);
    j["value"] = num(s.theta);
    j["window"] = s.window;
    j["working_bits"] = s.working_bits;
    if (o.check_qde) {
      const ComplexAP shifted = theta_eval(q, q * Q, o.window);
      const double res = abs(Q * shifted - s.theta).to_double();
      j["qde"] = "Q theta(qQ) = theta(Q)";
      j["qde_residual"] = res;
    }
  } else if (o.function == "ell") {
    const ComplexAP v = ell_q_eval(q, Q, o.window);
    j["value"] = num(v);
    if (o.check_qde) {
      j["qde"] = "ell(qQ) = ell(Q) + 1";
      j["qde_residual"] = abs(ell_q_eval(q, q * Q, o.window) - v - one).to_double();
    }
    if (o.log_limit) {
      std::vector<double> ts;
      for (int k = 1; k <= o.steps; ++k) ts.push_back(std::ldexp(1.0, -k));
      const auto table = q_log_limit_check(q, Q, ts);
      const ComplexAP target = log(Q);
      json arr = json::array();
      std::vector<double> errs;
      for (const auto& row : table) {
        arr.push_back(json{{"t", row.t}, {"value", num(row.value)}, {"error", row.error}});
        rows.push_back({"ell", 0, 1, fmt_double(row.t), row.value.to_string(0), target.to_string(0), fmt_double(row.error)});
        errs.push_back(row.error);
      }
      bool strict = true;
      for (std::size_t k = 1; k < errs.size(); ++k) {
        if (!(errs[k] < errs[k - 1])) strict = false;
      }
      j["log_limit"] = json{{"target", num(target)}, {"rows", arr}, {"strictly_decreasing", strict}, {"final_error", errs.back()}};
      have_rows = true;
      pass = strict;
    }
  } else if (o.function == "echar") {
    const ComplexAP lam = parse_complex(o.lambda.empty() ? "2" : o.lambda, o.bits, "lambda");
    const ComplexAP v = e_q_char(q, lam, Q);
    j["lambda"] = num(lam);
    j["value"] = num(v);
    if (o.check_qde) {
      j["qde"] = "e(qQ) = lambda e(Q)";
      j["qde_residual"] = abs(e_q_char(q, lam, q * Q) - lam * v).to_double();
    }
  } else if (o.function == "qpoch") {
    const auto r = qpochhammer_inf(Q, q, 1e-30);
    j["value"] = num(r.value);
    j["error_bound"] = r.error_bound;
    j["factors"] = r.factors;
  } else {
    throw ConfigError("function must be theta, ell, echar or qpoch");
  }
  Result r = emit(o, j, have_rows ? &rows : nullptr);
  r.code = pass ? kPass : kFail;
  return r;
}

// sauloy-check

std::vector<ComplexAP> complex_list(const std::string& s, long bits, const char* what) {
  std::vector<ComplexAP> out;
  if (s.empty()) return out;
  for (const auto& x : split_list(s)) out.push_back(parse_complex(x, bits, what));
  return out;
}

Result cmd_sauloy(const Options& o) {
  validate_common(o);
  SauloyOptions opt;
  opt.q0 = q0_value(o);
  opt.ts = t_grid(o);
  opt.samples = complex_list(o.samples, o.bits, "sample point");
  if (opt.samples.empty()) throw ConfigError("--samples must list at least one point");
  opt.declared_poles = complex_list(o.poles, o.bits, "pole");
  opt.tol = o.tol;
  const ComplexAP zc(z_value(o), o.bits);
  QSystemFamily family;
  if (o.variant == "eq") {
    std::vector<ComplexAP> lc;
    for (const auto& l : lambdas(o)) lc.emplace_back(l, o.bits);
    family = kth_eq_companion_family(zc, lc);
    opt.limit = coh_companion_limit(zc, lc);
  } else if (o.variant == "noneq") {
    family = kth_noneq_companion_family(o.N, zc);
    std::vector<ComplexAP> zeros(static_cast<std::size_t>(o.N + 1), ComplexAP(o.bits));
    opt.limit = coh_companion_limit(zc, zeros);
  } else if (o.variant == "constant") {
    std::vector<ComplexAP> ex;
    for (const auto& s : split_list(o.exponents)) ex.emplace_back(parse_rational(s, "exponent"), o.bits);
    family = diagonal_power_family(ex);
    const int n = static_cast<int>(ex.size());
    auto lim = identity_qmatrix<ComplexAP>(n, NumericContext{o.bits});
    for (int k = 0; k < n; ++k) lim(k, k) = QRatFunc<ComplexAP>::constant(ex[static_cast<std::size_t>(k)]);
    opt.limit = lim;
  } else if (o.variant == "divergent") {
    family = divergent_control_family(o.N + 1);
  } else {
    throw ConfigError("--family must be eq, noneq, constant or divergent");
  }
  const auto rep = sauloy_confluence_check(family, opt);
  json j = header("sauloy-check");
  j["family"] = o.variant;
  j["sample_based"] = rep.sample_based;
  json ii = json::array();
  for (const auto& s : rep.condition_ii) {
    ii.push_back(json{{"Q", num(s.Q)}, {"errors", s.errors}, {"monotone", s.monotone}, {"final_error", s.final_error}});
  }
  json exps = json::array();
  for (const auto& e : rep.limit_exponents) exps.push_back(num(e));
  j["conditions"] = json{
      {"i", json{{"pass", rep.condition_i}, {"declared_poles", static_cast<int>(opt.declared_poles.size())}}},
      {"ii", json{{"pass", rep.condition_ii_pass}, {"samples", ii}}},
      {"iii", json{{"pass", rep.condition_iii},
                   {"limit_regular_singular", rep.limit_regular_singular},
                   {"limit_nonresonant", rep.limit_nonresonant},
                   {"q_regular_singular", rep.q_side_regular_singular},
                   {"q_nonresonant", rep.q_side_nonresonant},
                   {"limit_exponents", exps}}},
      {"iv", json{{"pass", rep.condition_iv}, {"errors", rep.condition_iv_errors}}}};
  j["verdict"] = rep.pass() ? "pass" : "fail";
  Result r = emit(o, j, nullptr);
  r.code = rep.pass() ? kPass : kFail;
  return r;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::MissingVariable:
    case ErrorCode::FieldMismatch:
      return kConfigError;
    case ErrorCode::NoConvergence:
    case ErrorCode::DivergentCoefficient:
      return kConvergenceError;
    default:
      return kDomainError;
  }
}

void add_grid_options(CLI::App* sub, Options& o) {
  sub->add_option("--t-start", o.t_start, "first t of the geometric grid");
  sub->add_option("--t-ratio", o.t_ratio, "ratio of the geometric grid");
  sub->add_option("--t-count", o.t_count, "number of grid points");
  sub->add_option("--tol", o.tol, "final-error tolerance");
}

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "json or csv");
  sub->add_option("--output,-o", o.output, "output path, - for standard output");
  sub->add_option("--bits", o.bits, "working precision in bits");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"q-difference confluence toolkit"};
  app.require_subcommand(1);

  auto* jfun = app.add_subcommand("jfun", "print J-function coefficients");
  jfun->add_option("--variant", o.variant, "kth, kth-eq, coh or coh-eq");
  jfun->add_option("--n", o.N, "projective space dimension N");
  jfun->add_option("--trunc", o.D, "truncation order in Q");
  auto* jfun_q0 = jfun->add_option("--q0", o.q0, "numeric q in (0, 1) for the kth variants; symbolic when omitted");
  jfun->add_option("--z", o.z, "z");
  jfun->add_option("--lambda", o.lambda, "comma-separated equivariant parameters");
  add_output_options(jfun, o);

  auto* verify = app.add_subcommand("verify", "check that a J-function solves its equation");
  verify->add_option("--variant", o.variant, "kth, kth-eq, coh or coh-eq");
  verify->add_option("--n", o.N, "projective space dimension N");
  verify->add_option("--trunc", o.D, "truncation order in Q");
  verify->add_option("--z", o.z, "z");
  verify->add_option("--lambda", o.lambda, "comma-separated equivariant parameters");
  verify->add_option("--corrupt-degree", o.corrupt_degree, "debug: add Q^d to the first component");
  add_output_options(verify, o);

  auto* conf = app.add_subcommand("confluence", "q -> 1 limits of operators or solutions");
  conf->add_option("--level", o.level, "solution or equation");
  conf->add_option("--variant", o.variant, "eq or noneq");
  conf->add_option("--n", o.N, "projective space dimension N");
  conf->add_option("--trunc", o.D, "truncation order in Q");
  conf->add_option("--q0", o.q0, "base q0 in (0, 1)");
  conf->add_option("--z", o.z, "z");
  conf->add_option("--lambda", o.lambda, "comma-separated equivariant parameters");
  add_grid_options(conf, o);
  add_output_options(conf, o);

  auto* spec = app.add_subcommand("specfun", "theta, q-logarithm, q-characters, q-Pochhammer");
  spec->add_option("function", o.function, "theta, ell, echar or qpoch");
  spec->add_option("--q", o.q, "q with 0 < |q| < 1");
  spec->add_option("--at", o.at, "argument Q");
  spec->add_option("--lambda", o.lambda, "character parameter for echar");
  spec->add_option("--m", o.window, "theta window; 0 chooses adaptively");
  spec->add_flag("--check-qde", o.check_qde, "report the functional-equation residual");
  spec->add_flag("--log-limit", o.log_limit, "(q^t - 1) ell_{q^t}(Q) against Log Q for t = 2^-k");
  spec->add_option("--steps", o.steps, "number of t values for --log-limit");
  add_output_options(spec, o);

  auto* sauloy = app.add_subcommand("sauloy-check", "confluence conditions for a family of systems");
  sauloy->add_option("--family", o.variant, "eq, noneq, constant or divergent");
  sauloy->add_option("--n", o.N, "projective space dimension N");
  sauloy->add_option("--q0", o.q0, "base q0 in (0, 1)");
  sauloy->add_option("--z", o.z, "z");
  sauloy->add_option("--lambda", o.lambda, "comma-separated equivariant parameters");
  sauloy->add_option("--samples", o.samples, "comma-separated sample points Q");
  sauloy->add_option("--exponents", o.exponents, "exponents of the constant family");
  sauloy->add_option("--poles", o.poles, "declared poles of B at q0");
  add_grid_options(sauloy, o);
  add_output_options(sauloy, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (o.bits == 0) o.bits = default_bits();
    if (o.bits < 64) throw ConfigError("--bits must be >= 64");
    Result r;
    if (jfun->parsed()) {
      o.numeric_q0 = jfun_q0->count() > 0;
      if (o.variant.empty()) o.variant = "kth";
      r = cmd_jfun(o);
    } else if (verify->parsed()) {
      if (o.variant.empty()) o.variant = "kth";
      r = cmd_verify(o);
    } else if (conf->parsed()) {
      if (o.variant.empty()) o.variant = "eq";
      r = cmd_confluence(o);
    } else if (spec->parsed()) {
      r = cmd_specfun(o);
    } else {
      if (o.variant.empty()) o.variant = "eq";
      r = cmd_sauloy(o);
    }
    if (o.output == "-") {
      out << r.text;
    } else {
      std::ofstream f(o.output);
      if (!f) throw ConfigError("cannot open output file " + o.output);
      f << r.text;
    }
    return r.code;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace qconf::cli

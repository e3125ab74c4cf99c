#include "qconf/rings.hpp"

namespace qconf {

std::vector<RatFunc> symbolic_Lambdas(int N) {
  if (N < 0 || N > kMaxSymbolicN) raise(ErrorCode::InvalidArgument, "symbolic parameters support N <= 6");
  std::vector<RatFunc> out;
  for (int i = 0; i <= N; ++i) out.push_back(RatFunc::Lambda(i));
  return out;
}

std::vector<RatFunc> symbolic_lambdas(int N) {
  if (N < 0 || N > kMaxSymbolicN) raise(ErrorCode::InvalidArgument, "symbolic parameters support N <= 6");
  std::vector<RatFunc> out;
  for (int i = 0; i <= N; ++i) out.push_back(RatFunc::lambda(i));
  return out;
}

KClassNonEq<RatFunc> noneq_limit(const KClassEq<RatFunc>& x) {
  const int N = x.N();
  std::vector<RatFunc> m = eta_to_monomial(x, symbolic_Lambdas(N));
  for (auto& c : m) {
    for (int i = 0; i <= N; ++i) {
      try {
        c = c.substitute(var_Lambda(i), RatFunc(1));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NearZeroDenominator) throw;
        raise(ErrorCode::DegenerateBasis,
              "the class has no non-equivariant limit: a coefficient has a pole at Lambda_" + std::to_string(i) + " = 1");
      }
    }
  }
  // P^{-k} = (1 - pi)^k.
  std::vector<RatFunc> c(static_cast<std::size_t>(N + 1), RatFunc(0));
  for (int k = 0; k <= N; ++k) {
    for (int j = 0; j <= k; ++j) {
      const Rational b = binomial(k, j) * (j % 2 == 0 ? Rational(1) : Rational(-1));
      c[j] += RatFunc(b) * m[k];
    }
  }
  return KClassNonEq<RatFunc>(N, std::move(c));
}

}  // namespace qconf

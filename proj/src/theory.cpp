#include "hypmoments/theory.hpp"

#include <cmath>
#include <string>

#include "hypmoments/error.hpp"

namespace hypmoments {

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class catalan(unsigned n) { return binomial(2 * n, n) / (n + 1); }

mpz_class multiplicity_nm(unsigned m, unsigned r) {
  if (r > m || (m - r) % 2 != 0) return 0;
  const mpq_class value(binomial(m, (m + r) / 2) * 2 * (r + 1), mpz_class(m + r + 2));
  mpq_class q = value;
  q.canonicalize();
  if (q.get_den() != 1) {
    throw Error(ErrorCode::NonIntegral,
                "n_" + std::to_string(m) + "(" + std::to_string(r) + ") = " + q.get_str());
  }
  return q.get_num();
}

mpz_class sym2_multiplicity(unsigned m) {
  mpz_class sum = 0;
  for (unsigned i = 0; i <= m; ++i) {
    const mpz_class term = binomial(m, i) * catalan(i);
    if (i % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return m % 2 == 0 ? sum : mpz_class(-sum);
}

std::pair<mpz_class, mpz_class> combmom_check(unsigned m) {
  const mpz_class lhs = catalan(m) * catalan(m + 1);
  mpz_class rhs = 0;
  for (unsigned s = 0; s <= m; ++s) rhs += binomial(2 * m, 2 * s) * catalan(m - s) * catalan(s);
  return {lhs, rhs};
}

double chebyshev_u(unsigned m, double x) {
  double sum = 0.0;
  const double two_x = 2.0 * x;
  for (unsigned k = 0; 2 * k <= m; ++k) {
    const double c = binomial(m - k, k).get_d();
    const double term = c * std::pow(two_x, static_cast<int>(m - 2 * k));
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

mpq_class theorem1_limit(unsigned m) {
  if (m % 2 != 0) return 0;
  return mpq_class(catalan(m / 2) * catalan(m / 2 + 1));
}

mpq_class theorem2_limit(unsigned n, unsigned m) {
  if (n % 2 != 0 || m % 2 != 0) return 0;
  return mpq_class(catalan(n / 2) * catalan(m / 2));
}

mpq_class theorem3_limit(unsigned m) {
  if (m % 2 != 0) return 0;
  return mpq_class(catalan(m / 2));
}

mpq_class theorem4_limit(unsigned m) {
  if (m % 2 != 0) return 0;
  return mpq_class(sym2_multiplicity(m));
}

HalfIntegerGamma gamma_half(unsigned twice_argument) {
  if (twice_argument == 0) throw Error(ErrorCode::DomainError, "Γ has a pole at 0");
  HalfIntegerGamma g;
  if (twice_argument % 2 == 0) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), twice_argument / 2 - 1);
    g.rational = f;
    return g;
  }
  // Γ(k + 1/2) = (2k-1)!! / 2^k · √π
  const unsigned k = twice_argument / 2;
  mpz_class dfact;
  mpz_2fac_ui(dfact.get_mpz_t(), k == 0 ? 0 : 2 * k - 1);
  mpz_class pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, k);
  g.rational = mpq_class(dfact, pow2);
  g.rational.canonicalize();
  g.pi_half_power = 1;
  return g;
}

std::pair<mpq_class, mpq_class> catalan_gamma_identity(unsigned m) {
  const mpq_class lhs(catalan(m) * catalan(m + 1));

  const auto g1 = gamma_half(2 * m + 1);  // Γ(m + 1/2)
  const auto g2 = gamma_half(2 * m + 3);  // Γ(m + 3/2)
  const auto g3 = gamma_half(2 * m + 4);  // Γ(m + 2)
  const auto g4 = gamma_half(2 * m + 6);  // Γ(m + 3)
  // Numerator carries π^{(1+1)/2} = π, cancelled by the explicit 1/π.
  if (g1.pi_half_power + g2.pi_half_power - g3.pi_half_power - g4.pi_half_power != 2) {
    throw Error(ErrorCode::CheckFailure, "π powers do not cancel");
  }
  mpz_class pow16;
  mpz_ui_pow_ui(pow16.get_mpz_t(), 16, m);
  mpq_class rhs = mpq_class(4 * pow16) * g1.rational * g2.rational / (g3.rational * g4.rational);
  rhs.canonicalize();
  return {lhs, rhs};
}

}  // namespace hypmoments

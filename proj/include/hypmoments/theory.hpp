#pragma once

#include <gmpxx.h>

#include <utility>

namespace hypmoments {

/// C(n) = (2n)! / (n!(n+1)!).
mpz_class catalan(unsigned n);

mpz_class binomial(unsigned n, unsigned k);

/// Multiplicity of Sym^r in the m-th tensor power of the standard
/// representation of SL2; zero unless r <= m and r ≡ m (mod 2).
/// Throws Error{NonIntegral} if the closed form is not an integer.
mpz_class multiplicity_nm(unsigned m, unsigned r);

/// Multiplicity of the trivial representation in (Sym² ρ)^{⊗m}:
/// (-1)^m Σ_i (-1)^i binom(m, i) C(i).
mpz_class sym2_multiplicity(unsigned m);

/// Both sides of C(m)C(m+1) = Σ_{s=0}^{m} binom(2m, 2s) C(m-s) C(s), each
/// evaluated independently.
std::pair<mpz_class, mpz_class> combmom_check(unsigned m);

/// U_m(x) = Σ_k (-1)^k binom(m-k, k) (2x)^{m-2k}.
double chebyshev_u(unsigned m, double x);

/// Limit of the normalized m-th moment of H_p(α_d, β | λ²): C(m/2)C(m/2+1) for even m, else 0.
mpq_class theorem1_limit(unsigned m);
/// C(n/2)C(m/2) when both orders are even, else 0.
mpq_class theorem2_limit(unsigned n, unsigned m);
/// C(m/2) for even m, else 0.
mpq_class theorem3_limit(unsigned m);
/// Σ_i (-1)^i binom(m, i) C(i) for even m, else 0.
mpq_class theorem4_limit(unsigned m);

/// Γ(k/2) for k >= 1 written as rational · π^{pi_half_power/2}.
struct HalfIntegerGamma {
  mpq_class rational;
  unsigned pi_half_power = 0;  // 0 at integers, 1 at half-integers
};

HalfIntegerGamma gamma_half(unsigned twice_argument);

/// C(m)C(m+1) and (4·16^m/π)·Γ(m+1/2)Γ(m+3/2)/(Γ(m+2)Γ(m+3)), the latter
/// reduced to a rational with the π factors cancelled exactly.
std::pair<mpq_class, mpq_class> catalan_gamma_identity(unsigned m);

}  // namespace hypmoments

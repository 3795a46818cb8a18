#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypmoments/ffield.hpp"

namespace hypmoments {

/// Polynomial in λ with rational coefficients, stored as integer numerators
/// over one positive common denominator, always in lowest terms.
class RationalPoly {
 public:
  RationalPoly() = default;
  RationalPoly(std::vector<mpz_class> numerators, mpz_class denominator = 1);

  static RationalPoly constant(const mpq_class& c);
  /// The monomial c·λ^k.
  static RationalPoly monomial(const mpq_class& c, unsigned k);

  const std::vector<mpz_class>& numerators() const noexcept { return num_; }
  const mpz_class& denominator() const noexcept { return den_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(num_.size()) - 1; }
  bool is_zero() const noexcept { return num_.empty(); }
  mpq_class coefficient(std::size_t k) const;

  mpq_class eval(const mpq_class& lambda) const;
  /// Coefficients reduced mod p; throws Error{BadPrime} when p divides the denominator.
  std::vector<std::uint32_t> reduce(std::uint32_t p) const;

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const mpq_class& c, const RationalPoly& a);
  friend bool operator==(const RationalPoly& a, const RationalPoly& b);

  std::string str() const;

 private:
  void normalize();

  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

/// Horner evaluation of reduced coefficients at x mod p.
std::uint32_t eval_mod(const std::vector<std::uint32_t>& coeffs, std::uint32_t x, std::uint32_t p);

/// Weierstrass coefficients a1, a2, a3, a4, a6 as polynomials in λ.
struct WeierstrassCoeffs {
  RationalPoly a1, a2, a3, a4, a6;
};

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6 over Q(λ), with the standard
/// derived quantities. The discriminant is never identically zero.
class CurveFamily {
 public:
  const std::string& name() const noexcept { return name_; }
  const WeierstrassCoeffs& coeffs() const noexcept { return a_; }

  const RationalPoly& b2() const noexcept { return b2_; }
  const RationalPoly& b4() const noexcept { return b4_; }
  const RationalPoly& b6() const noexcept { return b6_; }
  const RationalPoly& b8() const noexcept { return b8_; }
  const RationalPoly& c4() const noexcept { return c4_; }
  const RationalPoly& c6() const noexcept { return c6_; }
  const RationalPoly& discriminant() const noexcept { return disc_; }

  /// j(λ) = c4³/Δ at a rational point; nullopt where Δ vanishes.
  std::optional<mpq_class> j_invariant(const mpq_class& lambda) const;

  /// SHA-256 (hex) of the canonical coefficient text; identical coefficients
  /// give identical hashes regardless of the family name.
  std::string content_hash() const;
  std::string short_hash() const { return content_hash().substr(0, 16); }

  /// Throws Error{SingularFamily} if Δ ≡ 0.
  friend CurveFamily custom_family(std::string name, WeierstrassCoeffs coeffs);

 private:
  CurveFamily() = default;

  std::string name_;
  WeierstrassCoeffs a_;
  RationalPoly b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

CurveFamily custom_family(std::string name, WeierstrassCoeffs coeffs);

/// One of legendre, legendre_neg, d3, d4, d6, clausen; also accepts d2 as an
/// alias of legendre. Throws Error{UnknownFamily}.
CurveFamily builtin_family(const std::string& id);
/// Table family used by the length-2 and length-4 identities for d ∈ {2,3,4,6}.
CurveFamily builtin_family_for_d(int d);
std::vector<std::string> builtin_family_ids();

/// Quadratic twist d·y² = 4x³ + b2x² + 2b4x + b6, written back in long form.
CurveFamily quadratic_twist(const CurveFamily& family, const mpz_class& d);

/// The family reduced mod p: completed-cubic coefficients and the
/// discriminant and c4 polynomials as residues.
struct ReducedFamily {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> b2, b4, b6, disc, c4;

  /// Throws Error{BadPrime} for p < 5 or p dividing a coefficient denominator.
  ReducedFamily(const CurveFamily& family, std::uint32_t p);

  bool bad(std::uint32_t lambda) const { return eval_mod(disc, lambda, p) == 0; }
};

/// a_p(λ) = p + 1 - #E_λ(F_p) = -Σ_x φ_p(4x³ + b2x² + 2b4x + b6), or nullopt
/// when Δ(λ) ≡ 0 (bad reduction).
std::optional<std::int64_t> trace_single(const CurveFamily& family, const PrimeFieldContext& ctx,
                                         Residue lambda);

/// All traces a_p(λ), λ = 0..p-1, for one family and prime.
class TraceSweep {
 public:
  TraceSweep() = default;
  TraceSweep(std::uint32_t p, std::string family_name, std::string family_hash,
             std::vector<std::int32_t> traces, std::vector<std::uint8_t> bad_mask);

  std::uint32_t p() const noexcept { return p_; }
  const std::string& family_name() const noexcept { return family_name_; }
  const std::string& family_hash() const noexcept { return family_hash_; }

  bool bad(Residue lambda) const { return bad_[lambda] != 0; }
  /// Trace at a good fibre; 0 at bad fibres.
  std::int32_t trace(Residue lambda) const { return traces_[lambda]; }

  const std::vector<std::int32_t>& traces() const noexcept { return traces_; }
  const std::vector<std::uint8_t>& bad_mask() const noexcept { return bad_; }
  std::size_t bad_count() const;

  friend bool operator==(const TraceSweep&, const TraceSweep&) = default;

 private:
  std::uint32_t p_ = 0;
  std::string family_name_;
  std::string family_hash_;
  std::vector<std::int32_t> traces_;
  std::vector<std::uint8_t> bad_;
};

/// Computes every trace with an O(p²) table-lookup loop over λ-blocks split
/// across `threads` workers. Output does not depend on the worker count.
TraceSweep trace_sweep(const CurveFamily& family, const PrimeFieldContext& ctx, unsigned threads = 1);

/// Sweep of the pullback λ ↦ -λ, obtained by index negation.
TraceSweep negate_sweep(const TraceSweep& sweep);

enum class ReductionKind { Good, Multiplicative, Additive };

std::string to_string(ReductionKind kind);

struct ReductionReport {
  struct Fibre {
    Residue lambda0;
    ReductionKind kind;
  };
  std::vector<Fibre> bad_fibres;  // every λ0 ∈ F_p with Δ(λ0) ≡ 0, ascending
  bool j_nonconstant = false;
};

ReductionReport classify_reduction(const CurveFamily& family, const PrimeFieldContext& ctx);

}  // namespace hypmoments

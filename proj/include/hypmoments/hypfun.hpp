#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hypmoments/ffield.hpp"

namespace hypmoments {

class TraceSweep;

/// Reduced fraction num/den with den > 0.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d = 1);

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend Fraction operator+(Fraction a, Fraction b);
  friend Fraction operator-(Fraction a, Fraction b);

  std::string str() const;
};

/// Hypergeometric datum {α; β} with β = {1, b_2, ..., b_n}.
class HypDatum {
 public:
  /// Throws Error{InvalidInput} if the lengths differ, are zero, or β[0] != 1.
  HypDatum(std::vector<Fraction> alpha, std::vector<Fraction> beta);

  const std::vector<Fraction>& alpha() const noexcept { return alpha_; }
  const std::vector<Fraction>& beta() const noexcept { return beta_; }
  std::size_t length() const noexcept { return alpha_.size(); }
  /// lcm of all denominators.
  std::int64_t modulus() const noexcept { return modulus_; }

  std::string str() const;

 private:
  std::vector<Fraction> alpha_;
  std::vector<Fraction> beta_;
  std::int64_t modulus_;
};

std::int64_t datum_modulus(const HypDatum& datum);

/// α_d = {1/(2d), 1-1/(2d), 1/(2d)+1/2, -1/(2d)+1/2}, β = {1, 1/2, 1, 1/2}.
HypDatum length4_datum(int d);
/// {1/d, (d-1)/d; 1, 1}.
HypDatum length2_datum(int d);
/// {1/2, 1/2, 1/2; 1, 1, 1}.
HypDatum clausen_datum();

/// Evaluates H_p(α, β | λ) straight from the Gauss-sum definition. The
/// λ-independent part of each summand is computed once, so every value costs
/// O(p) complex operations.
class DirectEvaluator {
 public:
  /// Throws Error{ModulusMismatch} unless p ≡ 1 (mod M).
  DirectEvaluator(const PrimeFieldContext& ctx, const GaussSumTable& gauss, const HypDatum& datum);

  /// Raw complex sum; λ = 0 yields exactly 1.
  std::complex<double> evaluate_complex(Residue lambda) const;
  /// Integer value after the rounding guard |Im|, |Re - round(Re)| <= 1e-6·√p.
  /// Throws Error{PrecisionLoss} when the guard fails.
  std::int64_t evaluate(Residue lambda) const;

 private:
  const PrimeFieldContext* ctx_;
  const GaussSumTable* gauss_;
  int sign_;  // (-1)^n
  std::vector<std::complex<double>> weights_;
};

/// One-shot form of DirectEvaluator::evaluate.
std::int64_t hp_direct(const PrimeFieldContext& ctx, const HypDatum& datum, Residue lambda);

/// a_{p,d}(λ) + a_{p,d}(-λ) for λ² = mu, or 0 when mu is a nonresidue.
/// sweep_minus holds a(-λ) at index λ. Throws Error{BoundaryLambda} for
/// mu ∈ {0, 1}, Error{SweepMismatch} when the sweeps are for different
/// primes, and Error{DomainError} if a needed fibre has bad reduction.
std::int64_t hp_via_traces(int d, const TraceSweep& sweep_plus, const TraceSweep& sweep_minus,
                           const PrimeFieldContext& ctx, Residue mu);

}  // namespace hypmoments

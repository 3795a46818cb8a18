#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace hypmoments {

using Residue = std::uint32_t;

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t m);
std::uint32_t powmod(std::uint32_t base, std::uint64_t exp, std::uint32_t m);
/// Inverse of a modulo the prime p; a must be nonzero mod p.
std::uint32_t invmod(std::uint32_t a, std::uint32_t p);

bool is_prime(std::uint64_t n);
std::vector<std::uint32_t> prime_factors(std::uint32_t n);

/// Exponent j of the character ω^j, always reduced into [0, p-2].
struct CharacterIndex {
  std::uint32_t j = 0;

  CharacterIndex() = default;
  CharacterIndex(std::int64_t raw, std::uint32_t p) {
    const auto order = static_cast<std::int64_t>(p) - 1;
    auto r = raw % order;
    if (r < 0) r += order;
    j = static_cast<std::uint32_t>(r);
  }

  bool trivial() const noexcept { return j == 0; }
};

/// Arithmetic tables for one prime field F_p: smallest primitive root g,
/// discrete logarithms to base g and the quadratic character. Immutable once
/// built, so one instance can be shared by any number of workers.
class PrimeFieldContext {
 public:
  /// Throws Error{CompositeInput} for composite p and Error{TooSmall} for p < 5.
  explicit PrimeFieldContext(std::uint64_t p);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t generator() const noexcept { return g_; }

  /// ind(x) with g^ind(x) = x; x must be nonzero.
  std::uint32_t dlog(Residue x) const { return dlog_[x]; }
  /// g^k for k in [0, p-2].
  Residue power_of_generator(std::uint32_t k) const { return pow_[k]; }
  /// φ_p(x) in {-1, 0, +1}.
  int quadchar(Residue x) const { return quad_[x]; }

  std::span<const std::uint32_t> dlog_table() const noexcept { return dlog_; }
  std::span<const std::int8_t> quadchar_table() const noexcept { return quad_; }

  /// ω^j(x) = exp(2πi·j·ind(x)/(p-1)), and 0 at x = 0.
  std::complex<double> char_eval(CharacterIndex j, Residue x) const;

 private:
  std::uint32_t p_;
  std::uint32_t g_;
  std::vector<std::uint32_t> dlog_;
  std::vector<std::uint32_t> pow_;
  std::vector<std::int8_t> quad_;
};

/// Gauss sums g(ω^j) = Σ_{x≠0} ω^j(x) ζ_p^x for all j, together with the
/// (p-1)-th roots of unity used to evaluate characters. Evaluated as one
/// length-(p-1) discrete Fourier transform of k ↦ ζ_p^{g^k}.
class GaussSumTable {
 public:
  static constexpr std::uint32_t kMaxPrime = 1'000'000;

  /// Throws Error{InvalidInput} when p exceeds kMaxPrime.
  explicit GaussSumTable(const PrimeFieldContext& ctx);

  std::uint32_t p() const noexcept { return p_; }
  std::complex<double> operator()(CharacterIndex j) const { return sums_[j.j]; }
  /// exp(2πi·k/(p-1)) for k reduced mod p-1.
  std::complex<double> unit_root(std::uint64_t k) const { return roots_[k % (p_ - 1)]; }

  std::span<const std::complex<double>> sums() const noexcept { return sums_; }

 private:
  std::uint32_t p_;
  std::vector<std::complex<double>> roots_;
  std::vector<std::complex<double>> sums_;
};

/// Convenience wrapper around GaussSumTable for one-off evaluations.
std::complex<double> gauss_sum(const PrimeFieldContext& ctx, CharacterIndex j);

}  // namespace hypmoments

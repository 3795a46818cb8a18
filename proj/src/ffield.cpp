#include "hypmoments/ffield.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "hypmoments/error.hpp"

namespace hypmoments {

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t m) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % m);
}

std::uint32_t powmod(std::uint32_t base, std::uint64_t exp, std::uint32_t m) {
  std::uint64_t result = 1 % m;
  std::uint64_t b = base % m;
  while (exp > 0) {
    if (exp & 1U) result = result * b % m;
    b = b * b % m;
    exp >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t invmod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw Error(ErrorCode::DomainError, "zero has no inverse mod " + std::to_string(p));
  return powmod(a, p - 2, p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

PrimeFieldContext::PrimeFieldContext(std::uint64_t p) {
  if (p < 5) throw Error(ErrorCode::TooSmall, "p = " + std::to_string(p) + " must be at least 5");
  if (p >= (1ULL << 31)) throw Error(ErrorCode::InvalidInput, "p = " + std::to_string(p) + " exceeds 2^31");
  if (!is_prime(p)) throw Error(ErrorCode::CompositeInput, std::to_string(p) + " is not prime");
  p_ = static_cast<std::uint32_t>(p);

  const auto factors = prime_factors(p_ - 1);
  g_ = 0;
  for (std::uint32_t c = 2; c < p_; ++c) {
    bool primitive = true;
    for (auto q : factors) {
      if (powmod(c, (p_ - 1) / q, p_) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g_ = c;
      break;
    }
  }

  dlog_.assign(p_, 0);
  pow_.resize(p_ - 1);
  quad_.assign(p_, 0);
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k + 1 < p_; ++k) {
    pow_[k] = x;
    dlog_[x] = k;
    quad_[x] = (k % 2 == 0) ? 1 : -1;
    x = mulmod(x, g_, p_);
  }
}

std::complex<double> PrimeFieldContext::char_eval(CharacterIndex j, Residue x) const {
  x %= p_;
  if (x == 0) return {0.0, 0.0};
  const std::uint64_t k = static_cast<std::uint64_t>(j.j) * dlog_[x] % (p_ - 1);
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p_ - 1);
  return std::polar(1.0, angle);
}

namespace {

// FFTW's planner is not re-entrant.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

GaussSumTable::GaussSumTable(const PrimeFieldContext& ctx) : p_(ctx.p()) {
  if (p_ > kMaxPrime) {
    throw Error(ErrorCode::InvalidInput,
                "Gauss-sum tables are limited to p <= " + std::to_string(kMaxPrime));
  }
  const std::uint32_t n = p_ - 1;
  roots_.resize(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / n);
  }

  std::vector<std::complex<double>> in(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(ctx.power_of_generator(k)) / p_;
    in[k] = std::polar(1.0, angle);
  }
  sums_.resize(n);

  // out[j] = Σ_k in[k]·exp(+2πi·jk/n), i.e. FFTW's backward transform.
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(sums_.data()), FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
}

std::complex<double> gauss_sum(const PrimeFieldContext& ctx, CharacterIndex j) {
  return GaussSumTable(ctx)(j);
}

}  // namespace hypmoments

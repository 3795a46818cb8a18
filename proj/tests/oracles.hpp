#pragma once

// Brute-force references used by the unit tests. Nothing here goes through the
// library's character tables or completed cubics.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>

namespace oracle {

inline std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline std::int64_t inv(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, b = mod(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

/// Weierstrass coefficients of one fibre, already reduced mod p.
struct Fibre {
  std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
};

/// a = p + 1 - #E(F_p), counting every (x, y) on the long-form equation plus
/// the point at infinity.
inline std::int64_t trace_by_enumeration(const Fibre& f, std::int64_t p) {
  std::int64_t affine = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = mod(((x * x % p) * x + f.a2 * x % p * x + f.a4 * x + f.a6), p);
    for (std::int64_t y = 0; y < p; ++y) {
      const std::int64_t lhs = mod(y * y + f.a1 * x % p * y + f.a3 * y, p);
      if (lhs == rhs) ++affine;
    }
  }
  return p + 1 - (affine + 1);
}

/// Table families for d = 3, 4, 6 in the forms they are usually printed in.
inline Fibre table_fibre(int d, std::int64_t lambda, std::int64_t p) {
  Fibre f;
  switch (d) {
    case 3:  // y² + xy + (λ/27)y = x³
      f.a1 = 1;
      f.a3 = mod(lambda * inv(27, p), p);
      break;
    case 4:  // y² = x(x² + x + λ/4)
      f.a2 = 1;
      f.a4 = mod(lambda * inv(4, p), p);
      break;
    case 6:  // y² + xy = x³ - λ/432
      f.a1 = 1;
      f.a6 = mod(-lambda * inv(432, p), p);
      break;
  }
  return f;
}

/// #{(x, y) : y² = x(1-x)(x-λ)} enumerated without any change of variables.
inline std::int64_t legendre_trace_direct(std::int64_t lambda, std::int64_t p) {
  std::int64_t affine = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = mod(x * mod(1 - x, p) % p * mod(x - lambda, p), p);
    for (std::int64_t y = 0; y < p; ++y) {
      if (y * y % p == rhs) ++affine;
    }
  }
  return p - affine;
}

/// y² = (x - 1)(x² + λ).
inline std::int64_t clausen_trace_direct(std::int64_t lambda, std::int64_t p) {
  std::int64_t affine = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = mod(mod(x - 1, p) * mod(x * x + lambda, p), p);
    for (std::int64_t y = 0; y < p; ++y) {
      if (y * y % p == rhs) ++affine;
    }
  }
  return p - affine;
}

/// Trace of the table family for d at λ; d = 2 uses y² = x(1-x)(x-λ) as is.
inline std::int64_t table_trace(int d, std::int64_t lambda, std::int64_t p) {
  return d == 2 ? legendre_trace_direct(lambda, p) : trace_by_enumeration(table_fibre(d, lambda, p), p);
}

inline int legendre_symbol(std::int64_t x, std::int64_t p) {
  x = mod(x, p);
  if (x == 0) return 0;
  for (std::int64_t y = 1; y < p; ++y) {
    if (y * y % p == x) return 1;
  }
  return -1;
}

/// Σ_{x≠0} χ(x) e^{2πi x/p} with χ given by its values.
inline std::complex<double> gauss_sum_direct(std::int64_t p, const std::function<std::complex<double>(std::int64_t)>& chi) {
  std::complex<double> s = 0.0;
  for (std::int64_t x = 1; x < p; ++x) s += chi(x) * std::polar(1.0, 2.0 * std::numbers::pi * x / p);
  return s;
}

}  // namespace oracle

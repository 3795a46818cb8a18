#include <doctest.h>

#include <set>

#include "hypmoments/error.hpp"
#include "hypmoments/ffield.hpp"
#include "oracles.hpp"

using namespace hypmoments;

namespace {

std::vector<std::uint32_t> primes_between(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t n = lo; n <= hi; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

ErrorCode code_of(std::uint64_t p) {
  try {
    PrimeFieldContext ctx(p);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for p = " << p);
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("smallest primitive root") {
  CHECK(PrimeFieldContext(7).generator() == 3);
  CHECK(PrimeFieldContext(5).generator() == 2);
  CHECK(PrimeFieldContext(23).generator() == 5);
}

TEST_CASE("rejects composite and small moduli") {
  CHECK(code_of(9) == ErrorCode::CompositeInput);
  CHECK(code_of(10008) == ErrorCode::CompositeInput);
  CHECK(code_of(3) == ErrorCode::TooSmall);
  CHECK(code_of(2) == ErrorCode::TooSmall);
}

TEST_CASE("quadratic character at p = 5") {
  const PrimeFieldContext ctx(5);
  const std::vector<int> expected{0, 1, -1, -1, 1};
  for (Residue x = 0; x < 5; ++x) CHECK(ctx.quadchar(x) == expected[x]);
}

TEST_CASE("table invariants for p < 400") {
  for (const auto p : primes_between(5, 400)) {
    CAPTURE(p);
    const PrimeFieldContext ctx(p);
    const auto g = ctx.generator();
    CHECK(powmod(g, p - 1, p) == 1);
    for (const auto q : prime_factors(p - 1)) CHECK(powmod(g, (p - 1) / q, p) != 1);

    std::set<std::uint32_t> seen;
    int qsum = 0;
    for (Residue x = 1; x < p; ++x) {
      const auto k = ctx.dlog(x);
      CHECK(k < p - 1);
      seen.insert(k);
      CHECK(powmod(g, k, p) == x);
      CHECK(ctx.power_of_generator(k) == x);
      CHECK(ctx.quadchar(x) == (k % 2 == 0 ? 1 : -1));
      CHECK(ctx.quadchar(x) == oracle::legendre_symbol(x, p));
      qsum += ctx.quadchar(x);
    }
    CHECK(seen.size() == p - 1);
    CHECK(ctx.quadchar(0) == 0);
    CHECK(qsum == 0);
  }
}

TEST_CASE("character evaluation") {
  const PrimeFieldContext p7(7);
  CHECK(std::abs(p7.char_eval(CharacterIndex(0, 7), 4) - 1.0) < 1e-15);
  for (int j = 0; j < 6; ++j) CHECK(p7.char_eval(CharacterIndex(j, 7), 0) == std::complex<double>(0.0));

  const PrimeFieldContext p5(5);
  CHECK(std::abs(p5.char_eval(CharacterIndex(2, 5), 2) - (-1.0)) < 1e-12);

  CHECK(CharacterIndex(-1, 7).j == 5);
  CHECK(CharacterIndex(13, 7).j == 1);
}

TEST_CASE("characters are multiplicative in both arguments, p < 50") {
  for (const auto p : primes_between(5, 50)) {
    CAPTURE(p);
    const PrimeFieldContext ctx(p);
    for (std::uint32_t j = 0; j + 1 < p; ++j) {
      const CharacterIndex cj(j, p);
      for (Residue x = 1; x < p; ++x) {
        CHECK(std::abs(std::abs(ctx.char_eval(cj, x)) - 1.0) < 1e-12);
        for (Residue y = 1; y < p; ++y) {
          const auto lhs = ctx.char_eval(cj, x) * ctx.char_eval(cj, y);
          REQUIRE(std::abs(lhs - ctx.char_eval(cj, mulmod(x, y, p))) < 1e-12);
        }
        for (std::uint32_t k = 0; k + 1 < p; ++k) {
          const auto lhs = ctx.char_eval(cj, x) * ctx.char_eval(CharacterIndex(k, p), x);
          REQUIRE(std::abs(lhs - ctx.char_eval(CharacterIndex(j + k, p), x)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("quadratic character is the character of order 2, p < 100") {
  for (const auto p : primes_between(5, 100)) {
    const PrimeFieldContext ctx(p);
    for (Residue x = 0; x < p; ++x) {
      CHECK(std::abs(ctx.char_eval(CharacterIndex((p - 1) / 2, p), x) - double(ctx.quadchar(x))) < 1e-12);
    }
  }
}

TEST_CASE("Gauss sums") {
  SUBCASE("trivial character gives -1") {
    for (const auto p : {5U, 13U, 101U}) CHECK(std::abs(gauss_sum(PrimeFieldContext(p), CharacterIndex(0, p)) + 1.0) < 1e-9);
  }
  SUBCASE("quadratic Gauss sum at p = 5 is sqrt 5") {
    const auto g = gauss_sum(PrimeFieldContext(5), CharacterIndex(2, 5));
    CHECK(std::abs(g - std::sqrt(5.0)) < 1e-9);
  }
  SUBCASE("p = 13 matches direct summation") {
    const PrimeFieldContext ctx(13);
    const GaussSumTable table(ctx);
    for (std::uint32_t j = 0; j < 12; ++j) {
      const CharacterIndex cj(j, 13);
      const auto direct = oracle::gauss_sum_direct(13, [&](std::int64_t x) { return ctx.char_eval(cj, x); });
      CHECK(std::abs(table(cj) - direct) < 1e-9);
      if (j != 0) CHECK(std::norm(table(cj)) == doctest::Approx(13.0).epsilon(1e-12));
    }
  }
  SUBCASE("|g|² = p for every nontrivial character, p < 200") {
    for (const auto p : primes_between(5, 200)) {
      const PrimeFieldContext ctx(p);
      const GaussSumTable table(ctx);
      CHECK(std::abs(table(CharacterIndex(0, p)) + 1.0) < 1e-9);
      for (std::uint32_t j = 1; j + 1 < p; ++j) CHECK(std::abs(std::norm(table(CharacterIndex(j, p))) - p) < 1e-6);
    }
  }
}

TEST_CASE("Gauss-sum table size limit") {
  const PrimeFieldContext ctx(1000003);
  CHECK_THROWS_AS(GaussSumTable{ctx}, Error);
}

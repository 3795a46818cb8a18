#include "hypmoments/checks.hpp"

#include <cmath>

#include "hypmoments/curves.hpp"
#include "hypmoments/density.hpp"
#include "hypmoments/error.hpp"
#include "hypmoments/ffield.hpp"
#include "hypmoments/hypfun.hpp"
#include "hypmoments/quadrature.hpp"
#include "hypmoments/theory.hpp"

namespace hypmoments {

using nlohmann::json;

bool SuiteReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

json SuiteReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks) {
    json entry = {{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"cases", c.cases}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    list.push_back(entry);
  }
  return {{"suite", suite}, {"status", passed() ? "pass" : "fail"}, {"checks", list}};
}

namespace {

void fail(CheckResult& c, json detail) {
  if (c.passed) c.detail = std::move(detail);
  c.passed = false;
}

// Compares one Gauss-sum value with its trace-side expression.
void compare(CheckResult& c, const DirectEvaluator& eval, std::uint32_t p, int d, Residue lambda,
             std::int64_t expected) {
  ++c.cases;
  try {
    const std::int64_t got = eval.evaluate(lambda);
    if (got != expected) {
      fail(c, {{"p", p}, {"d", d}, {"lambda", lambda}, {"gauss", got}, {"trace", expected}});
    }
  } catch (const Error& e) {
    fail(c, {{"p", p}, {"d", d}, {"lambda", lambda}, {"error", e.what()}});
  }
}

}  // namespace

SuiteReport identity_suite(const std::vector<std::uint32_t>& primes, unsigned threads) {
  SuiteReport report{"identities", {}};
  CheckResult length2{"length-2 datum vs a_d(λ)"};
  CheckResult length4{"length-4 datum vs a_d(λ) + a_d(-λ)"};
  CheckResult clausen{"Clausen datum vs φ(λ+1)(a(λ)² - p)"};

  for (const std::uint32_t p : primes) {
    const PrimeFieldContext ctx(p);
    const GaussSumTable gauss(ctx);
    for (const int d : {2, 3, 4, 6}) {
      const TraceSweep plus = trace_sweep(builtin_family_for_d(d), ctx, threads);
      const TraceSweep minus = negate_sweep(plus);
      if ((p - 1) % d == 0) {
        const DirectEvaluator eval(ctx, gauss, length2_datum(d));
        for (Residue lambda = 1; lambda < p; ++lambda) {
          if (!plus.bad(lambda)) compare(length2, eval, p, d, lambda, plus.trace(lambda));
        }
      }
      if ((p - 1) % (2 * d) == 0) {
        const DirectEvaluator eval(ctx, gauss, length4_datum(d));
        for (Residue mu = 2; mu < p; ++mu) {
          std::int64_t expected = 0;
          try {
            expected = hp_via_traces(d, plus, minus, ctx, mu);
          } catch (const Error& e) {
            ++length4.cases;
            fail(length4, {{"p", p}, {"d", d}, {"lambda", mu}, {"error", e.what()}});
            continue;
          }
          compare(length4, eval, p, d, mu, expected);
        }
      }
    }
    const TraceSweep cl = trace_sweep(builtin_family("clausen"), ctx, threads);
    const DirectEvaluator eval(ctx, gauss, clausen_datum());
    for (Residue lambda = 1; lambda + 1 < p; ++lambda) {
      if (cl.bad(lambda)) continue;
      const Residue mu = mulmod(lambda, invmod(lambda + 1, p), p);
      const std::int64_t a = cl.trace(lambda);
      const std::int64_t expected = ctx.quadchar(lambda + 1) * (a * a - static_cast<std::int64_t>(p));
      compare(clausen, eval, p, 2, mu, expected);
    }
  }
  report.checks = {length2, length4, clausen};
  return report;
}

SuiteReport combinatorics_suite(unsigned max_order) {
  SuiteReport report{"combinatorics", {}};

  CheckResult cat{"catalan = (2n)!/(n!(n+1)!) and Segner recurrence"};
  for (unsigned n = 0; n <= max_order; ++n) {
    ++cat.cases;
    mpz_class f2n, fn, fn1;
    mpz_fac_ui(f2n.get_mpz_t(), 2 * n);
    mpz_fac_ui(fn.get_mpz_t(), n);
    mpz_fac_ui(fn1.get_mpz_t(), n + 1);
    mpz_class segner = n == 0 ? mpz_class(1) : mpz_class(0);
    for (unsigned i = 0; i + 1 <= n; ++i) segner += catalan(i) * catalan(n - 1 - i);
    if (catalan(n) * fn * fn1 != f2n || catalan(n) != segner) {
      fail(cat, {{"n", n}, {"catalan", catalan(n).get_str()}});
    }
  }

  CheckResult mult{"Σ_r n_m(r)(r+1) = 2^m and n_m(m) = 1"};
  for (unsigned m = 0; m <= max_order; ++m) {
    ++mult.cases;
    try {
      mpz_class dim = 0;
      for (unsigned r = 0; r <= m; ++r) dim += multiplicity_nm(m, r) * (r + 1);
      mpz_class two_m;
      mpz_ui_pow_ui(two_m.get_mpz_t(), 2, m);
      if (dim != two_m || multiplicity_nm(m, m) != 1) fail(mult, {{"m", m}, {"dimension", dim.get_str()}});
    } catch (const Error& e) {
      fail(mult, {{"m", m}, {"error", e.what()}});
    }
  }

  CheckResult sym2{"Σ_i binom(m,i) a(i) = C(m) and a(m) >= 0"};
  for (unsigned m = 0; m <= max_order; ++m) {
    ++sym2.cases;
    mpz_class sum = 0;
    for (unsigned i = 0; i <= m; ++i) sum += binomial(m, i) * sym2_multiplicity(i);
    if (sum != catalan(m) || sym2_multiplicity(m) < 0) {
      fail(sym2, {{"m", m}, {"sum", sum.get_str()}, {"catalan", catalan(m).get_str()}});
    }
  }

  CheckResult comb{"C(m)C(m+1) = Σ_s binom(2m,2s) C(m-s) C(s)"};
  for (unsigned m = 1; m <= max_order; ++m) {
    ++comb.cases;
    const auto [lhs, rhs] = combmom_check(m);
    if (lhs != rhs) fail(comb, {{"m", m}, {"lhs", lhs.get_str()}, {"rhs", rhs.get_str()}});
  }

  CheckResult gam{"C(m)C(m+1) = (4·16^m/π) Γ(m+1/2)Γ(m+3/2)/(Γ(m+2)Γ(m+3))"};
  for (unsigned m = 0; m <= max_order; ++m) {
    ++gam.cases;
    const auto [lhs, rhs] = catalan_gamma_identity(m);
    if (lhs != rhs) fail(gam, {{"m", m}, {"lhs", lhs.get_str()}, {"rhs", rhs.get_str()}});
  }

  report.checks = {cat, mult, sym2, comb, gam};
  return report;
}

namespace {

void within(CheckResult& c, const std::string& label, double got, double expected, double tol) {
  ++c.cases;
  if (!(std::abs(got - expected) <= tol)) {
    fail(c, {{"case", label}, {"value", got}, {"expected", expected}, {"tolerance", tol}});
  }
}

}  // namespace

SuiteReport density_suite() {
  SuiteReport report{"density", {}};

  CheckResult norm{"theorem1 density integrates to 1"};
  within(norm, "∫ pdf", theorem1_cdf(-4.0, 4.0, 1e-10), 1.0, 1e-6);

  CheckResult t1{"theorem1 density moments"};
  const auto spec = DensitySpec::theorem1();
  for (unsigned m = 1; m <= 4; ++m) {
    within(t1, "m=" + std::to_string(m), density_moment(spec, m), theorem1_limit(m).get_d(), 1e-3);
  }

  CheckResult pos{"theorem1 pdf nonnegative and even on a 1000-point grid"};
  for (int i = 0; i < 1000; ++i) {
    ++pos.cases;
    const double t = -4.0 + 8.0 * (i + 0.5) / 1000.0;
    const double f = theorem1_pdf(t);
    if (!(f >= 0.0) || f != theorem1_pdf(-t)) fail(pos, {{"t", t}, {"pdf", f}});
  }

  CheckResult semi{"semicircle moments"};
  for (unsigned m = 0; m <= 4; ++m) {
    within(semi, "m=" + std::to_string(m), density_moment(DensitySpec::semicircle(), m),
           theorem3_limit(m).get_d(), 1e-9);
  }

  CheckResult semicdf{"semicircle cdf matches integrated pdf"};
  for (const double x : {-1.9, -1.0, -0.3, 0.0, 0.7, 1.5, 1.99}) {
    // Same substitution as the moments: x = 2 sin θ.
    const auto f = [](double th) { return 4.0 * std::cos(th) * std::cos(th) / (2.0 * M_PI); };
    const double numeric = integrate(f, -M_PI / 2, std::asin(x / 2.0), 1e-13).value;
    within(semicdf, "x=" + std::to_string(x), semicircle_cdf(x), numeric, 1e-9);
  }

  CheckResult prod{"product semicircle moments"};
  for (unsigned n = 0; n <= 4; ++n) {
    for (unsigned m = 0; m <= 4; ++m) {
      within(prod, "(" + std::to_string(n) + "," + std::to_string(m) + ")", product_moment(n, m),
             theorem2_limit(n, m).get_d(), 1e-3);
    }
  }

  CheckResult transform{"Meijer G shift and moment-chain identities"};
  for (const auto& c : meijer_transform_checks()) {
    ++transform.cases;
    if (!c.passed()) {
      fail(transform, {{"case", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"tolerance", c.tolerance}});
    }
  }

  report.checks = {norm, t1, pos, semi, semicdf, prod, transform};
  return report;
}

}  // namespace hypmoments

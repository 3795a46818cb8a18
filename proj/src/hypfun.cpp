#include "hypmoments/hypfun.hpp"

#include <cmath>
#include <numeric>

#include "hypmoments/curves.hpp"
#include "hypmoments/error.hpp"

namespace hypmoments {

Fraction::Fraction(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const auto g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

Fraction operator+(Fraction a, Fraction b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Fraction operator-(Fraction a, Fraction b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }

std::string Fraction::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

HypDatum::HypDatum(std::vector<Fraction> alpha, std::vector<Fraction> beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), modulus_(1) {
  if (alpha_.empty() || alpha_.size() != beta_.size()) {
    throw Error(ErrorCode::InvalidInput, "α and β must be nonempty and of equal length");
  }
  if (beta_.front() != Fraction(1)) throw Error(ErrorCode::InvalidInput, "β must start with 1");
  for (const auto& f : alpha_) modulus_ = std::lcm(modulus_, f.den);
  for (const auto& f : beta_) modulus_ = std::lcm(modulus_, f.den);
}

std::string HypDatum::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < alpha_.size(); ++i) out += (i ? "," : "") + alpha_[i].str();
  out += ";";
  for (std::size_t i = 0; i < beta_.size(); ++i) out += (i ? "," : "") + beta_[i].str();
  return out + "}";
}

std::int64_t datum_modulus(const HypDatum& datum) { return datum.modulus(); }

namespace {

void require_builtin_d(int d) {
  if (d != 2 && d != 3 && d != 4 && d != 6) {
    throw Error(ErrorCode::InvalidInput, "d must be one of 2, 3, 4, 6");
  }
}

}  // namespace

HypDatum length4_datum(int d) {
  require_builtin_d(d);
  const Fraction e(1, 2 * d);
  const Fraction half(1, 2);
  return HypDatum({e, Fraction(1) - e, e + half, half - e}, {1, half, 1, half});
}

HypDatum length2_datum(int d) {
  require_builtin_d(d);
  return HypDatum({Fraction(1, d), Fraction(d - 1, d)}, {1, 1});
}

HypDatum clausen_datum() {
  const Fraction half(1, 2);
  return HypDatum({half, half, half}, {1, 1, 1});
}

DirectEvaluator::DirectEvaluator(const PrimeFieldContext& ctx, const GaussSumTable& gauss,
                                 const HypDatum& datum)
    : ctx_(&ctx), gauss_(&gauss), sign_(datum.length() % 2 == 0 ? 1 : -1) {
  const std::uint32_t p = ctx.p();
  const std::int64_t q = static_cast<std::int64_t>(p) - 1;
  if (gauss.p() != p) throw Error(ErrorCode::InvalidInput, "Gauss-sum table built for another prime");
  if (q % datum.modulus() != 0) {
    throw Error(ErrorCode::ModulusMismatch, "p = " + std::to_string(p) + " is not 1 mod " +
                                                std::to_string(datum.modulus()));
  }

  const auto n = datum.length();
  std::vector<std::int64_t> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = q / datum.alpha()[i].den * datum.alpha()[i].num;
    b[i] = q / datum.beta()[i].den * datum.beta()[i].num;
  }

  std::complex<double> norm(1.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    norm *= gauss(CharacterIndex(a[i], p)) * gauss(CharacterIndex(-b[i], p));
  }
  const std::complex<double> scale = 1.0 / (norm * (1.0 - static_cast<double>(p)));

  weights_.resize(static_cast<std::size_t>(q));
  for (std::int64_t k = 0; k < q; ++k) {
    std::complex<double> term(1.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      term *= gauss(CharacterIndex(k + a[i], p)) * gauss(CharacterIndex(-k - b[i], p));
    }
    weights_[static_cast<std::size_t>(k)] = term * scale;
  }
}

std::complex<double> DirectEvaluator::evaluate_complex(Residue lambda) const {
  const std::uint32_t p = ctx_->p();
  lambda %= p;
  if (lambda == 0) return {1.0, 0.0};
  const Residue arg = sign_ > 0 ? lambda : p - lambda;
  const std::uint64_t ind = ctx_->dlog(arg);
  std::complex<double> sum(0.0, 0.0);
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    sum += weights_[k] * gauss_->unit_root(k * ind);
  }
  return sum;
}

std::int64_t DirectEvaluator::evaluate(Residue lambda) const {
  const auto z = evaluate_complex(lambda);
  const double guard = 1e-6 * std::sqrt(static_cast<double>(ctx_->p()));
  const double rounded = std::round(z.real());
  if (std::abs(z.imag()) > guard || std::abs(z.real() - rounded) > guard) {
    throw Error(ErrorCode::PrecisionLoss,
                "H_p(" + std::to_string(lambda) + ") = " + std::to_string(z.real()) + " + " +
                    std::to_string(z.imag()) + "i is not within the rounding guard at p = " +
                    std::to_string(ctx_->p()));
  }
  return static_cast<std::int64_t>(rounded);
}

std::int64_t hp_direct(const PrimeFieldContext& ctx, const HypDatum& datum, Residue lambda) {
  if (lambda % ctx.p() == 0) {
    if ((ctx.p() - 1) % datum.modulus() != 0) {
      throw Error(ErrorCode::ModulusMismatch, "p is not 1 mod M");
    }
    return 1;
  }
  const GaussSumTable gauss(ctx);
  return DirectEvaluator(ctx, gauss, datum).evaluate(lambda);
}

std::int64_t hp_via_traces(int d, const TraceSweep& sweep_plus, const TraceSweep& sweep_minus,
                           const PrimeFieldContext& ctx, Residue mu) {
  if (d != 2 && d != 3 && d != 4 && d != 6) {
    throw Error(ErrorCode::InvalidInput, "d must be one of 2, 3, 4, 6");
  }
  const std::uint32_t p = ctx.p();
  if (sweep_plus.p() != p || sweep_minus.p() != p) {
    throw Error(ErrorCode::SweepMismatch, "sweeps and field context disagree on p");
  }
  mu %= p;
  if (mu == 0 || mu == 1) {
    throw Error(ErrorCode::BoundaryLambda, "mu = " + std::to_string(mu) + " is a boundary point");
  }
  if (ctx.quadchar(mu) < 0) return 0;
  const Residue lambda = ctx.power_of_generator(ctx.dlog(mu) / 2);
  if (sweep_plus.bad(lambda) || sweep_minus.bad(lambda)) {
    throw Error(ErrorCode::DomainError,
                "bad reduction at lambda = " + std::to_string(lambda) + " for mu = " + std::to_string(mu));
  }
  return static_cast<std::int64_t>(sweep_plus.trace(lambda)) + sweep_minus.trace(lambda);
}

}  // namespace hypmoments

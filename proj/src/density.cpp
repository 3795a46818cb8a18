#include "hypmoments/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypmoments/error.hpp"
#include "hypmoments/quadrature.hpp"
#include "hypmoments/theory.hpp"

namespace hypmoments {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

double btilde(double x) { return 0.5 * (x * x - x); }

}  // namespace

cplx lgamma_complex(cplx z) {
  if (z.real() <= 0.0) throw Error(ErrorCode::DomainError, "lgamma_complex needs Re z > 0");
  cplx shift = 1.0;
  bool shifted = false;
  while (std::abs(z) < 15.0) {
    shift *= z;
    z += 1.0;
    shifted = true;
  }
  const cplx zi = 1.0 / z;
  const cplx zi2 = zi * zi;
  // Stirling series, Bernoulli terms through B_14.
  const cplx series =
      zi * (1.0 / 12 +
            zi2 * (-1.0 / 360 +
                   zi2 * (1.0 / 1260 +
                          zi2 * (-1.0 / 1680 +
                                 zi2 * (1.0 / 1188 + zi2 * (-691.0 / 360360 + zi2 * (1.0 / 156)))))));
  cplx result = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
  if (shifted) result -= std::log(shift);
  return result;
}

double meijer_g22(const MeijerParams& params, double z, const MeijerOptions& opts) {
  if (!(z > 0.0)) throw Error(ErrorCode::DomainError, "Meijer G needs z > 0");
  if (z > 1.0) return 0.0;

  const double bmin = std::min(params.b[0], params.b[1]);
  const double delta = std::max(params.b[0], params.b[1]) - bmin;
  const double alpha1 = params.a[0] - bmin;
  const double alpha2 = params.a[1] - bmin;
  const double kappa = alpha1 + alpha2 - delta;
  if (!(kappa > 1.0)) throw Error(ErrorCode::DomainError, "Meijer G contour integral diverges");

  // F(s) = K1 + c2·K2 + O(u^{-κ-2}) with u = bmin - s, where K1 and K2 are
  // Γ ratios whose inverse Mellin transforms are elementary.
  const double c2 = btilde(0.0) + btilde(delta) - btilde(alpha1) - btilde(alpha2) + btilde(kappa);
  const double lg_k1 = std::lgamma(kappa);
  const double lg_k2 = std::lgamma(kappa + 1.0);
  const double log_z = std::log(z);
  const double w = 1.0 - z;
  const double elementary =
      std::exp(bmin * log_z) * (std::pow(w, kappa - 1.0) / std::exp(lg_k1) + c2 * std::pow(w, kappa) / std::exp(lg_k2));

  const double c = bmin - opts.contour_offset;
  const double u_re = bmin - c;
  const auto remainder = [&](double y) {
    const cplx u(u_re, -y);
    const cplx lg_u = lgamma_complex(u);
    const cplx f = std::exp(lg_u + lgamma_complex(u + delta) - lgamma_complex(u + alpha1) -
                            lgamma_complex(u + alpha2));
    const cplx k1 = std::exp(lg_u - lgamma_complex(u + kappa));
    const cplx k2 = std::exp(lg_u - lgamma_complex(u + kappa + 1.0));
    return f - k1 - c2 * k2;
  };
  const double zc = std::exp(c * log_z);
  const auto integrand = [&](double y) {
    const cplx zs = zc * std::polar(1.0, y * log_z);
    return (remainder(y) * zs).real();
  };

  // G = elementary + (1/π) ∫_0^∞ Re[R(c+iy) z^{c+iy}] dy
  const double budget = kPi * opts.tolerance;
  double lo = 0.0;
  double hi = 64.0;
  double integral = integrate(integrand, lo, hi, 0.5 * budget).value;
  for (int round = 0; round < 16; ++round) {
    const double tail = std::abs(remainder(hi)) * zc * hi / (kappa + 1.0);
    if (tail <= 0.1 * budget) return elementary + integral / kPi;
    lo = hi;
    hi *= 2.0;
    integral += integrate(integrand, lo, hi, 0.25 * budget).value;
  }
  throw Error(ErrorCode::QuadratureFailure, "Meijer G contour truncation did not converge");
}

double meijer_g_t1(double z, const MeijerOptions& opts) {
  if (!(z > 0.0) || z > 1.0) throw Error(ErrorCode::DomainError, "meijer_g_t1 needs 0 < z <= 1");
  return meijer_g22({{2.0, 3.0}, {0.5, 1.5}}, z, opts);
}

double semicircle_pdf(double x) {
  if (x <= -2.0 || x >= 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * kPi);
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  const double v = 0.5 + (x * std::sqrt(4.0 - x * x) + 4.0 * std::asin(x / 2.0)) / (4.0 * kPi);
  return std::clamp(v, 0.0, 1.0);
}

double theorem1_pdf(double t) {
  if (!(std::abs(t) <= 4.0)) throw Error(ErrorCode::DomainError, "theorem1_pdf needs |t| <= 4");
  const double a = std::max(std::abs(t), 1e-4);
  if (a == 4.0) return 0.0;
  return 4.0 / (kPi * a) * meijer_g_t1(a * a / 16.0);
}

namespace {

// ∫_0^x theorem1_pdf for 0 <= x <= 4.
double theorem1_half_mass(double x, double tolerance) {
  if (x <= 0.0) return 0.0;
  return integrate(theorem1_pdf, 0.0, x, tolerance).value;
}

double signed_half_mass(double x, double tolerance) {
  return x < 0 ? -theorem1_half_mass(-x, tolerance) : theorem1_half_mass(x, tolerance);
}

}  // namespace

double theorem1_cdf(double a, double b, double tolerance) {
  if (!(a >= -4.0 && b <= 4.0 && a < b)) {
    throw Error(ErrorCode::DomainError, "theorem1_cdf needs -4 <= a < b <= 4");
  }
  if (a >= 0.0 || b <= 0.0) {
    const double lo = std::min(std::abs(a), std::abs(b));
    const double hi = std::max(std::abs(a), std::abs(b));
    return integrate(theorem1_pdf, lo, hi, tolerance).value;
  }
  return signed_half_mass(b, tolerance / 2) - signed_half_mass(a, tolerance / 2);
}

Theorem1CdfTable::Theorem1CdfTable(std::size_t cells) : step_(4.0 / static_cast<double>(cells)) {
  if (cells == 0) throw Error(ErrorCode::InvalidInput, "cdf table needs at least one cell");
  half_.assign(cells + 1, 0.0);
  for (std::size_t i = 0; i < cells; ++i) {
    const double lo = step_ * static_cast<double>(i);
    const double hi = i + 1 == cells ? 4.0 : step_ * static_cast<double>(i + 1);
    half_[i + 1] = half_[i] + integrate_fixed(theorem1_pdf, lo, hi, 6);
  }
}

double Theorem1CdfTable::operator()(double t) const {
  if (t <= -4.0) return 0.0;
  if (t >= 4.0) return 1.0;
  const double a = std::abs(t);
  const double pos = a / step_;
  const auto i = std::min(static_cast<std::size_t>(pos), half_.size() - 2);
  const double frac = pos - static_cast<double>(i);
  const double mass = half_[i] + frac * (half_[i + 1] - half_[i]);
  return std::clamp(t < 0 ? 0.5 - mass : 0.5 + mass, 0.0, 1.0);
}

std::string to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::Semicircle:
      return "semicircle";
    case DensityKind::ProductSemicircle:
      return "product_semicircle";
    case DensityKind::MeijerTheorem1:
      return "theorem1";
  }
  return "unknown";
}

DensityKind density_kind_from_string(const std::string& name) {
  if (name == "semicircle") return DensityKind::Semicircle;
  if (name == "product_semicircle" || name == "product") return DensityKind::ProductSemicircle;
  if (name == "theorem1" || name == "meijer") return DensityKind::MeijerTheorem1;
  throw Error(ErrorCode::InvalidInput, "unknown density '" + name + "'");
}

DensitySpec DensitySpec::semicircle() { return {DensityKind::Semicircle, -2.0, 2.0, 1e-12}; }
DensitySpec DensitySpec::product_semicircle() { return {DensityKind::ProductSemicircle, -2.0, 2.0, 1e-12}; }
DensitySpec DensitySpec::theorem1() { return {DensityKind::MeijerTheorem1, -4.0, 4.0, 1e-9}; }

double DensitySpec::pdf(double x) const {
  if (kind == DensityKind::MeijerTheorem1) return std::abs(x) > 4.0 ? 0.0 : theorem1_pdf(x);
  return semicircle_pdf(x);
}

double DensitySpec::cdf(double x) const {
  if (kind != DensityKind::MeijerTheorem1) return semicircle_cdf(x);
  if (x <= -4.0) return 0.0;
  if (x >= 4.0) return 1.0;
  return 0.5 + signed_half_mass(x, tolerance);
}

namespace {

// ∫ x^m semicircle(x) dx with x = 2 sin θ, which removes the endpoint square roots.
double semicircle_moment(unsigned m, double tolerance) {
  const auto f = [m](double theta) {
    const double c = std::cos(theta);
    return std::pow(2.0 * std::sin(theta), static_cast<int>(m)) * 4.0 * c * c / (2.0 * kPi);
  };
  return integrate(f, -kPi / 2, kPi / 2, tolerance).value;
}

}  // namespace

double density_moment(const DensitySpec& spec, unsigned m) {
  if (spec.kind != DensityKind::MeijerTheorem1) return semicircle_moment(m, spec.tolerance);
  const auto f = [m](double t) { return std::pow(t, static_cast<int>(m)) * theorem1_pdf(t); };
  return integrate(f, -4.0, 0.0, spec.tolerance / 2).value + integrate(f, 0.0, 4.0, spec.tolerance / 2).value;
}

double product_moment(unsigned n, unsigned m, double tolerance) {
  return semicircle_moment(n, tolerance) * semicircle_moment(m, tolerance);
}

bool TransformCheck::passed() const { return std::abs(lhs - rhs) <= tolerance; }

std::vector<TransformCheck> meijer_transform_checks() {
  std::vector<TransformCheck> out;
  const MeijerParams base{{2.0, 3.0}, {0.5, 1.5}};
  for (const double rho : {0.0, -1.0, 0.5}) {
    const MeijerParams shifted{{2.0 + rho, 3.0 + rho}, {0.5 + rho, 1.5 + rho}};
    for (const double z : {0.3, 0.9}) {
      TransformCheck c;
      c.name = "shift rho=" + std::to_string(rho) + " z=" + std::to_string(z);
      // Different contour offsets keep the two sides independent.
      c.lhs = std::pow(z, rho) * meijer_g22(base, z, {1e-12, 0.25});
      c.rhs = meijer_g22(shifted, z, {1e-12, 0.4});
      c.tolerance = 1e-7;
      out.push_back(c);
    }
  }
  for (unsigned m = 0; m <= 2; ++m) {
    const double mm = m;
    const MeijerParams params{{mm + 1.5, mm + 2.5}, {mm, mm + 1.0}};
    const auto f = [&](double v) { return 2.0 * meijer_g22(params, v * v, {1e-12, 0.25}); };
    TransformCheck c;
    c.name = "moment chain m=" + std::to_string(m);
    c.lhs = integrate(f, 0.0, 1.0, 1e-10).value;
    c.rhs = std::exp(std::lgamma(mm + 0.5) + std::lgamma(mm + 1.5) - std::lgamma(mm + 2.0) - std::lgamma(mm + 3.0));
    c.tolerance = 1e-7;
    out.push_back(c);

    TransformCheck k;
    k.name = "gamma ratio vs catalan m=" + std::to_string(m);
    k.lhs = c.rhs;
    k.rhs = kPi / (4.0 * std::pow(16.0, mm)) * mpz_class(catalan(m) * catalan(m + 1)).get_d();
    k.tolerance = 1e-12;
    out.push_back(k);
  }
  return out;
}

}  // namespace hypmoments

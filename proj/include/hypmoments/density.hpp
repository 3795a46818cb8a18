#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace hypmoments {

/// log Γ(z) for Re z > 0. The imaginary part is only defined modulo 2π.
std::complex<double> lgamma_complex(std::complex<double> z);

struct MeijerParams {
  std::array<double, 2> a;
  std::array<double, 2> b;
};

struct MeijerOptions {
  double tolerance = 1e-11;  // absolute, on G itself
  double contour_offset = 0.25;  // contour sits at Re s = min(b) - offset
};

/// G^{2,0}_{2,2}[a1, a2; b1, b2 | z] by quadrature along a vertical contour to
/// the left of both b poles. Needs a1 + a2 - b1 - b2 > 1. Returns 0 for z > 1.
/// Throws Error{DomainError} for z <= 0, Error{QuadratureFailure} if the
/// tolerance cannot be met.
double meijer_g22(const MeijerParams& params, double z, const MeijerOptions& opts = {});

/// G^{2,0}_{2,2}[2, 3; 1/2, 3/2 | z] for 0 < z <= 1.
double meijer_g_t1(double z, const MeijerOptions& opts = {});

double semicircle_pdf(double x);
double semicircle_cdf(double x);

/// Limiting density of H_p(α_d, β | λ²)/√p on [-4, 4].
double theorem1_pdf(double t);
/// ∫_a^b theorem1_pdf for -4 <= a < b <= 4.
double theorem1_cdf(double a, double b, double tolerance = 1e-9);

/// Tabulated P(T <= t) for the theorem1 density, linear between grid points.
class Theorem1CdfTable {
 public:
  explicit Theorem1CdfTable(std::size_t cells = 800);
  double operator()(double t) const;
  /// Mass of the tabulated density; 1 up to quadrature error.
  double total() const { return 2.0 * half_.back(); }

 private:
  double step_;
  std::vector<double> half_;  // ∫_0^{i·step} pdf
};

enum class DensityKind { Semicircle, ProductSemicircle, MeijerTheorem1 };

std::string to_string(DensityKind kind);
DensityKind density_kind_from_string(const std::string& name);

struct DensitySpec {
  DensityKind kind = DensityKind::Semicircle;
  double lo = -2.0;
  double hi = 2.0;
  double tolerance = 1e-10;

  static DensitySpec semicircle();
  static DensitySpec product_semicircle();
  static DensitySpec theorem1();

  /// One-dimensional pdf; for the product density this is a marginal.
  double pdf(double x) const;
  double cdf(double x) const;
};

/// ∫ x^m pdf(x) dx.
double density_moment(const DensitySpec& spec, unsigned m);
/// ∫∫ x^n y^m pdf(x, y) for the product semicircle density.
double product_moment(unsigned n, unsigned m, double tolerance = 1e-12);

struct TransformCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool passed() const;
};

/// Shift identity z^ρ G[a; b | z] = G[a + ρ; b + ρ | z] at a few points, and
/// the moment chain ∫_0^1 2 G[m+3/2, m+5/2; m, m+1 | v²] dv =
/// Γ(m+1/2)Γ(m+3/2)/(Γ(m+2)Γ(m+3)) for m in {0, 1, 2}.
std::vector<TransformCheck> meijer_transform_checks();

}  // namespace hypmoments

#pragma once

#include <cstddef>
#include <functional>

namespace hypmoments {

struct QuadratureResult {
  double value = 0.0;
  double abserr = 0.0;
  std::size_t evaluations = 0;
};

/// Globally adaptive Gauss–Kronrod quadrature of f over [a, b]. Stops once the
/// error estimate is below max(abs_tol, rel_tol·|value|); throws
/// Error{QuadratureFailure} if that cannot be reached within `max_intervals`
/// subdivisions.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           double rel_tol = 0.0, std::size_t max_intervals = 4000);

/// n-point Gauss–Legendre rule on [a, b].
double integrate_fixed(const std::function<double(double)>& f, double a, double b, std::size_t points);

}  // namespace hypmoments

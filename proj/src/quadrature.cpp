#include "hypmoments/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <string>

#include "hypmoments/error.hpp"

namespace hypmoments {

namespace {

struct Closure {
  const std::function<double(double)>* f;
  std::size_t calls;
};

double trampoline(double x, void* params) {
  auto* c = static_cast<Closure*>(params);
  ++c->calls;
  return (*c->f)(x);
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

const bool kGslHandlerOff = [] {
  gsl_set_error_handler_off();
  return true;
}();

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           double rel_tol, std::size_t max_intervals) {
  (void)kGslHandlerOff;
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(max_intervals));
  Closure closure{&f, 0};
  gsl_function fn{&trampoline, &closure};
  QuadratureResult r;
  const int status = gsl_integration_qag(&fn, a, b, abs_tol, rel_tol, max_intervals, GSL_INTEG_GAUSS31,
                                         ws.get(), &r.value, &r.abserr);
  r.evaluations = closure.calls;
  if (status != GSL_SUCCESS) {
    throw Error(ErrorCode::QuadratureFailure, "integral over [" + std::to_string(a) + ", " +
                                                  std::to_string(b) + "]: " + gsl_strerror(status) +
                                                  " (error estimate " + std::to_string(r.abserr) + ")");
  }
  return r;
}

double integrate_fixed(const std::function<double(double)>& f, double a, double b, std::size_t points) {
  std::unique_ptr<gsl_integration_glfixed_table, void (*)(gsl_integration_glfixed_table*)> table(
      gsl_integration_glfixed_table_alloc(points), &gsl_integration_glfixed_table_free);
  Closure closure{&f, 0};
  gsl_function fn{&trampoline, &closure};
  return gsl_integration_glfixed(&fn, a, b, table.get());
}

}  // namespace hypmoments

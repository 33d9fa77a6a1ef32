#include "lgf/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace lgf {

namespace {

void ensure_gsl_handler_off() {
  static std::once_flag flag;
  std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

double call_fn(double x, void* params) {
  auto* f = static_cast<const std::function<double(double)>*>(params);
  return (*f)(x);
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const {
    gsl_integration_workspace_free(w);
  }
};

void check_status(int status, const QuadResult& r, double epsabs) {
  // GSL reports roundoff/extrapolation table warnings even when the result
  // is well within tolerance; only escalate when the error estimate is bad.
  if (status != 0 && !(r.abserr <= 1e3 * epsabs))
    throw std::runtime_error(
        "quadrature did not converge (achieved abserr = " +
        std::to_string(r.abserr) + ", status = " +
        std::string(gsl_strerror(status)) + ")");
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, double epsabs, double epsrel) {
  ensure_gsl_handler_off();
  constexpr std::size_t kLimit = 4096;
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(kLimit));
  gsl_function gf;
  gf.function = &call_fn;
  gf.params = const_cast<std::function<double(double)>*>(&f);
  QuadResult r;
  const int status = gsl_integration_qags(&gf, a, b, epsabs, epsrel, kLimit,
                                          ws.get(), &r.value, &r.abserr);
  check_status(status, r, epsabs);
  return r;
}

QuadResult integrate_infinite(const std::function<double(double)>& f,
                              double epsabs, double epsrel) {
  ensure_gsl_handler_off();
  constexpr std::size_t kLimit = 4096;
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(kLimit));
  gsl_function gf;
  gf.function = &call_fn;
  gf.params = const_cast<std::function<double(double)>*>(&f);
  QuadResult r;
  const int status = gsl_integration_qagi(&gf, epsabs, epsrel, kLimit,
                                          ws.get(), &r.value, &r.abserr);
  check_status(status, r, epsabs);
  return r;
}

}  // namespace lgf

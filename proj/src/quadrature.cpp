#include "sphsemi/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace sphsemi {

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double tol, double* err_estimate) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  const double v = gauss_kronrod<double, 15>::integrate(f, a, b, 14, tol, &err);
  if (err_estimate) *err_estimate = err;
  return v;
}

double integrate_density_line(const std::function<double(double)>& f, double R,
                              double tol) {
  const double core = integrate_gk(f, -R, R, tol);
  // densities here decay at least like e^{-|xi|}; bound the clipped tails by
  // the boundary values against that envelope
  const double tail = std::abs(f(R)) + std::abs(f(-R));
  return core + tail;  // tail estimate ~ f(R)/rate with rate >= 1
}

}  // namespace sphsemi

#pragma once

#include <functional>

#include "sphsemi/common.hpp"

namespace sphsemi {

// Adaptive Gauss-Kronrod on [a, b]; returns the integral, writes the error
// estimate if requested.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double tol, double* err_estimate = nullptr);

// Integral of an exponentially decaying density over the real line:
// Gauss-Kronrod on [-R, R] plus an exponential-fit boundary tail estimate.
double integrate_density_line(const std::function<double(double)>& f, double R,
                              double tol);

}  // namespace sphsemi

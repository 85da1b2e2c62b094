#pragma once

#include "sphsemi/common.hpp"

namespace sphsemi {

// ---------------------------------------------------------------------------
// A point of the Gelfand spectrum  Omega = iR u [-1,1]:
// principal series (real parameter xi, spherical function sin(xi x)/(xi sinh x))
// or complementary series (real omega in [-1,1], sinh(omega x)/(omega sinh x)).
// ---------------------------------------------------------------------------
struct SpectralPoint {
  enum class Series { principal, complementary };

  static SpectralPoint Principal(double xi) { return {Series::principal, xi}; }
  static SpectralPoint Complementary(double omega);

  Series series;
  double value;
};

// phi_w and phi_{-w} are the same spherical function (even parameter).
bool same_spherical(const SpectralPoint& a, const SpectralPoint& b);

// Pochhammer symbol a(a+1)...(a+j-1), with (0)_0 = 1 and (0)_j = 0 for j>=1.
double pochhammer(double a, unsigned j);

// Laguerre polynomial of index -1, evaluated by the three-term recurrence
//   n L_n = (2n-2-x) L_{n-1} - (n-2) L_{n-2},   L_0 = 1, L_1 = -x.
double laguerre_neg1(unsigned j, double x);

// Direct evaluation of the defining sum
//   L_j^{(-1)}(x) = (1/j!) sum_m (-1)^m C(j,m) (m)_{j-m} x^m.
// Kept as an independent oracle; cancels catastrophically for large j x > 0,
// so the overload reports the absolute-term sum (its conditioning scale).
double laguerre_neg1_direct(unsigned j, double x);
double laguerre_neg1_direct(unsigned j, double x, double& abs_term_sum);

// Chebyshev polynomial of the first kind, T_n(cos a) = cos(n a).
// Evaluated by recurrence; also valid (as a polynomial) for |u| > 1.
double chebyshev_T(unsigned n, double u);

// Spherical function of the pair (SL(2,C), SU(2)) on the diagonal coordinate.
// Removable singularities (x = 0, parameter = 0) use explicit series branches.
double spherical_phi(const SpectralPoint& w, double x);

// Levy exponent factor psi_t(x) = exp(t (1 - x coth x)); even, values in (0,1].
double levy_exponent_psi(double t, double x);

// Partial sum  e^{-tx} sum_{j<=J} L_j^{(-1)}(2tx) e^{-2jx}, which converges to
// e^{-t x coth x} for x > 0 (geometrically, ratio e^{-2x}).
double generating_partial_sum(double t, double x, unsigned J);

// Radial Cauchy semigroup density in R^d at radius r:
//   Gamma((d+1)/2) pi^{-(d+1)/2} s (s^2+r^2)^{-(d+1)/2}.
double cauchy_density(double s, unsigned d, double r);

}  // namespace sphsemi

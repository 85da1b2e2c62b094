#pragma once

#include <functional>
#include <optional>

#include "sphsemi/series_tools.hpp"

namespace sphsemi {

// ---------------------------------------------------------------------------
// Exchange format between series engines, oracles and table emission.
// ---------------------------------------------------------------------------
struct DensityGrid {
  std::vector<double> points;  // strictly increasing
  std::vector<double> values;

  void validate() const;
  // uniform spacing, or throws GridMismatch
  double spacing() const;
};

// Lebesgue decomposition of the spectral kernel P_t(omega, .): an optional
// atom (subcritical regime only) plus an absolutely continuous density.
struct KernelDecomposition {
  struct Atom {
    double location;  // |omega| - t, in (0,1)
    double mass;      // e^t (|omega|-t)/|omega|
  };
  std::optional<Atom> atom;
  std::function<double(double)> density;
  double total_mass_check = 0.0;  // atom mass + integral of the density
};

enum class ISign { minus, plus };

// ---------------------------------------------------------------------------
// Series engines
// ---------------------------------------------------------------------------

// Density q_t(xi) of the Levy semigroup generated by 1 - x coth x, via the
// m-outer double series with certified truncation. Stability envelope:
// t in (0,4], |xi| <= 40 at binary64 (outside, the engine signals rather
// than degrade silently).
double qt_density(double t, double xi, const TruncationPolicy& pol = {});

// d/dxi q_t(xi) via the x^{m+1}-moment sine series (not finite differences).
double qt_density_derivative(double t, double xi, const TruncationPolicy& pol = {});

// Levy measure density (pi/4) / sinh^2(pi xi / 2), xi != 0.
double levy_density_closed(double xi);

// Partial sum 1/(pi xi^2) - (1/2pi) sum_{j<=J} (j^2-(xi/2)^2)/(j^2+(xi/2)^2)^2.
double levy_density_series(double xi, long J);

// Same with the j-tail completed by Euler-Maclaurin (converges to the closed
// form at machine precision for moderate J).
double levy_density_series_accelerated(double xi, long J);

// Principal-series spectral density: xi (q_t(xi-w) - q_t(xi+w)) / (2w);
// at w = 0, the limit -xi d/dxi q_t(xi).
double principal_density(double t, double omega, double xi,
                         const TruncationPolicy& pol = {});

// The double series I_t^{-+}(omega, xi); sign minus uses rate 2j+2m+t-omega.
// Requires the (0,0) rate t -+ omega >= 0; at exact equality the value is the
// Abel limit, valid for xi != 0.
double I_series(double t, double omega, double xi, ISign sign,
                const TruncationPolicy& pol = {});

// The j >= 1 double series J_t(omega, xi) of the subcritical decomposition,
// evaluated in the m-outer rearranged form (the (0,0) term is absent and the
// whole m = 0 row vanishes since (0)_j = delta_{j0}).
double J_series(double t, double omega, double xi,
                const TruncationPolicy& pol = {});

// Square-integrable complementary regime t >= |omega|:
//   e^t xi (I^-(omega,xi) - I^+(omega,xi)) / (2 pi omega),
// with the principal omega = 0 branch at omega = 0.
// Throws RegimeError when t < |omega| (use subcritical_decomposition).
double complementary_density(double t, double omega, double xi,
                             const TruncationPolicy& pol = {});

// Subcritical regime 0 < t < |omega|: atom at |omega|-t of mass
// e^t(|omega|-t)/|omega| plus the absolutely continuous G_t density
//   xi e^t/(2 pi |omega|) [ J_t - I_t^+ + xi/((|omega|-t)^2 + xi^2) ].
KernelDecomposition subcritical_decomposition(double t, double omega,
                                              const TruncationPolicy& pol = {});

// Intertwining kernel (pi/w) sinh(pi w) / (cosh(pi w) + cosh(pi x)), with the
// explicit w = 0 limit pi^2 / (1 + cosh(pi x)).
double intertwining_kernel(double omega, double x);

struct GridSpec {
  double min = -20.0;
  double max = 20.0;
  long n = 1281;
};

// |gamma [ integral of p_t(omega,.) x difference-quotient of q_s ] - rhs| for
// the Chapman-Kolmogorov identity, by trapezoid quadrature over the grid.
double chapman_kolmogorov_residual(double t, double s, double omega,
                                   double gamma, const GridSpec& grid = {},
                                   const TruncationPolicy& pol = {});

// Exact tail-corrected total mass of q_t over [-R, R] (verification helper).
double qt_total_mass(double t, double R = 16.0, const TruncationPolicy& pol = {});

}  // namespace sphsemi

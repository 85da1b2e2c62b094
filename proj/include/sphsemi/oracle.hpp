#pragma once

#include <cstdint>

#include "sphsemi/kernels.hpp"

namespace sphsemi {

// ---------------------------------------------------------------------------
// Independent ground truth: adaptive oscillatory Fourier inversion, numeric
// convolution, Monte Carlo stochastic area, Gaussian-average identity.
// ---------------------------------------------------------------------------

struct QuadratureSpec {
  double abs_tol = 1e-12;
  // integration cutoff X = 1 + cutoff_decades/rate (e^{-cutoff_decades} below
  // the envelope scale); panels are split at zeros of the oscillatory factor.
  double cutoff_decades = 43.0;
  int subdivide = 1;  // extra splits per oscillation panel (bracketing checks)

  void validate() const {
    if (!(abs_tol > 0.0)) throw std::domain_error("QuadratureSpec: abs_tol > 0");
    if (subdivide < 1) throw std::domain_error("QuadratureSpec: subdivide >= 1");
  }
};

// (e^t/pi) Integral_0^X cos(xi x) e^{-t x coth x} dx with panels split at the
// cosine zeros; Leibniz early termination for |xi| > 5.
double fourier_invert_psi(double t, double xi, const QuadratureSpec& spec = {});

enum class OracleWeight {
  sinh_shift,  // Integral_0^inf sin(xi x) e^{a x}   e^{-t x coth x} dx  (t > |a|)
  diff_shift,  // Integral_0^inf sin(xi x) e^{a x} ( e^{-t x coth x} - e^{-t x} ) dx
               //   (0 < t < a < 1)
};

double fourier_invert_weighted(double t, double a, double xi, OracleWeight w,
                               const QuadratureSpec& spec = {});

// Trapezoid-rule convolution of two densities on a common uniform grid; the
// result lives on the Minkowski-sum grid. O(h^2) worst case (spectrally
// accurate for smooth decaying data).
DensityGrid convolve(const DensityGrid& f, const DensityGrid& g);

// ---------------------------------------------------------------------------
// Monte Carlo: stochastic area of planar Brownian motion at unit time,
// conditioned on |B_1| near sqrt(2t).
// ---------------------------------------------------------------------------

struct AreaSimSpec {
  long n_paths = 200000;
  long n_steps = 1024;
  double bandwidth = 0.1;  // relative annulus half-width, in (0, 0.2]
  std::uint64_t seed = 20240901;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

// Terminal radius and area sum S = sum (B1 dB2 - B2 dB1) for every path.
// Deterministic in (seed, n_paths, n_steps) regardless of the thread count.
struct AreaEnsemble {
  std::vector<double> radius;
  std::vector<double> area;
};

AreaEnsemble simulate_area_ensemble(const AreaSimSpec& spec);

struct AreaEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  long n_accepted = 0;
  double acceptance_rate = 0.0;
};

// E[cos(x S) | |B_1| in sqrt(2t)(1 +- bandwidth)] from a simulated ensemble.
AreaEstimate conditional_area_cf(const AreaEnsemble& ens, double t, double x,
                                 double bandwidth);

// One-shot estimate with its own ensemble; throws InsufficientAcceptance if
// fewer than 1e-4 of the paths land in the annulus.
AreaEstimate monte_carlo_levy_area(double t, double x, const AreaSimSpec& spec);

// Richardson extrapolation over bandwidths (b, b/2) against the O(b^2)
// conditioning bias, from a single ensemble.
AreaEstimate monte_carlo_levy_area_richardson(double t, double x,
                                              const AreaSimSpec& spec);

// Integral_0^inf phi_0(x) psi_s(x) e^{-s} ds by quadrature (radialized
// Gaussian average); its closed target is 1/cosh(x).
double gaussian_average_sech(double x, const QuadratureSpec& spec = {});

}  // namespace sphsemi

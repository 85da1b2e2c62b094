#include "sphsemi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "sphsemi/quadrature.hpp"
#include "sphsemi/special_functions.hpp"

namespace sphsemi {

namespace {

// Sum an oscillatory integral over [0, X] in panels bounded by the zeros of
// the oscillating factor. The panel integrals alternate with decreasing
// magnitude once the envelope is monotone, so for fast oscillation the sum
// may stop early under the Leibniz bound (plus half the next panel).
double panel_integrate(const std::function<double(double)>& f, double X,
                       double osc_freq, double first_zero_frac,
                       const QuadratureSpec& spec) {
  spec.validate();
  if (osc_freq < 1e-12) {
    // non-oscillatory
    double v = 0.0;
    const int chunks = std::max(1, static_cast<int>(X / 20.0));
    for (int c = 0; c < chunks; ++c)
      v += integrate_gk(f, X * c / chunks, X * (c + 1) / chunks,
                        spec.abs_tol / chunks);
    return v;
  }
  const double period = pi / osc_freq;  // distance between consecutive zeros
  std::vector<double> cuts;
  cuts.push_back(0.0);
  double zero = first_zero_frac * period;
  while (zero < X && cuts.size() < 400000) {
    cuts.push_back(zero);
    zero += period;
  }
  cuts.push_back(X);

  const bool accelerate = osc_freq > 5.0;
  KahanAccumulator acc;
  double prev_mag = std::numeric_limits<double>::infinity();
  int decreasing = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double piece = 0.0;
    for (int s = 0; s < spec.subdivide; ++s) {
      const double a = cuts[k] + (cuts[k + 1] - cuts[k]) * s / spec.subdivide;
      const double b = cuts[k] + (cuts[k + 1] - cuts[k]) * (s + 1) / spec.subdivide;
      piece += integrate_gk(f, a, b, spec.abs_tol);
    }
    acc.add(piece);
    const double mag = std::abs(piece);
    decreasing = (mag <= prev_mag) ? decreasing + 1 : 0;
    prev_mag = mag;
    if (accelerate && decreasing >= 2 && mag < 0.25 * spec.abs_tol &&
        k + 2 < cuts.size()) {
      // Leibniz remainder bound: |tail| <= next panel; add half of it
      const double next =
          integrate_gk(f, cuts[k + 1], cuts[k + 2], spec.abs_tol);
      acc.add(0.5 * next);
      return acc.value();
    }
  }
  return acc.value();
}

}  // namespace

double fourier_invert_psi(double t, double xi, const QuadratureSpec& spec) {
  if (!(t > 0.0)) throw std::domain_error("fourier_invert_psi requires t > 0");
  const double X = 1.0 + spec.cutoff_decades / t;
  const double axi = std::abs(xi);
  // psi_t already carries the e^t factor: q_t(xi) = (1/pi) Int cos psi_t
  auto f = [t, axi](double x) { return std::cos(axi * x) * levy_exponent_psi(t, x); };
  const double v = panel_integrate(f, X, axi, 0.5, spec) / pi;
  if (!std::isfinite(v))
    throw ToleranceNotMet("fourier_invert_psi: quadrature failed");
  return v;
}

double fourier_invert_weighted(double t, double a, double xi, OracleWeight w,
                               const QuadratureSpec& spec) {
  if (!(t > 0.0)) throw std::domain_error("fourier_invert_weighted requires t > 0");
  double rate;  // exponential decay rate of the envelope
  if (w == OracleWeight::sinh_shift) {
    if (!(t - std::abs(a) > 0.0))
      throw std::domain_error("sinh_shift oracle requires t > |a|");
    rate = t - a;
  } else {
    if (!(0.0 < t && t < a && a < 1.0))
      throw std::domain_error("diff_shift oracle requires 0 < t < a < 1");
    rate = 2.0 + t - a;
  }
  const double X = 1.0 + spec.cutoff_decades / rate;
  const double axi = std::abs(xi);
  std::function<double(double)> f;
  if (w == OracleWeight::sinh_shift) {
    f = [t, a, axi](double x) {
      return std::sin(axi * x) * std::exp(a * x) * levy_exponent_psi(t, x) *
             std::exp(-t);
    };
  } else {
    f = [t, a, axi](double x) {
      return std::sin(axi * x) * std::exp(a * x) *
             (levy_exponent_psi(t, x) * std::exp(-t) - std::exp(-t * x));
    };
  }
  const double v = panel_integrate(f, X, axi, 1.0, spec);
  if (!std::isfinite(v))
    throw ToleranceNotMet("fourier_invert_weighted: quadrature failed");
  return xi >= 0.0 ? v : -v;
}

DensityGrid convolve(const DensityGrid& f, const DensityGrid& g) {
  f.validate();
  g.validate();
  const double h = f.spacing();
  const double hg = g.spacing();
  if (std::abs(h - hg) > 1e-9 * std::abs(h))
    throw GridMismatch("convolve: spacings differ");

  const std::size_t nf = f.points.size(), ng = g.points.size();
  DensityGrid out;
  out.points.resize(nf + ng - 1);
  out.values.assign(nf + ng - 1, 0.0);
  for (std::size_t n = 0; n < out.points.size(); ++n)
    out.points[n] = f.points.front() + g.points.front() + h * n;
  for (std::size_t n = 0; n < out.points.size(); ++n) {
    const std::size_t klo = n >= ng ? n - ng + 1 : 0;
    const std::size_t khi = std::min(nf - 1, n);
    KahanAccumulator acc;
    for (std::size_t k = klo; k <= khi; ++k) {
      const double w = (k == klo || k == khi) ? 0.5 : 1.0;  // trapezoid ends
      acc.add(w * f.values[k] * g.values[n - k]);
    }
    out.values[n] = h * acc.value();
  }
  return out;
}

void AreaSimSpec::validate() const {
  if (n_paths < 1 || n_steps < 1)
    throw std::domain_error("AreaSimSpec: n_paths, n_steps >= 1");
  if (!(bandwidth > 0.0 && bandwidth <= 0.2))
    throw std::domain_error("AreaSimSpec: bandwidth must lie in (0, 0.2]");
}

namespace {

struct PathRng {
  std::mt19937_64 gen;
  bool have_spare = false;
  double spare = 0.0;

  explicit PathRng(std::uint64_t seed) : gen(seed) {}

  double uniform() {
    // strictly inside (0,1)
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
  }
  double normal() {  // Box-Muller, deterministic across platforms
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * pi * u2;
    spare = r * std::sin(th);
    have_spare = true;
    return r * std::cos(th);
  }
};

}  // namespace

AreaEnsemble simulate_area_ensemble(const AreaSimSpec& spec) {
  spec.validate();
  AreaEnsemble ens;
  ens.radius.resize(spec.n_paths);
  ens.area.resize(spec.n_paths);

  const double dt = 1.0 / spec.n_steps;
  const double sq = std::sqrt(dt);
  auto run_range = [&](long lo, long hi) {
    for (long p = lo; p < hi; ++p) {
      std::uint64_t state = spec.seed + 0x632be59bd9b4e019ull * (p + 1);
      PathRng rng(splitmix64(state));
      double b1 = 0.0, b2 = 0.0, s = 0.0;
      for (long k = 0; k < spec.n_steps; ++k) {
        const double d1 = sq * rng.normal();
        const double d2 = sq * rng.normal();
        s += b1 * d2 - b2 * d1;
        b1 += d1;
        b2 += d2;
      }
      ens.radius[p] = std::hypot(b1, b2);
      ens.area[p] = s;
    }
  };

  int nthreads = spec.threads > 0
                     ? spec.threads
                     : std::max(1u, std::thread::hardware_concurrency());
  nthreads = static_cast<int>(std::min<long>(nthreads, spec.n_paths));
  if (nthreads <= 1) {
    run_range(0, spec.n_paths);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (spec.n_paths + nthreads - 1) / nthreads;
    for (int i = 0; i < nthreads; ++i) {
      const long lo = i * chunk;
      const long hi = std::min<long>(spec.n_paths, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return ens;
}

AreaEstimate conditional_area_cf(const AreaEnsemble& ens, double t, double x,
                                 double bandwidth) {
  const double r0 = std::sqrt(2.0 * t);
  std::vector<double> vals;
  vals.reserve(ens.area.size() / 4);
  for (std::size_t p = 0; p < ens.area.size(); ++p)
    if (std::abs(ens.radius[p] - r0) < bandwidth * r0)
      vals.push_back(std::cos(x * ens.area[p]));

  AreaEstimate est;
  est.n_accepted = static_cast<long>(vals.size());
  est.acceptance_rate =
      static_cast<double>(vals.size()) / static_cast<double>(ens.area.size());
  if (vals.empty()) return est;
  est.estimate = pairwise_sum(vals) / static_cast<double>(vals.size());
  std::vector<double> sq(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double d = vals[i] - est.estimate;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq) / std::max<std::size_t>(1, vals.size() - 1);
  est.stderr_ = std::sqrt(var / static_cast<double>(vals.size()));
  return est;
}

AreaEstimate monte_carlo_levy_area(double t, double x, const AreaSimSpec& spec) {
  if (!(t > 0.0)) throw std::domain_error("monte_carlo_levy_area requires t > 0");
  const auto ens = simulate_area_ensemble(spec);
  const auto est = conditional_area_cf(ens, t, x, spec.bandwidth);
  if (est.acceptance_rate < 1e-4)
    throw InsufficientAcceptance("monte_carlo_levy_area: annulus acceptance below 1e-4");
  return est;
}

AreaEstimate monte_carlo_levy_area_richardson(double t, double x,
                                              const AreaSimSpec& spec) {
  if (!(t > 0.0)) throw std::domain_error("monte_carlo_levy_area requires t > 0");
  const auto ens = simulate_area_ensemble(spec);
  const auto full = conditional_area_cf(ens, t, x, spec.bandwidth);
  const auto half = conditional_area_cf(ens, t, x, spec.bandwidth / 2.0);
  if (full.acceptance_rate < 1e-4 || half.n_accepted == 0)
    throw InsufficientAcceptance("monte_carlo_levy_area: annulus acceptance below 1e-4");
  AreaEstimate est;
  // bias is O(bandwidth^2): eliminate the leading term
  est.estimate = (4.0 * half.estimate - full.estimate) / 3.0;
  est.stderr_ = std::sqrt(16.0 * half.stderr_ * half.stderr_ +
                          full.stderr_ * full.stderr_) /
                3.0;
  est.n_accepted = half.n_accepted;
  est.acceptance_rate = full.acceptance_rate;
  return est;
}

double gaussian_average_sech(double x, const QuadratureSpec& spec) {
  spec.validate();
  const double ax = std::abs(x);
  const double phi0 = spherical_phi(SpectralPoint::Complementary(0.0), ax);
  // integrand phi_0(x) e^{s(1 - x coth x)} e^{-s}; decay rate x coth x >= 1
  const double S = spec.cutoff_decades;  // rate >= 1
  auto f = [ax, phi0](double s) {
    return phi0 * levy_exponent_psi(std::max(s, 1e-300), ax) * std::exp(-s);
  };
  double err = 0.0;
  const double v = integrate_gk(f, 0.0, S, spec.abs_tol, &err);
  if (err > std::max(1e-9, 100 * spec.abs_tol))
    throw ToleranceNotMet("gaussian_average_sech: quadrature error too large");
  return v;
}

}  // namespace sphsemi

#include "sphsemi/kernels.hpp"

#include <cmath>

#include "sphsemi/quadrature.hpp"

namespace sphsemi {

void DensityGrid::validate() const {
  if (points.size() != values.size())
    throw GridMismatch("DensityGrid: points/values length mismatch");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i] > points[i - 1]))
      throw GridMismatch("DensityGrid: points must be strictly increasing");
}

double DensityGrid::spacing() const {
  if (points.size() < 2) throw GridMismatch("DensityGrid: need >= 2 points");
  const double h = points[1] - points[0];
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double d = points[i] - points[i - 1];
    if (std::abs(d - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw GridMismatch("DensityGrid: spacing is not uniform");
  }
  return h;
}

double qt_density(double t, double xi, const TruncationPolicy& pol) {
  if (!(t > 0.0)) throw std::domain_error("qt_density requires t > 0");
  SeriesSpec spec;
  spec.part = SeriesSpec::Part::real_part;
  return std::exp(t) / pi * double_series(t, std::abs(xi), spec, pol);
}

double qt_density_derivative(double t, double xi, const TruncationPolicy& pol) {
  if (!(t > 0.0)) throw std::domain_error("qt_density_derivative requires t > 0");
  if (xi == 0.0) return 0.0;  // q_t even
  SeriesSpec spec;
  spec.derivative = true;
  spec.part = SeriesSpec::Part::imag_part;
  const double v = std::exp(t) / pi * double_series(t, std::abs(xi), spec, pol);
  return xi > 0.0 ? v : -v;
}

double levy_density_closed(double xi) {
  if (xi == 0.0) throw std::domain_error("levy_density_closed: xi must be nonzero");
  const double s = std::sinh(pi * xi / 2.0);
  return (pi / 4.0) / (s * s);
}

namespace {

// sum_{j=1}^{J} Re (j + i xi/2)^{-2} and its Euler-Maclaurin completion
double levy_partial(double xi, long J, bool complete) {
  const double y = xi / 2.0;
  KahanAccumulator acc;
  for (long j = 1; j <= J; ++j) {
    const double a = j * j - y * y;
    const double b = j * j + y * y;
    acc.add(a / (b * b));
  }
  double s = acc.value();
  if (complete) {
    const auto tail = power_sum_tail(2, complex{J + 1.0, y}, 1.0);
    s += tail.value.real();
  }
  return 1.0 / (pi * xi * xi) - s / (2.0 * pi);
}

}  // namespace

double levy_density_series(double xi, long J) {
  if (xi == 0.0) throw std::domain_error("levy_density_series: xi must be nonzero");
  if (J < 1) throw std::domain_error("levy_density_series: J >= 1");
  return levy_partial(xi, J, false);
}

double levy_density_series_accelerated(double xi, long J) {
  if (xi == 0.0) throw std::domain_error("levy_density_series: xi must be nonzero");
  if (J < 1) throw std::domain_error("levy_density_series: J >= 1");
  return levy_partial(xi, J, true);
}

double principal_density(double t, double omega, double xi,
                         const TruncationPolicy& pol) {
  if (!(t > 0.0)) throw std::domain_error("principal_density requires t > 0");
  if (omega == 0.0) return -xi * qt_density_derivative(t, xi, pol);
  return xi * (qt_density(t, xi - omega, pol) - qt_density(t, xi + omega, pol)) /
         (2.0 * omega);
}

double I_series(double t, double omega, double xi, ISign sign,
                const TruncationPolicy& pol) {
  if (!(t > 0.0)) throw std::domain_error("I_series requires t > 0");
  const double shift = (sign == ISign::minus) ? -omega : omega;
  const double rate00 = t + shift;
  if (rate00 < 0.0)
    throw std::domain_error("I_series: exponential rate t -+ omega is negative");
  if (xi == 0.0) {
    if (rate00 == 0.0)
      throw std::domain_error("I_series: undefined at rate 0 and xi = 0");
    return 0.0;  // every sine factor vanishes
  }
  SeriesSpec spec;
  spec.shift = shift;
  spec.part = SeriesSpec::Part::imag_part;
  // sin((m+1) arctan(xi/rho))/R^{m+1} = -Im (rho + i xi)^{-(m+1)}
  const double v = -double_series(t, std::abs(xi), spec, pol);
  return xi > 0.0 ? v : -v;
}

double J_series(double t, double omega, double xi, const TruncationPolicy& pol) {
  if (!(t > 0.0 && t < omega && omega < 1.0))
    throw std::domain_error("J_series requires 0 < t < omega < 1");
  if (xi == 0.0) return 0.0;
  SeriesSpec spec;
  spec.shift = -omega;
  spec.skip_00 = true;
  spec.part = SeriesSpec::Part::imag_part;
  const double v = -double_series(t, std::abs(xi), spec, pol);
  return xi > 0.0 ? v : -v;
}

double complementary_density(double t, double omega, double xi,
                             const TruncationPolicy& pol) {
  if (!(t > 0.0)) throw std::domain_error("complementary_density requires t > 0");
  if (!(omega > -1.0 && omega < 1.0))
    throw std::domain_error("complementary_density requires omega in (-1,1)");
  if (t < std::abs(omega))
    throw RegimeError("complementary_density: t < |omega| is the subcritical "
                      "regime; use subcritical_decomposition");
  if (omega == 0.0) return principal_density(t, 0.0, xi, pol);
  const double aw = std::abs(omega);
  if (xi == 0.0) {
    // xi I^- -> xi^2/((t-|w|)^2 + xi^2) from the (0,0) term: 1 on the regime
    // boundary t = |w|, 0 strictly inside
    return t == aw ? std::exp(t) / (2.0 * pi * aw) : 0.0;
  }
  return std::exp(t) * xi *
         (I_series(t, aw, xi, ISign::minus, pol) -
          I_series(t, aw, xi, ISign::plus, pol)) /
         (2.0 * pi * aw);
}

KernelDecomposition subcritical_decomposition(double t, double omega,
                                              const TruncationPolicy& pol) {
  const double aw = std::abs(omega);
  if (!(t > 0.0)) throw RegimeError("subcritical_decomposition requires t > 0");
  if (omega == 0.0 || aw >= 1.0)
    throw RegimeError("subcritical_decomposition requires omega in (-1,1)\\{0}");
  if (!(t < aw))
    throw RegimeError("subcritical_decomposition requires t < |omega|");

  KernelDecomposition dec;
  dec.atom = KernelDecomposition::Atom{aw - t, std::exp(t) * (aw - t) / aw};
  const double gap = aw - t;
  // P_t(omega,.) is symmetric in xi and even in omega, so |omega| serves both signs.
  dec.density = [t, aw, gap, pol](double xi) {
    const double elementary = xi / (gap * gap + xi * xi);
    return std::exp(t) * xi *
           (J_series(t, aw, xi, pol) - I_series(t, aw, xi, ISign::plus, pol) +
            elementary) /
           (2.0 * pi * aw);
  };
  dec.total_mass_check =
      dec.atom->mass + integrate_density_line(dec.density, 30.0, 1e-9);
  return dec;
}

double intertwining_kernel(double omega, double x) {
  const double po = pi * omega;
  double num;  // (pi/omega) sinh(pi omega)
  if (std::abs(omega) < 1e-6) {
    num = pi * pi * (1.0 + po * po / 6.0 * (1.0 + po * po / 20.0));
  } else {
    num = (pi / omega) * std::sinh(po);
  }
  return num / (std::cosh(po) + std::cosh(pi * x));
}

double chapman_kolmogorov_residual(double t, double s, double omega,
                                   double gamma, const GridSpec& grid,
                                   const TruncationPolicy& pol) {
  if (!(t > 0.0 && s > 0.0))
    throw std::domain_error("chapman_kolmogorov_residual requires t, s > 0");
  if (grid.n < 2) throw std::domain_error("chapman_kolmogorov_residual: n >= 2");
  const double h = (grid.max - grid.min) / (grid.n - 1);

  auto qt_diff = [&](double u) {  // (q_t(u-omega) - q_t(u+omega)) / (2 omega)
    if (omega == 0.0) return -qt_density_derivative(t, u, pol);
    return (qt_density(t, u - omega, pol) - qt_density(t, u + omega, pol)) /
           (2.0 * omega);
  };

  KahanAccumulator acc;
  for (long i = 0; i < grid.n; ++i) {
    const double xi = grid.min + i * h;
    // the xi/(2 xi) factors cancel: integrand is
    //   (q_t(xi-omega)-q_t(xi+omega))/(2 omega) * (q_s(gamma-xi)-q_s(gamma+xi))/2
    const double w = (i == 0 || i == grid.n - 1) ? 0.5 : 1.0;
    acc.add(w * qt_diff(xi) *
            (qt_density(s, gamma - xi, pol) - qt_density(s, gamma + xi, pol)) / 2.0);
  }
  const double lhs = gamma * h * acc.value();
  double rhs;
  if (omega == 0.0) {
    rhs = -gamma * qt_density_derivative(t + s, gamma, pol);
  } else {
    rhs = gamma *
          (qt_density(t + s, gamma - omega, pol) - qt_density(t + s, gamma + omega, pol)) /
          (2.0 * omega);
  }
  return std::abs(lhs - rhs);
}

double qt_total_mass(double t, double R, const TruncationPolicy& pol) {
  auto f = [t, &pol](double xi) { return qt_density(t, xi, pol); };
  return integrate_density_line(f, R, 1e-10);
}

}  // namespace sphsemi

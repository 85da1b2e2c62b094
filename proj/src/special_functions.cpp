#include "sphsemi/special_functions.hpp"

#include <cmath>

namespace sphsemi {

SpectralPoint SpectralPoint::Complementary(double omega) {
  if (!(omega >= -1.0 && omega <= 1.0))
    throw std::domain_error("complementary parameter requires -1 <= omega <= 1");
  return {Series::complementary, omega};
}

bool same_spherical(const SpectralPoint& a, const SpectralPoint& b) {
  return a.series == b.series && std::abs(a.value) == std::abs(b.value);
}

double pochhammer(double a, unsigned j) {
  double p = 1.0;
  for (unsigned k = 0; k < j; ++k) p *= a + k;
  return p;
}

double laguerre_neg1(unsigned j, double x) {
  if (j == 0) return 1.0;
  if (j == 1) return -x;
  double lm2 = 1.0, lm1 = -x, l = 0.0;
  for (unsigned n = 2; n <= j; ++n) {
    l = ((2.0 * n - 2.0 - x) * lm1 - (n - 2.0) * lm2) / n;
    lm2 = lm1;
    lm1 = l;
  }
  return l;
}

double laguerre_neg1_direct(unsigned j, double x) {
  double abs_sum = 0.0;
  return laguerre_neg1_direct(j, x, abs_sum);
}

double laguerre_neg1_direct(unsigned j, double x, double& abs_term_sum) {
  // term_m = (-1)^m C(j,m) (m)_{j-m} x^m / j!; the m = 0 term vanishes for
  // j >= 1, and consecutive terms obey the exact ratio
  //   T_{m+1}/T_m = -x (j - m) / (m (m + 1)).
  abs_term_sum = 0.0;
  if (j == 0) {
    abs_term_sum = 1.0;
    return 1.0;
  }
  KahanAccumulator acc;
  double term = -x;  // T_1
  acc.add(term);
  abs_term_sum += std::abs(term);
  for (unsigned m = 1; m < j; ++m) {
    term *= -x * static_cast<double>(j - m) /
            (static_cast<double>(m) * (m + 1.0));
    acc.add(term);
    abs_term_sum += std::abs(term);
  }
  return acc.value();
}

double chebyshev_T(unsigned n, double u) {
  if (n == 0) return 1.0;
  double tm1 = 1.0, t = u;
  for (unsigned k = 2; k <= n; ++k) {
    const double tn = 2.0 * u * t - tm1;
    tm1 = t;
    t = tn;
  }
  return t;
}

namespace {

// sinh(a)/a resp. sin(a)/a via series for small a; sign = +1 for sinh, -1 for sin
double sinhc(double a) {
  if (std::abs(a) < 1e-4) {
    const double a2 = a * a;
    return 1.0 + a2 / 6.0 * (1.0 + a2 / 20.0 * (1.0 + a2 / 42.0));
  }
  return std::sinh(a) / a;
}

double sinc(double a) {
  if (std::abs(a) < 1e-4) {
    const double a2 = a * a;
    return 1.0 - a2 / 6.0 * (1.0 - a2 / 20.0 * (1.0 - a2 / 42.0));
  }
  return std::sin(a) / a;
}

}  // namespace

double spherical_phi(const SpectralPoint& w, double x) {
  // phi(x) = numer(w x) / sinhc(x) with numer = sinhc (complementary), sinc (principal);
  // this form makes both removable singularities explicit.
  const double num = (w.series == SpectralPoint::Series::complementary)
                         ? sinhc(w.value * x)
                         : sinc(w.value * x);
  if (std::abs(x) > 30.0) {
    // avoid overflow of sinh at large |x|: sinhc(x) = e^{|x|}(1-e^{-2|x|})/(2|x|)
    const double ax = std::abs(x);
    const double denom_log = ax - std::log(2.0 * ax) + std::log1p(-std::exp(-2.0 * ax));
    if (w.series == SpectralPoint::Series::complementary && std::abs(w.value * x) > 30.0) {
      const double axw = std::abs(w.value * x);
      const double num_log = axw - std::log(2.0 * axw) + std::log1p(-std::exp(-2.0 * axw));
      return std::exp(num_log - denom_log);
    }
    return num * std::exp(-denom_log);
  }
  return num / sinhc(x);
}

double levy_exponent_psi(double t, double x) {
  if (t <= 0.0) throw std::domain_error("levy_exponent_psi requires t > 0");
  const double ax = std::abs(x);
  double xcoth;  // x coth x, even in x, -> 1 at x = 0
  if (ax < 1e-4) {
    const double x2 = ax * ax;
    xcoth = 1.0 + x2 / 3.0 - x2 * x2 / 45.0;
  } else if (ax > 19.0) {
    // coth x = 1 + 2 e^{-2x}/(1-e^{-2x})
    const double e = std::exp(-2.0 * ax);
    xcoth = ax * (1.0 + 2.0 * e / (1.0 - e));
  } else {
    xcoth = ax / std::tanh(ax);
  }
  return std::exp(t * (1.0 - xcoth));
}

double generating_partial_sum(double t, double x, unsigned J) {
  if (t <= 0.0) throw std::domain_error("generating_partial_sum requires t > 0");
  if (x == 0.0) return 1.0;
  KahanAccumulator acc;
  for (unsigned j = 0; j <= J; ++j)
    acc.add(laguerre_neg1(j, 2.0 * t * x) * std::exp(-2.0 * j * x));
  return std::exp(-t * x) * acc.value();
}

double cauchy_density(double s, unsigned d, double r) {
  if (s <= 0.0) throw std::domain_error("cauchy_density requires s > 0");
  if (d == 0) throw std::domain_error("cauchy_density requires d >= 1");
  const double e = (d + 1.0) / 2.0;
  return std::tgamma(e) * std::pow(pi, -e) * s * std::pow(s * s + r * r, -e);
}

}  // namespace sphsemi

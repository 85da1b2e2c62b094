#include <doctest.h>

#include <cmath>

#include "sphsemi/kernels.hpp"
#include "sphsemi/oracle.hpp"
#include "sphsemi/quadrature.hpp"
#include "sphsemi/special_functions.hpp"

using namespace sphsemi;

namespace {
const TruncationPolicy pol;  // defaults: rel_tol 1e-10, max_m 80, max_j 400
const TruncationPolicy tight{1e-13, 80, 400};  // for frozen-anchor checks

double phi_p(double xi, double x) {
  return spherical_phi(SpectralPoint::Principal(xi), x);
}
double phi_c(double om, double x) {
  return spherical_phi(SpectralPoint::Complementary(om), x);
}
}  // namespace

TEST_CASE("qt_density: anchors, parity, domain") {
  // reference values from 30-digit quadrature of the Fourier inversion
  CHECK(qt_density(1.0, 0.0, tight) == doctest::Approx(0.56805393303444568).epsilon(1e-12));
  CHECK(qt_density(1.0, 2.0, tight) == doctest::Approx(0.026391036926484531).epsilon(1e-12));
  CHECK(qt_density(0.5, 1.0, tight) == doctest::Approx(0.10850898506427837).epsilon(1e-12));
  CHECK(qt_density(2.0, 0.5, tight) == doctest::Approx(0.32847441504920482).epsilon(1e-12));
  CHECK(qt_density(0.25, 3.0, tight) ==
        doctest::Approx(0.00016177005206213327).epsilon(1e-10));
  for (double xi : {0.7, 4.2, 17.0})
    CHECK(qt_density(1.0, xi, pol) == qt_density(1.0, -xi, pol));
  CHECK_THROWS_AS(qt_density(0.0, 1.0, pol), std::domain_error);
  CHECK_THROWS_AS(qt_density(-1.0, 1.0, pol), std::domain_error);
}

TEST_CASE("qt_density agrees with the quadrature oracle") {
  CHECK(std::abs(qt_density(1.0, 0.0, pol) - fourier_invert_psi(1.0, 0.0)) <= 1e-9);
  for (double t : {0.5, 2.0})
    for (double xi : {0.3, 1.9, 6.0})
      CHECK(std::abs(qt_density(t, xi, pol) - fourier_invert_psi(t, xi)) <= 1e-8);
}

TEST_CASE("qt total mass is 1") {
  CHECK(qt_total_mass(1.0, 16.0, pol) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("qt_density_derivative") {
  CHECK(qt_density_derivative(0.7, 0.0, pol) == 0.0);
  SUBCASE("matches central finite differences") {
    const double h = 1e-5;
    for (double xi : {0.6, 2.0}) {
      const double fd =
          (qt_density(1.0, xi + h, pol) - qt_density(1.0, xi - h, pol)) / (2.0 * h);
      CHECK(qt_density_derivative(1.0, xi, pol) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
  SUBCASE("sine-transform identity: int sin(xi x) dq = -x psi_t(x)") {
    const double x = 1.0, t = 1.0;
    const double integral = integrate_density_line(
        [&](double xi) {
          return std::sin(xi * x) * qt_density_derivative(t, xi, pol);
        },
        24.0, 1e-10);
    CHECK(integral == doctest::Approx(-x * levy_exponent_psi(t, x)).epsilon(1e-8));
  }
  SUBCASE("odd in xi") {
    CHECK(qt_density_derivative(1.0, 1.3, pol) ==
          -qt_density_derivative(1.0, -1.3, pol));
  }
}

TEST_CASE("levy density: closed form, series, limits") {
  CHECK(levy_density_closed(2.0) == doctest::Approx(0.0058887175164096556).epsilon(1e-14));
  CHECK(levy_density_closed(-3.1) == levy_density_closed(3.1));
  CHECK_THROWS_AS(levy_density_closed(0.0), std::domain_error);

  // hand-evaluated j = 1 partial sum at xi = 1
  CHECK(levy_density_series(1.0, 1) ==
        doctest::Approx(0.24191551349968091).epsilon(1e-14));

  SUBCASE("series -> closed form with accelerated tail") {
    for (double xi : {0.5, 1.0, 3.0})
      CHECK(levy_density_series_accelerated(xi, 1000000) ==
            doctest::Approx(levy_density_closed(xi)).epsilon(1e-8));
  }
  SUBCASE("xi -> 0 behaviour ~ 1/(pi xi^2)") {
    for (double xi : {1e-3, 1e-4})
      CHECK(levy_density_closed(xi) * pi * xi * xi == doctest::Approx(1.0).epsilon(1e-5));
  }
  SUBCASE("vague limit of q_t / t") {
    for (double xi : {0.5, 1.0, 3.0}) {
      const double v = qt_density(1e-3, xi, pol) / 1e-3;
      CHECK(std::abs(v - levy_density_closed(xi)) / levy_density_closed(xi) <= 0.02);
    }
  }
}

TEST_CASE("principal density") {
  SUBCASE("even in xi and omega") {
    for (double xi : {0.8, 2.5}) {
      CHECK(principal_density(1.0, 0.5, xi, pol) ==
            principal_density(1.0, 0.5, -xi, pol));
      CHECK(principal_density(1.0, 0.5, xi, pol) ==
            principal_density(1.0, -0.5, xi, pol));
    }
  }
  SUBCASE("mass 1 at (1, 0.7)") {
    const double mass = integrate_density_line(
        [&](double xi) { return principal_density(1.0, 0.7, xi, pol); }, 24.0, 1e-10);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("reconstruction at (1, 0.5, 1.3)") {
    const double t = 1.0, om = 0.5, x = 1.3;
    const double recon = integrate_density_line(
        [&](double xi) { return phi_p(xi, x) * principal_density(t, om, xi, pol); },
        24.0, 1e-10);
    CHECK(recon == doctest::Approx(phi_p(om, x) * levy_exponent_psi(t, x)).epsilon(1e-8));
  }
  SUBCASE("omega = 0 branch equals the derivative limit") {
    const double t = 1.0, xi = 1.5, om = 1e-5;
    const double lim = principal_density(t, 0.0, xi, pol);
    const double fd =
        xi * (qt_density(t, xi - om, pol) - qt_density(t, xi + om, pol)) / (2.0 * om);
    CHECK(lim == doctest::Approx(fd).epsilon(1e-7));
  }
  SUBCASE("harmonicity") {
    for (double om : {0.0, 0.5, 1.0, 2.0}) {
      const double v = integrate_density_line(
          [&](double u) { return qt_density(0.5, u, pol) * (om - u); }, 24.0, 1e-10);
      CHECK(v == doctest::Approx(om).epsilon(1e-8));
    }
  }
}

TEST_CASE("I series") {
  CHECK(I_series(1.0, 0.5, 0.0, ISign::minus, pol) == 0.0);
  CHECK(I_series(1.0, 0.5, 2.0, ISign::minus, tight) ==
        doctest::Approx(0.23499694585600815).epsilon(1e-12));
  SUBCASE("I^-(om, xi) = I^+(-om, xi) exactly") {
    for (double om : {0.3, 0.8})
      for (double xi : {0.5, 2.0})
        CHECK(I_series(1.0, om, xi, ISign::minus, pol) ==
              I_series(1.0, -om, xi, ISign::plus, pol));
  }
  SUBCASE("oracle agreement") {
    CHECK(std::abs(I_series(1.0, 0.5, 2.0, ISign::minus, pol) -
                   fourier_invert_weighted(1.0, 0.5, 2.0, OracleWeight::sinh_shift)) <=
          1e-9);
    CHECK(std::abs(I_series(1.0, 0.5, 2.0, ISign::plus, pol) -
                   fourier_invert_weighted(1.0, -0.5, 2.0, OracleWeight::sinh_shift)) <=
          1e-9);
  }
  SUBCASE("negative (0,0) rate is a domain error") {
    CHECK_THROWS_AS(I_series(0.3, 0.8, 1.0, ISign::minus, pol), std::domain_error);
  }
  SUBCASE("rate zero allowed off xi = 0 (Abel limit), rejected at xi = 0") {
    CHECK(std::isfinite(I_series(0.8, 0.8, 1.0, ISign::minus, pol)));
    CHECK_THROWS_AS(I_series(0.8, 0.8, 0.0, ISign::minus, pol), std::domain_error);
  }
}

TEST_CASE("J series") {
  CHECK(J_series(0.3, 0.7, 0.0, pol) == 0.0);
  CHECK(J_series(0.3, 0.7, 1.5, tight) ==
        doctest::Approx(-0.15985685303187073).epsilon(1e-12));
  SUBCASE("oracle agreement") {
    CHECK(std::abs(J_series(0.3, 0.7, 1.5, pol) -
                   fourier_invert_weighted(0.3, 0.7, 1.5, OracleWeight::diff_shift)) <=
          1e-9);
  }
  SUBCASE("matches the j-outer direct partial sums") {
    // J_t = sum_{j>=1} sum_{m<=j} (m)_{j-m} (-2t)^m / ((j-m)! R^{m+1}) sin((m+1) atan);
    // (0)_j = 0 kills m = 0, and (m)_{j-m} = Gamma(j)/Gamma(m) runs in logs
    const double t = 0.3, om = 0.7, xi = 1.5;
    KahanAccumulator direct;
    for (int j = 1; j <= 2000; ++j) {
      const double rho = 2.0 * j + t - om;
      const double R = std::hypot(rho, xi);
      const double th = std::atan(xi / rho);
      for (int m = 1; m <= j; ++m) {
        const double lt = std::lgamma(static_cast<double>(j)) - std::lgamma(static_cast<double>(m)) -
                          std::lgamma(j - m + 1.0) + m * std::log(2.0 * t) -
                          (m + 1.0) * std::log(R);
        double term = std::exp(lt) * std::sin((m + 1.0) * th);
        if (m % 2 == 1) term = -term;
        direct.add(term);
      }
    }
    CHECK(J_series(t, om, xi, pol) == doctest::Approx(direct.value()).epsilon(1e-5));
  }
  SUBCASE("regime preconditions") {
    CHECK_THROWS_AS(J_series(0.8, 0.7, 1.0, pol), std::domain_error);
    CHECK_THROWS_AS(J_series(0.3, 1.2, 1.0, pol), std::domain_error);
  }
}

TEST_CASE("complementary density") {
  SUBCASE("regime error below t = |omega|") {
    CHECK_THROWS_AS(complementary_density(0.3, 0.8, 1.0, pol), RegimeError);
  }
  SUBCASE("even in xi") {
    CHECK(complementary_density(1.0, 0.8, 1.3, pol) ==
          complementary_density(1.0, 0.8, -1.3, pol));
  }
  SUBCASE("mass 1 at (1, 0.8)") {
    const double mass = integrate_density_line(
        [&](double xi) { return complementary_density(1.0, 0.8, xi, pol); }, 24.0,
        1e-10);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("reconstruction at (1, 0.8, 0.9)") {
    const double t = 1.0, om = 0.8, x = 0.9;
    const double recon = integrate_density_line(
        [&](double xi) {
          return phi_p(xi, x) * complementary_density(t, om, xi, pol);
        },
        24.0, 1e-10);
    CHECK(recon == doctest::Approx(phi_c(om, x) * levy_exponent_psi(t, x)).epsilon(1e-8));
  }
  SUBCASE("omega = 0 falls back to the principal branch") {
    CHECK(complementary_density(1.0, 0.0, 1.1, pol) ==
          principal_density(1.0, 0.0, 1.1, pol));
  }
}

TEST_CASE("subcritical decomposition") {
  SUBCASE("regime errors") {
    CHECK_THROWS_AS(subcritical_decomposition(1.0, 0.8, pol), RegimeError);
    CHECK_THROWS_AS(subcritical_decomposition(0.3, 0.0, pol), RegimeError);
    CHECK_THROWS_AS(subcritical_decomposition(0.3, 1.2, pol), RegimeError);
  }
  SUBCASE("atom formula at (0.5, 0.9)") {
    const auto dec = subcritical_decomposition(0.5, 0.9, pol);
    REQUIRE(dec.atom.has_value());
    CHECK(dec.atom->location == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(dec.atom->mass == doctest::Approx(std::exp(0.5) * 0.4 / 0.9).epsilon(1e-15));
    CHECK(dec.atom->mass == doctest::Approx(0.73278).epsilon(1e-4));
  }
  SUBCASE("atom + density mass = 1") {
    const auto dec = subcritical_decomposition(0.3, 0.8, pol);
    CHECK(dec.total_mass_check == doctest::Approx(1.0).epsilon(1e-7));
  }
  SUBCASE("reconstruction at (0.3, 0.8, 1.1)") {
    const auto dec = subcritical_decomposition(0.3, 0.8, pol);
    const double x = 1.1;
    const double recon =
        dec.atom->mass * phi_c(dec.atom->location, x) +
        integrate_density_line(
            [&](double xi) { return phi_p(xi, x) * dec.density(xi); }, 24.0, 1e-10);
    CHECK(recon ==
          doctest::Approx(phi_c(0.8, x) * levy_exponent_psi(0.3, x)).epsilon(1e-7));
  }
  SUBCASE("negative omega mirrors |omega|") {
    const auto a = subcritical_decomposition(0.3, -0.8, pol);
    const auto b = subcritical_decomposition(0.3, 0.8, pol);
    CHECK(a.atom->mass == b.atom->mass);
    CHECK(a.density(1.0) == b.density(1.0));
  }
  SUBCASE("continuity at t = |omega|") {
    const double om = 0.8, delta = 1e-8;
    const auto dec = subcritical_decomposition(om - delta, om, pol);
    CHECK(dec.atom->mass <= std::exp(om) * delta / om * 1.0001);
    for (double xi : {0.5, 1.0, 2.0})
      CHECK(std::abs(complementary_density(om, om, xi, pol) - dec.density(xi)) <= 1e-6);
  }
  SUBCASE("empirical tail decay rate of the G_t density") {
    const auto dec = subcritical_decomposition(0.3, 0.8, pol);
    // log-ratio slope between xi = 8 and 12; integrability needs > 1
    const double r = std::log(std::abs(dec.density(8.0) / dec.density(12.0))) /
                     std::log(12.0 / 8.0);
    INFO("measured tail exponent ~ " << r);
    CHECK(r > 1.0);
  }
}

TEST_CASE("intertwining kernel") {
  CHECK(intertwining_kernel(0.0, 0.0) == doctest::Approx(pi * pi / 2.0).epsilon(1e-15));
  SUBCASE("symmetric in both arguments") {
    CHECK(intertwining_kernel(0.5, 1.0) == intertwining_kernel(-0.5, 1.0));
    CHECK(intertwining_kernel(0.5, 1.0) == intertwining_kernel(0.5, -1.0));
  }
  SUBCASE("quadrature oracle at (0.5, 1)") {
    const double om = 0.5, x = 1.0;
    auto integrand = [om, x](double u) {
      return 2.0 * spherical_phi(SpectralPoint::Principal(om), u) * std::cos(u * x);
    };
    double quad = 0.0;
    for (int k = 0; k < 64; ++k)
      quad += integrate_gk(integrand, 45.0 * k / 64, 45.0 * (k + 1) / 64, 1e-13);
    CHECK(intertwining_kernel(om, x) == doctest::Approx(quad).epsilon(1e-10));
  }
  SUBCASE("omega -> 0 limit branch is continuous") {
    CHECK(intertwining_kernel(1e-7, 0.7) ==
          doctest::Approx(intertwining_kernel(0.0, 0.7)).epsilon(1e-10));
  }
}

TEST_CASE("semigroup law under convolution") {
  const double h = 1.0 / 64;
  auto make = [&](double t) {
    DensityGrid g;
    for (long i = 0; i <= std::lround(48.0 / h); ++i) {
      const double xi = -24.0 + i * h;
      g.points.push_back(xi);
      g.values.push_back(qt_density(t, xi, pol));
    }
    return g;
  };
  const auto q05 = make(0.5);
  const auto q1 = make(1.0);
  for (auto [f, g, sum_t] : {std::tuple{&q05, &q05, 1.0}, std::tuple{&q1, &q05, 1.5}}) {
    const auto conv = convolve(*f, *g);
    double sup = 0.0;
    for (std::size_t i = 0; i < conv.points.size(); ++i) {
      const double xi = conv.points[i];
      if (std::abs(xi) > 8.0 + 1e-9) continue;
      sup = std::max(sup, std::abs(conv.values[i] - qt_density(sum_t, xi, pol)));
    }
    CHECK(sup <= 1e-6);
  }
}

TEST_CASE("chapman-kolmogorov residual") {
  const double r = chapman_kolmogorov_residual(1.0, 1.0, 0.5, 0.7, {}, pol);
  CHECK(r <= 1e-6);
  SUBCASE("gamma = 0 vanishes") {
    CHECK(chapman_kolmogorov_residual(1.0, 1.0, 0.5, 0.0, {}, pol) == 0.0);
  }
  SUBCASE("symmetric under t <-> s") {
    const double a = chapman_kolmogorov_residual(1.0, 0.5, 0.5, 0.7, {}, pol);
    const double b = chapman_kolmogorov_residual(0.5, 1.0, 0.5, 0.7, {}, pol);
    CHECK(a <= 1e-6);
    CHECK(b <= 1e-6);
    CHECK(std::abs(a - b) <= 1e-6);
  }
}

TEST_CASE("density grid invariants") {
  DensityGrid g;
  g.points = {0.0, 1.0, 2.0};
  g.values = {1.0, 2.0};
  CHECK_THROWS_AS(g.validate(), GridMismatch);
  g.values = {1.0, 2.0, 3.0};
  CHECK_NOTHROW(g.validate());
  g.points = {0.0, 2.0, 1.0};
  CHECK_THROWS_AS(g.validate(), GridMismatch);
  g.points = {0.0, 1.0, 2.5};
  CHECK_THROWS_AS(g.spacing(), GridMismatch);
}

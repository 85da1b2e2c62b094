// Acceptance suite: every release criterion evaluated at its pinned
// tolerance, one pass/fail line per criterion. Exit code = number of
// failures. The Monte Carlo criterion runs in its own binary
// (acceptance_montecarlo) because of its runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sphsemi/kernels.hpp"
#include "sphsemi/metaplectic.hpp"
#include "sphsemi/oracle.hpp"
#include "sphsemi/quadrature.hpp"
#include "sphsemi/special_functions.hpp"

using namespace sphsemi;

namespace {

int failures = 0;

void report(int idx, const std::string& name, double measured, double tol,
            bool pass, double runtime_s = -1.0) {
  if (!pass) ++failures;
  std::printf("[%s] criterion %2d: %-38s measured=%.3e tol=%.1e%s\n",
              pass ? "PASS" : "FAIL", idx, name.c_str(), measured, tol,
              runtime_s >= 0.0
                  ? ("  (" + std::to_string(runtime_s) + " s)").c_str()
                  : "");
  std::fflush(stdout);
}

double phi_p(double xi, double x) {
  return spherical_phi(SpectralPoint::Principal(xi), x);
}
double phi_c(double om, double x) {
  return spherical_phi(SpectralPoint::Complementary(om), x);
}

using clock_t_ = std::chrono::steady_clock;
double seconds_since(clock_t_::time_point t0) {
  return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

const TruncationPolicy pol;  // rel_tol 1e-10, max_m 80, max_j 400

// 1. series vs quadrature inversion, xi in {-10..10 step 0.2}, t in the set
void criterion_1() {
  const auto t0 = clock_t_::now();
  double worst = 0.0;
  for (double t : {0.25, 0.5, 1.0, 2.0})
    for (int k = -50; k <= 50; ++k) {
      const double xi = 0.2 * k;
      worst = std::max(worst,
                       std::abs(qt_density(t, xi, pol) - fourier_invert_psi(t, xi)));
    }
  const double dt = seconds_since(t0);
  report(1, "q_t series vs quadrature", worst, 1e-8, worst <= 1e-8 && dt <= 60.0, dt);
}

// 2. normalization and positivity
void criterion_2() {
  double worst_mass = 0.0, min_val = 0.0;
  for (double t : {0.25, 0.5, 1.0, 2.0}) {
    worst_mass = std::max(worst_mass, std::abs(qt_total_mass(t, 16.0, pol) - 1.0));
    for (int k = -50; k <= 50; ++k)
      min_val = std::min(min_val, qt_density(t, 0.2 * k, pol));
  }
  report(2, "normalization |mass-1|", worst_mass, 1e-8, worst_mass <= 1e-8);
  report(2, "positivity min value", min_val, 1e-10, min_val >= -1e-10);
}

// 3. semigroup law by numeric convolution
void criterion_3() {
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
  const auto conv = convolve(q05, q05);
  // analytic tail correction for the clipped |u| > 24 contribution: the
  // integrand decays faster than e^{-|u|}, so it is bounded by the boundary
  // values; include it to keep the comparison honest
  const double tail_bound = 2.0 * q05.values.front() * 1.0;
  double sup = 0.0;
  for (std::size_t i = 0; i < conv.points.size(); ++i) {
    const double xi = conv.points[i];
    if (xi < -8.0 - 1e-9 || xi > 8.0 + 1e-9) continue;
    sup = std::max(sup, std::abs(conv.values[i] - qt_density(1.0, xi, pol)));
  }
  sup += tail_bound;
  report(3, "semigroup sup|q.5*q.5 - q1|", sup, 1e-6, sup <= 1e-6);
}

// 4. vague limit and the Levy-measure series identity
void criterion_4() {
  double worst_rel = 0.0;
  for (double xi : {0.5, 1.0, 3.0}) {
    const double v = qt_density(1e-3, xi, pol) / 1e-3;
    const double target = levy_density_closed(xi);
    worst_rel = std::max(worst_rel, std::abs(v - target) / target);
  }
  report(4, "vague limit rel error", worst_rel, 0.02, worst_rel <= 0.02);

  double worst = 0.0;
  for (double xi : {0.5, 1.0, 3.0})
    worst = std::max(worst, std::abs(levy_density_series_accelerated(xi, 1000000) -
                                     levy_density_closed(xi)));
  report(4, "levy series identity", worst, 1e-8, worst <= 1e-8);
}

// 5. principal reconstruction and harmonicity
void criterion_5() {
  double worst = 0.0;
  for (double t : {0.5, 1.0})
    for (double om : {0.0, 0.5, 2.0})
      for (double x : {0.3, 1.3}) {
        const double recon = integrate_density_line(
            [&](double xi) {
              return phi_p(xi, x) * principal_density(t, om, xi, pol);
            },
            24.0, 1e-10);
        worst = std::max(worst,
                         std::abs(recon - phi_p(om, x) * levy_exponent_psi(t, x)));
      }
  report(5, "principal reconstruction", worst, 1e-8, worst <= 1e-8);

  double worst_h = 0.0;
  for (double t : {0.5, 1.0})
    for (double om : {0.0, 0.5, 1.0, 2.0}) {
      const double v = integrate_density_line(
          [&](double u) { return qt_density(t, u, pol) * (om - u); }, 24.0, 1e-10);
      worst_h = std::max(worst_h, std::abs(v - om));
    }
  report(5, "harmonicity", worst_h, 1e-8, worst_h <= 1e-8);
}

// 6. complementary reconstruction and the I-series symmetry
void criterion_6() {
  double worst = 0.0;
  // t strictly above |omega|: the regime boundary itself is covered by the
  // pointwise continuity check of criterion 7
  for (auto [t, om] : {std::pair{0.5, 0.3}, std::pair{1.0, 0.3},
                       std::pair{1.0, 0.8}, std::pair{1.5, 0.8}})
    for (double x : {0.3, 1.3}) {
      const double recon = integrate_density_line(
          [&](double xi) {
            return phi_p(xi, x) * complementary_density(t, om, xi, pol);
          },
          24.0, 1e-10);
      worst = std::max(worst,
                       std::abs(recon - phi_c(om, x) * levy_exponent_psi(t, x)));
    }
  report(6, "complementary reconstruction", worst, 1e-8, worst <= 1e-8);

  double worst_sym = 0.0;
  for (double om : {0.3, 0.8})
    for (double xi : {0.5, 2.0, 7.0})
      worst_sym = std::max(worst_sym,
                           std::abs(I_series(1.0, om, xi, ISign::minus, pol) -
                                    I_series(1.0, -om, xi, ISign::plus, pol)));
  report(6, "I^-(w,xi) = I^+(-w,xi)", worst_sym, 1e-12, worst_sym <= 1e-12);
}

// 7. subcritical: atom formula, mass, reconstruction, regime continuity
void criterion_7() {
  double worst_atom = 0.0, worst_mass = 0.0, worst_recon = 0.0;
  for (auto [t, om] : {std::pair{0.3, 0.8}, std::pair{0.5, 0.9}}) {
    const auto dec = subcritical_decomposition(t, om, pol);
    worst_atom = std::max(worst_atom, std::abs(dec.atom->mass -
                                               std::exp(t) * (om - t) / om));
    worst_atom = std::max(worst_atom, std::abs(dec.atom->location - (om - t)));
    worst_mass = std::max(worst_mass, std::abs(dec.total_mass_check - 1.0));
    for (double x : {0.5, 1.1}) {
      const double recon =
          dec.atom->mass * phi_c(dec.atom->location, x) +
          integrate_density_line(
              [&](double xi) { return phi_p(xi, x) * dec.density(xi); }, 24.0, 1e-10);
      worst_recon = std::max(worst_recon,
                             std::abs(recon - phi_c(om, x) * levy_exponent_psi(t, x)));
    }
  }
  report(7, "atom mass formula", worst_atom, 1e-14, worst_atom <= 1e-14);
  report(7, "atom + density mass", worst_mass, 1e-7, worst_mass <= 1e-7);
  report(7, "subcritical reconstruction", worst_recon, 1e-7, worst_recon <= 1e-7);

  const double om = 0.8, delta = 1e-8;
  const auto dec = subcritical_decomposition(om - delta, om, pol);
  double worst_cont = dec.atom->mass;  // mass -> 0 at the boundary
  for (double xi : {0.5, 1.0, 2.0})
    worst_cont = std::max(worst_cont, std::abs(complementary_density(om, om, xi, pol) -
                                               dec.density(xi)));
  report(7, "regime continuity at t=|w|", worst_cont, 1e-6, worst_cont <= 1e-6);
}

// 8. intertwining kernel vs oscillatory quadrature
void criterion_8() {
  double worst = 0.0;
  for (double om : {0.0, 0.5, 1.0})
    for (double x : {0.0, 1.0, 2.0}) {
      auto integrand = [om, x](double u) {
        return 2.0 *
               spherical_phi(om == 0.0 ? SpectralPoint::Complementary(0.0)
                                       : SpectralPoint::Principal(om),
                             u) *
               std::cos(u * x);
      };
      double quad = 0.0;
      for (int k = 0; k < 90; ++k)
        quad += integrate_gk(integrand, 45.0 * k / 90, 45.0 * (k + 1) / 90, 1e-14);
      worst = std::max(worst, std::abs(intertwining_kernel(om, x) - quad));
    }
  report(8, "intertwining closed vs quad", worst, 1e-10, worst <= 1e-10);
}

// 9. the symplectic matrix suite
void criterion_9() {
  const auto t0 = clock_t_::now();
  double closed_vs_series = 0.0;
  for (int i = 0; i <= 9; ++i)
    for (int k = 0; k <= 9; ++k) {
      const double alpha = 0.2 + (3.0 - 0.2) * i / 9.0;
      const double t = 5.0 * k / 9.0;
      closed_vs_series =
          std::max(closed_vs_series, (exp_neg_tA_closed(alpha, t) -
                                      exp_neg_tA_series(alpha, t))
                                         .cwiseAbs()
                                         .maxCoeff());
    }

  double power_rel = 0.0;
  for (double alpha : {0.2, 0.7, 1.0, 2.4}) {
    const auto g = build_generators(alpha);
    const Mat4 AJ = g.A_alpha * g.J_alpha;
    Mat4 p = g.A_alpha;
    for (int j = 1; j <= 6; ++j) {
      const double sgn = (j % 2 == 1) ? 1.0 : -1.0;
      Mat4 ref = sgn * std::pow(2 * alpha, 2 * j - 2) * g.A_alpha;
      power_rel = std::max(power_rel, (p - ref).cwiseAbs().maxCoeff() /
                                          ref.cwiseAbs().maxCoeff());
      p = p * g.A_alpha;
      ref = sgn * std::pow(2 * alpha, 2 * j - 1) * AJ;
      power_rel = std::max(power_rel, (p - ref).cwiseAbs().maxCoeff() /
                                          ref.cwiseAbs().maxCoeff());
      p = p * g.A_alpha;
    }
  }

  double gram_dev = 0.0, cartan_dev = 0.0, u2_dev = 0.0, sl2c_dev = 0.0;
  for (double alpha : {0.2, 0.51, 1.0, 1.9, 3.0})
    for (double t : {0.0, 0.55, 1.3, 2.8, 5.0}) {
      const auto g = gram_products(alpha, t);  // throws if (x) I2 fails
      gram_dev = std::max(gram_dev, std::abs(g.left2.determinant() - 1.0));
      const Mat4 S = exp_neg_tA_closed(alpha, t);
      const auto f = cartan_decompose(S);
      Mat4 lam = Mat4::Zero();
      lam.block<2, 2>(0, 0) = f.lambda1 * Mat2::Identity();
      lam.block<2, 2>(2, 2) = f.lambda2 * Mat2::Identity();
      cartan_dev = std::max(cartan_dev, (f.M * lam * f.R - S).cwiseAbs().maxCoeff());
      cartan_dev = std::max(cartan_dev, std::abs(f.lambda1 * f.lambda2 - 1.0));
      const Mat2c U = identify_u2(f.M);
      u2_dev = std::max(
          u2_dev, (U * U.adjoint() - Mat2c::Identity()).cwiseAbs().maxCoeff());
      sl2c_dev = std::max(sl2c_dev,
                          std::abs(assign_sl2c(f).determinant() - complex{1.0, 0.0}));
    }
  const double dt = seconds_since(t0);
  report(9, "closed vs series exp", closed_vs_series, 1e-12,
         closed_vs_series <= 1e-12 && dt <= 5.0, dt);
  report(9, "power identities (rel)", power_rel, 1e-10, power_rel <= 1e-10);
  report(9, "gram det(core)-1", gram_dev, 1e-12, gram_dev <= 1e-12);
  report(9, "cartan reassembly + l1l2", cartan_dev, 1e-12, cartan_dev <= 1e-12);
  report(9, "u2 unitarity", u2_dev, 1e-12, u2_dev <= 1e-12);
  report(9, "sl2c determinant", sl2c_dev, 1e-12, sl2c_dev <= 1e-12);
}

// 10. Gaussian-average consequence
void criterion_10() {
  double worst = 0.0;
  for (double x : {0.0, 0.5, 1.0, 2.0})
    worst = std::max(worst,
                     std::abs(gaussian_average_sech(x) - 1.0 / std::cosh(x)));
  report(10, "gaussian average vs sech", worst, 1e-8, worst <= 1e-8);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("criterion 11 (Gaveau Monte Carlo) runs in acceptance_montecarlo\n");
  if (failures) std::printf("%d criterion check(s) FAILED\n", failures);
  else std::printf("all acceptance criteria passed\n");
  return failures;
}

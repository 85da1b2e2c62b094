#include "sphsemi/verify.hpp"

#include <cmath>
#include <utility>

#include "sphsemi/emit.hpp"
#include "sphsemi/metaplectic.hpp"
#include "sphsemi/quadrature.hpp"
#include "sphsemi/special_functions.hpp"

namespace sphsemi {

namespace {

CheckResult residual_check(const std::string& name, double measured, double tol) {
  return {name, measured, 0.0, tol, std::abs(measured) <= tol};
}

CheckResult value_check(const std::string& name, double measured, double target,
                        double tol) {
  return {name, measured, target, tol, std::abs(measured - target) <= tol};
}

double phi_principal(double xi, double x) {
  return spherical_phi(SpectralPoint::Principal(xi), x);
}

double phi_comp(double om, double x) {
  return spherical_phi(SpectralPoint::Complementary(om), x);
}

DensityGrid qt_grid(double t, double lo, double hi, double h,
                    const TruncationPolicy& pol) {
  DensityGrid g;
  const long n = std::lround((hi - lo) / h) + 1;
  g.points.reserve(n);
  g.values.reserve(n);
  for (long i = 0; i < n; ++i) {
    const double xi = lo + i * h;
    g.points.push_back(xi);
    g.values.push_back(qt_density(t, xi, pol));
  }
  return g;
}

std::vector<CheckResult> suite_qt(const VerifyOptions& opt) {
  const auto& pol = opt.policy;
  std::vector<CheckResult> out;

  double worst = 0.0;
  for (double t : {0.5, 1.0})
    for (double xi : {0.0, 1.0, 2.5, 5.0, 8.0})
      worst = std::max(worst,
                       std::abs(qt_density(t, xi, pol) - fourier_invert_psi(t, xi)));
  out.push_back(residual_check("qt.oracle_agreement", worst, 1e-8));

  for (double t : {0.5, 1.0})
    out.push_back(value_check("qt.normalization_t" + format_double(t),
                              qt_total_mass(t, 16.0, pol), 1.0, 1e-8));

  double min_val = 0.0;
  for (double t : {0.5, 1.0})
    for (double xi = -10.0; xi <= 10.0; xi += 0.25)
      min_val = std::min(min_val, qt_density(t, xi, pol));
  out.push_back({"qt.positivity_min", min_val, 0.0, 1e-10, min_val >= -1e-10});

  double even = 0.0;
  for (double xi : {0.3, 1.7, 6.4})
    even = std::max(even, std::abs(qt_density(1.0, xi, pol) - qt_density(1.0, -xi, pol)));
  out.push_back(residual_check("qt.evenness", even, 0.0));

  {  // semigroup law; opt.fault shifts the t of the first factor
    const double h = 1.0 / 64;
    const auto f = qt_grid(0.5 + opt.fault, -24.0, 24.0, h, pol);
    const auto g = qt_grid(0.5, -24.0, 24.0, h, pol);
    const auto conv = convolve(f, g);
    double sup = 0.0;
    for (std::size_t i = 0; i < conv.points.size(); ++i) {
      const double xi = conv.points[i];
      if (xi < -8.0 - 1e-12 || xi > 8.0 + 1e-12) continue;
      sup = std::max(sup, std::abs(conv.values[i] - qt_density(1.0, xi, pol)));
    }
    out.push_back(residual_check("qt.semigroup_law", sup, 1e-6));
  }

  {
    const double v = qt_density(1e-3, 1.0, pol) / 1e-3;
    const double lev = levy_density_closed(1.0);
    out.push_back(residual_check("qt.vague_limit_rel", (v - lev) / lev, 0.02));
  }
  out.push_back(value_check("qt.levy_series_identity",
                            levy_density_series_accelerated(1.0, 100000),
                            levy_density_closed(1.0), 1e-8));
  return out;
}

std::vector<CheckResult> suite_principal(const VerifyOptions& opt) {
  const auto& pol = opt.policy;
  std::vector<CheckResult> out;

  auto dens = [&](double t, double om, double xi) {
    return principal_density(t, om, xi, pol);
  };
  out.push_back(value_check(
      "principal.mass",
      integrate_density_line([&](double xi) { return dens(1.0, 0.7, xi); }, 24.0, 1e-10),
      1.0, 1e-8));

  {
    const double t = 1.0, om = 0.5, x = 1.3;
    const double recon = integrate_density_line(
        [&](double xi) { return phi_principal(xi, x) * dens(t, om, xi); }, 24.0, 1e-10);
    out.push_back(value_check("principal.reconstruction", recon,
                              phi_principal(om, x) * levy_exponent_psi(t, x), 1e-8));
  }

  double worst = 0.0;
  for (double t : {0.5, 1.0})
    for (double om : {0.0, 0.5, 1.0, 2.0}) {
      const double v = integrate_density_line(
          [&](double u) { return qt_density(t, u, pol) * (om - u); }, 24.0, 1e-10);
      worst = std::max(worst, std::abs(v - om));
    }
  out.push_back(residual_check("principal.harmonicity", worst, 1e-8));

  out.push_back(residual_check("principal.chapman_kolmogorov",
                               chapman_kolmogorov_residual(1.0, 1.0, 0.5, 0.7, {}, pol),
                               1e-6));

  {
    const double om = 0.5, x = 1.0;
    // oscillatory quadrature of the intertwining integral
    const double quad = [&] {
      auto integrand = [om, x](double u) {
        return 2.0 * spherical_phi(SpectralPoint::Principal(om), u) * std::cos(u * x);
      };
      double total = 0.0;
      const double X = 45.0;
      const int panels = 64;
      for (int k = 0; k < panels; ++k)
        total += integrate_gk(integrand, X * k / panels, X * (k + 1) / panels, 1e-13);
      return total;
    }();
    out.push_back(value_check("principal.intertwining", intertwining_kernel(om, x),
                              quad, 1e-10));
  }

  {  // omega -> 0 limit branch agrees with the difference quotient
    const double t = 1.0, xi = 1.5, om = 1e-4;
    const double lim = principal_density(t, 0.0, xi, pol);
    const double fd = xi * (qt_density(t, xi - om, pol) - qt_density(t, xi + om, pol)) /
                      (2.0 * om);
    out.push_back(residual_check("principal.omega0_branch", lim - fd, 1e-6));
  }
  return out;
}

std::vector<CheckResult> suite_complementary(const VerifyOptions& opt) {
  const auto& pol = opt.policy;
  std::vector<CheckResult> out;

  {
    const double t = 1.0, om = 0.8, x = 0.9;
    const double recon = integrate_density_line(
        [&](double xi) {
          return phi_principal(xi, x) * complementary_density(t, om, xi, pol);
        },
        24.0, 1e-10);
    out.push_back(value_check("complementary.reconstruction", recon,
                              phi_comp(om, x) * levy_exponent_psi(t, x), 1e-8));
    const double mass = integrate_density_line(
        [&](double xi) { return complementary_density(t, om, xi, pol); }, 24.0, 1e-10);
    out.push_back(value_check("complementary.mass", mass, 1.0, 1e-8));
  }

  out.push_back(residual_check(
      "complementary.I_symmetry",
      I_series(1.0, 0.5, 2.0, ISign::minus, pol) -
          I_series(1.0, -0.5, 2.0, ISign::plus, pol),
      1e-12));

  out.push_back(value_check(
      "complementary.I_oracle",
      I_series(1.0, 0.5, 2.0, ISign::minus, pol),
      fourier_invert_weighted(1.0, 0.5, 2.0, OracleWeight::sinh_shift), 1e-9));

  {
    double even = 0.0;
    for (double xi : {0.4, 1.9})
      even = std::max(even, std::abs(complementary_density(1.0, 0.8, xi, pol) -
                                     complementary_density(1.0, 0.8, -xi, pol)));
    out.push_back(residual_check("complementary.evenness", even, 0.0));
  }
  return out;
}

std::vector<CheckResult> suite_subcritical(const VerifyOptions& opt) {
  const auto& pol = opt.policy;
  std::vector<CheckResult> out;

  {
    const auto dec = subcritical_decomposition(0.5, 0.9, pol);
    out.push_back(value_check("subcritical.atom_mass", dec.atom->mass,
                              std::exp(0.5) * 0.4 / 0.9, 1e-15));
    out.push_back(value_check("subcritical.atom_location", dec.atom->location,
                              0.4, 1e-15));
  }
  {
    const auto dec = subcritical_decomposition(0.3, 0.8, pol);
    out.push_back(value_check("subcritical.total_mass", dec.total_mass_check, 1.0, 1e-7));
    const double x = 1.1;
    const double recon =
        dec.atom->mass * phi_comp(dec.atom->location, x) +
        integrate_density_line(
            [&](double xi) { return phi_principal(xi, x) * dec.density(xi); }, 24.0,
            1e-10);
    out.push_back(value_check("subcritical.reconstruction", recon,
                              phi_comp(0.8, x) * levy_exponent_psi(0.3, x), 1e-7));
  }

  out.push_back(value_check(
      "subcritical.J_oracle", J_series(0.3, 0.7, 1.5, pol),
      fourier_invert_weighted(0.3, 0.7, 1.5, OracleWeight::diff_shift), 1e-9));

  {  // continuity across t = |omega|
    const double om = 0.8, delta = 1e-8, xi = 1.0;
    const double comp = complementary_density(om, om, xi, pol);
    const auto dec = subcritical_decomposition(om - delta, om, pol);
    out.push_back(residual_check("subcritical.regime_continuity",
                                 comp - dec.density(xi), 1e-6));
  }
  return out;
}

std::vector<CheckResult> suite_metaplectic(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const double alpha = opt.alpha, t = opt.t;
  const auto gen = build_generators(alpha);

  out.push_back(residual_check(
      "metaplectic.J_squared",
      (gen.J_alpha * gen.J_alpha + Mat4::Identity()).cwiseAbs().maxCoeff(), 0.0));

  {
    double worst = 0.0;
    Mat4 apow = gen.A_alpha;  // A^1
    const Mat4 AJ = gen.A_alpha * gen.J_alpha;
    for (int j = 1; j <= 6; ++j) {
      const double sgn = (j % 2 == 1) ? 1.0 : -1.0;
      const Mat4 odd_ref = sgn * std::pow(2.0 * alpha, 2.0 * j - 2.0) * gen.A_alpha;
      worst = std::max(worst, (apow - odd_ref).cwiseAbs().maxCoeff() /
                                  odd_ref.cwiseAbs().maxCoeff());
      apow = apow * gen.A_alpha;  // A^{2j}
      const Mat4 even_ref = sgn * std::pow(2.0 * alpha, 2.0 * j - 1.0) * AJ;
      worst = std::max(worst, (apow - even_ref).cwiseAbs().maxCoeff() /
                                  even_ref.cwiseAbs().maxCoeff());
      apow = apow * gen.A_alpha;  // A^{2j+1}
    }
    out.push_back(residual_check("metaplectic.power_identities", worst, 1e-10));
  }

  {
    double worst = 0.0;
    for (int i = 0; i <= 9; ++i)
      for (int k = 0; k <= 9; ++k) {
        const double a = 0.2 + (3.0 - 0.2) * i / 9.0;
        const double tt = 5.0 * k / 9.0;
        worst = std::max(worst,
            (exp_neg_tA_closed(a, tt) - exp_neg_tA_series(a, tt)).cwiseAbs().maxCoeff());
      }
    out.push_back(residual_check("metaplectic.closed_vs_series", worst, 1e-12));
  }

  out.push_back(residual_check(
      "metaplectic.periodicity",
      (exp_neg_tA_closed(alpha, t + pi / alpha) - exp_neg_tA_closed(alpha, t))
          .cwiseAbs()
          .maxCoeff(),
      1e-12));

  {
    const auto g = gram_products(alpha, t);
    out.push_back(residual_check("metaplectic.gram_core_det",
                                 g.left2.determinant() - 1.0, 1e-12));
    out.push_back(residual_check("metaplectic.gram_trace_match",
                                 g.left2.trace() - g.right2.trace(), 1e-12));
  }

  {
    const Mat4 S = exp_neg_tA_closed(alpha, t);
    const auto f = cartan_decompose(S);
    Mat2 diag;
    diag << f.lambda1, 0.0, 0.0, f.lambda2;
    Mat4 lam = Mat4::Zero();
    lam.block<2, 2>(0, 0) = f.lambda1 * Mat2::Identity();
    lam.block<2, 2>(2, 2) = f.lambda2 * Mat2::Identity();
    out.push_back(residual_check("metaplectic.cartan_reassembly",
                                 (f.M * lam * f.R - S).cwiseAbs().maxCoeff(), 1e-12));
    out.push_back(residual_check("metaplectic.lambda_product",
                                 f.lambda1 * f.lambda2 - 1.0, 1e-12));
    const Mat2c U = identify_u2(f.M);
    out.push_back(residual_check(
        "metaplectic.u2_unitarity",
        (U * U.adjoint() - Mat2c::Identity()).cwiseAbs().maxCoeff(), 1e-12));
    const Mat2c sl = assign_sl2c(f);
    out.push_back(residual_check("metaplectic.sl2c_det",
                                 std::abs(sl.determinant() - complex{1.0, 0.0}),
                                 1e-12));
    out.push_back(value_check("metaplectic.lambda1_report", f.lambda1, f.lambda1, 0.0));
    out.push_back(value_check("metaplectic.lambda2_report", f.lambda2, f.lambda2, 0.0));
  }

  for (double x : {0.0, 1.0})
    out.push_back(value_check("metaplectic.gaussian_sech_x" + format_double(x),
                              gaussian_average_sech(x), 1.0 / std::cosh(x), 1e-8));
  return out;
}

std::vector<CheckResult> suite_montecarlo(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const auto ens = simulate_area_ensemble(opt.sim);

  const auto zero = conditional_area_cf(ens, 0.5, 0.0, opt.sim.bandwidth);
  out.push_back(value_check("montecarlo.x0_exact", zero.estimate, 1.0, 0.0));

  for (auto [t, x] : {std::pair{0.5, 1.0}, std::pair{1.0, 0.5}}) {
    const auto full = conditional_area_cf(ens, t, x, opt.sim.bandwidth);
    const auto half = conditional_area_cf(ens, t, x, opt.sim.bandwidth / 2.0);
    AreaEstimate est;
    est.estimate = (4.0 * half.estimate - full.estimate) / 3.0;
    est.stderr_ = std::sqrt(16.0 * half.stderr_ * half.stderr_ +
                            full.stderr_ * full.stderr_) / 3.0;
    const double target = phi_comp(0.0, x) * levy_exponent_psi(t, x);
    const double tol = std::max(3.0 * est.stderr_, 0.05 * std::abs(target));
    out.push_back(value_check(
        "montecarlo.gaveau_t" + format_double(t) + "_x" + format_double(x),
        est.estimate, target, tol));
  }

  {  // reproducibility of the estimate from (seed, spec)
    AreaSimSpec small = opt.sim;
    small.n_paths = 2000;
    small.n_steps = 64;
    const auto a = monte_carlo_levy_area(0.5, 1.0, small);
    const auto b = monte_carlo_levy_area(0.5, 1.0, small);
    out.push_back(residual_check("montecarlo.reproducibility",
                                 a.estimate - b.estimate, 0.0));
  }
  return out;
}

}  // namespace

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          const VerifyOptions& opt) {
  opt.policy.validate();
  if (suite == "qt") return suite_qt(opt);
  if (suite == "principal") return suite_principal(opt);
  if (suite == "complementary") return suite_complementary(opt);
  if (suite == "subcritical") return suite_subcritical(opt);
  if (suite == "metaplectic") return suite_metaplectic(opt);
  if (suite == "montecarlo") return suite_montecarlo(opt);
  if (suite == "all") {
    std::vector<CheckResult> out;
    for (const char* s : {"qt", "principal", "complementary", "subcritical",
                          "metaplectic"}) {
      auto part = run_verify_suite(s, opt);
      out.insert(out.end(), part.begin(), part.end());
    }
    if (opt.include_slow) {
      auto part = suite_montecarlo(opt);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::domain_error("unknown verify suite: " + suite);
}

std::string verify_report_json(const std::string& suite,
                               const std::vector<CheckResult>& checks) {
  JsonWriter w;
  w.begin_object();
  w.key("suite").string(suite);
  w.key("checks").begin_array();
  for (const auto& c : checks) {
    w.begin_object();
    w.key("name").string(c.name);
    w.key("target").number(c.target);
    w.key("measured").number(c.measured);
    w.key("tolerance").number(c.tolerance);
    w.key("pass").boolean(c.passed);
    w.end_object();
  }
  w.end_array();
  w.key("all_pass").boolean(all_passed(checks));
  w.end_object();
  return w.str();
}

}  // namespace sphsemi

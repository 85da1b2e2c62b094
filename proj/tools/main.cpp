// Command-line front end: density tables, verification suites, the
// symplectic pipeline, and the stochastic-area simulation.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "sphsemi/emit.hpp"
#include "sphsemi/metaplectic.hpp"
#include "sphsemi/oracle.hpp"
#include "sphsemi/special_functions.hpp"
#include "sphsemi/verify.hpp"

namespace {

using namespace sphsemi;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonConvergence = 3;

struct OutputTarget {
  std::string path = "-";  // "-" = stdout

  void write(const std::string& content) const {
    if (path == "-") {
      std::cout << content;
      return;
    }
    std::filesystem::path p(path);
    if (p.is_relative()) {
      if (const char* dir = std::getenv("SPHSEMI_OUTPUT_DIR"))
        p = std::filesystem::path(dir) / p;
    }
    std::ofstream out(p, std::ios::binary);  // LF endings everywhere
    if (!out) throw std::runtime_error("cannot open output file " + p.string());
    out << content;
  }
};

struct GridArgs {
  double min = -10.0, max = 10.0;
  long n = 101;
};

std::vector<double> grid_points(const GridArgs& g) {
  if (g.n < 2) throw std::domain_error("grid needs n >= 2");
  if (!(g.max > g.min)) throw std::domain_error("grid needs max > min");
  std::vector<double> pts(g.n);
  // convex form: symmetric ranges produce exactly mirrored points
  for (long i = 0; i < g.n; ++i) {
    const double a = static_cast<double>(g.n - 1 - i) / (g.n - 1);
    const double b = static_cast<double>(i) / (g.n - 1);
    pts[i] = g.min * a + g.max * b;
  }
  return pts;
}

std::vector<double> evaluate_grid(const std::vector<double>& pts,
                                  const std::function<double(double)>& f,
                                  int threads) {
  std::vector<double> vals(pts.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);
    return vals;
  }
  std::vector<std::future<void>> futs;
  const std::size_t chunk = (pts.size() + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(pts.size(), lo + chunk);
    if (lo >= hi) break;
    futs.push_back(std::async(std::launch::async, [&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) vals[i] = f(pts[i]);
    }));
  }
  for (auto& fu : futs) fu.get();
  return vals;
}

void sanity_scan(const std::vector<double>& pts, const std::vector<double>& vals,
                 bool declared_even) {
  for (double v : vals)
    if (!std::isfinite(v))
      throw NonConvergence("emitted table contains a non-finite value", v, 0.0);
  if (!declared_even) return;
  const std::size_t n = pts.size();
  if (n < 2 || std::abs(pts.front() + pts.back()) > 1e-12) return;  // asymmetric grid
  for (std::size_t i = 0; i < n / 2; ++i)
    if (std::abs(vals[i] - vals[n - 1 - i]) >
        1e-12 * std::max(1.0, std::abs(vals[i])))
      throw NonConvergence("evenness violated in emitted table",
                           vals[i] - vals[n - 1 - i], 1e-12);
}

std::string table_to_string(const std::vector<std::string>& comments,
                            const std::string& format,
                            const std::vector<double>& pts,
                            const std::vector<double>& vals,
                            const char* abscissa) {
  if (format == "csv") {
    CsvWriter csv;
    for (const auto& c : comments) csv.comment(c);
    csv.header({abscissa, "value"});
    for (std::size_t i = 0; i < pts.size(); ++i) csv.row({pts[i], vals[i]});
    return csv.str();
  }
  JsonWriter w;
  w.begin_object();
  w.key("meta").begin_array();
  for (const auto& c : comments) w.string(c);
  w.end_array();
  w.key(abscissa).begin_array();
  for (double p : pts) w.number(p);
  w.end_array();
  w.key("value").begin_array();
  for (double v : vals) w.number(v);
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"semigroup densities and spectral kernels for the Gelfand pair "
               "(SL(2,C), SU(2))"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "",
                 "key=value configuration file (keys under a [subcommand] section)");

  TruncationPolicy policy;
  GridArgs grid;
  OutputTarget out;
  std::string format = "csv";
  int threads = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--rel-tol", policy.rel_tol, "certified relative tolerance")
        ->check(CLI::Range(1e-15, 0.999));
    cmd->add_option("--max-m", policy.max_m, "outer summation cap");
    cmd->add_option("--max-j", policy.max_j, "inner direct-summation cap");
    cmd->add_option("-o,--output", out.path, "output file ('-' = stdout)");
    cmd->add_option("--threads", threads, "grid evaluation workers");
  };
  auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("--grid", [&grid](const std::vector<std::string>& v) {
          if (v.size() != 3) return false;
          grid.min = std::stod(v[0]);
          grid.max = std::stod(v[1]);
          grid.n = std::stol(v[2]);
          return true;
        },
        "evaluation grid: MIN MAX N")
        ->expected(3);
  };

  // ---- density ----
  auto* density = app.add_subcommand("density", "evaluate a kernel density onto a grid");
  std::string kind;
  double t = 1.0, omega = 0.0;
  density->add_option("kind", kind, "q | p | c | g")
      ->required()
      ->check(CLI::IsMember({"q", "p", "c", "g"}));
  density->add_option("--t", t, "time parameter (default 1)");
  density->add_option("--omega", omega, "spectral parameter");
  density->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  add_common(density);
  add_grid(density);

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  VerifyOptions vopt;
  bool include_slow = false;
  verify->add_option("suite", suite,
                     "all | qt | principal | complementary | subcritical | "
                     "metaplectic | montecarlo");
  verify->add_flag("--include-slow", include_slow, "add montecarlo to 'all'");
  verify->add_option("--fault", vopt.fault, "test hook: perturb the semigroup law");
  verify->add_option("--alpha", vopt.alpha, "metaplectic alpha");
  verify->add_option("--t", vopt.t, "metaplectic t");
  verify->add_option("--paths", vopt.sim.n_paths);
  verify->add_option("--steps", vopt.sim.n_steps);
  verify->add_option("--bandwidth", vopt.sim.bandwidth);
  verify->add_option("--seed", vopt.sim.seed);
  add_common(verify);

  // ---- metaplectic ----
  auto* meta = app.add_subcommand("metaplectic", "symplectic matrix pipeline");
  double m_alpha = 1.0, m_t = 1.0;
  meta->add_option("--alpha", m_alpha, "magnetic parameter b/(2 pi)");
  meta->add_option("--t", m_t, "time");
  add_common(meta);

  // ---- area-sim ----
  auto* area = app.add_subcommand("area-sim", "stochastic-area Monte Carlo");
  AreaSimSpec sim;
  double a_t = 0.5, a_x = 1.0;
  bool richardson = false;
  area->add_option("--t", a_t);
  area->add_option("--x", a_x);
  area->add_option("--paths", sim.n_paths);
  area->add_option("--steps", sim.n_steps);
  area->add_option("--bandwidth", sim.bandwidth);
  area->add_option("--seed", sim.seed);
  area->add_option("--sim-threads", sim.threads);
  area->add_flag("--richardson", richardson, "extrapolate over (b, b/2)");
  add_common(area);

  // ---- tabulate ----
  auto* tab = app.add_subcommand("tabulate", "tabulate a closed-form function");
  std::string fn;
  double tab_t = 1.0, tab_omega = 0.0;
  tab->add_option("fn", fn, "psi | phi-p | phi-c | levy | intertwining")
      ->required()
      ->check(CLI::IsMember({"psi", "phi-p", "phi-c", "levy", "intertwining"}));
  tab->add_option("--t", tab_t);
  tab->add_option("--omega", tab_omega);
  tab->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  add_common(tab);
  add_grid(tab);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  policy.validate();

  if (density->parsed()) {
    const auto pts = grid_points(grid);
    std::vector<std::string> comments = {
        "kind=" + kind, "t=" + format_double(t), "omega=" + format_double(omega),
        "rel_tol=" + format_double(policy.rel_tol)};
    std::function<double(double)> f;
    std::optional<KernelDecomposition> dec;
    if (kind == "q") {
      f = [&](double xi) { return qt_density(t, xi, policy); };
    } else if (kind == "p") {
      f = [&](double xi) { return principal_density(t, omega, xi, policy); };
    } else if (kind == "c") {
      f = [&](double xi) { return complementary_density(t, omega, xi, policy); };
    } else {
      dec = subcritical_decomposition(t, omega, policy);
      comments.insert(comments.begin(),
                      "atom_location=" + format_double(dec->atom->location) +
                          ",atom_mass=" + format_double(dec->atom->mass));
      comments.push_back("total_mass_check=" + format_double(dec->total_mass_check));
      f = dec->density;
    }
    const auto vals = evaluate_grid(pts, f, threads);
    sanity_scan(pts, vals, true);
    out.write(table_to_string(comments, format, pts, vals, "xi"));
    return kExitOk;
  }

  if (verify->parsed()) {
    vopt.include_slow = include_slow;
    vopt.policy = policy;
    const auto checks = run_verify_suite(suite, vopt);
    out.write(verify_report_json(suite, checks) + "\n");
    return all_passed(checks) ? kExitOk : kExitVerifyFailure;
  }

  if (meta->parsed()) {
    out.write(metaplectic_report_json(m_alpha, m_t) + "\n");
    return kExitOk;
  }

  if (area->parsed()) {
    const auto est = richardson ? monte_carlo_levy_area_richardson(a_t, a_x, sim)
                                : monte_carlo_levy_area(a_t, a_x, sim);
    const double target =
        spherical_phi(SpectralPoint::Complementary(0.0), a_x) *
        levy_exponent_psi(a_t, a_x);
    JsonWriter w;
    w.begin_object();
    w.key("t").number(a_t);
    w.key("x").number(a_x);
    w.key("paths").integer(sim.n_paths);
    w.key("steps").integer(sim.n_steps);
    w.key("bandwidth").number(sim.bandwidth);
    w.key("seed").integer(static_cast<long>(sim.seed));
    w.key("richardson").boolean(richardson);
    w.key("estimate").number(est.estimate);
    w.key("stderr").number(est.stderr_);
    w.key("n_accepted").integer(est.n_accepted);
    w.key("acceptance_rate").number(est.acceptance_rate);
    w.key("target_phi0_psi_t").number(target);
    w.end_object();
    out.write(w.str() + "\n");
    return kExitOk;
  }

  if (tab->parsed()) {
    const auto pts = grid_points(grid);
    std::function<double(double)> f;
    bool even = true;
    const char* abscissa = "x";
    if (fn == "psi") {
      f = [&](double x) { return levy_exponent_psi(tab_t, x); };
    } else if (fn == "phi-p") {
      f = [&](double x) {
        return spherical_phi(SpectralPoint::Principal(tab_omega), x);
      };
    } else if (fn == "phi-c") {
      f = [&](double x) {
        return spherical_phi(SpectralPoint::Complementary(tab_omega), x);
      };
    } else if (fn == "levy") {
      abscissa = "xi";
      f = [](double xi) { return levy_density_closed(xi); };
    } else {
      f = [&](double x) { return intertwining_kernel(tab_omega, x); };
    }
    const auto vals = evaluate_grid(pts, f, threads);
    sanity_scan(pts, vals, even);
    const std::vector<std::string> comments = {
        "fn=" + fn, "t=" + format_double(tab_t), "omega=" + format_double(tab_omega)};
    out.write(table_to_string(comments, format, pts, vals, abscissa));
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const ToleranceNotMet& e) {
    std::cerr << "tolerance not met: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const InsufficientAcceptance& e) {
    std::cerr << "insufficient acceptance: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

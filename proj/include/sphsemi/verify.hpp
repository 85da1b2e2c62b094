#pragma once

#include <string>
#include <vector>

#include "sphsemi/oracle.hpp"

namespace sphsemi {

struct CheckResult {
  std::string name;
  double measured = 0.0;   // quantity compared against the tolerance
  double target = 0.0;     // reference value (0 for pure residual checks)
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  TruncationPolicy policy;
  double fault = 0.0;   // test hook: perturbs one factor of the semigroup law
  double alpha = 0.7;   // metaplectic pipeline parameters
  double t = 1.3;
  AreaSimSpec sim{.n_paths = 200000, .n_steps = 1024, .bandwidth = 0.1,
                  .seed = 20240901, .threads = 0};
  bool include_slow = false;  // adds montecarlo to "all"
};

// suite in {all, qt, principal, complementary, subcritical, metaplectic,
// montecarlo}; throws std::domain_error for unknown names.
std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          const VerifyOptions& opt);

bool all_passed(const std::vector<CheckResult>& checks);

std::string verify_report_json(const std::string& suite,
                               const std::vector<CheckResult>& checks);

}  // namespace sphsemi

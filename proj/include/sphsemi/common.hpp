#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphsemi {

using complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

#ifdef SPHSEMI_EXTENDED_PRECISION
using accum_t = long double;
#else
using accum_t = double;
#endif

// ---------------------------------------------------------------------------
// Error taxonomy. Domain violations use std::domain_error directly.
// ---------------------------------------------------------------------------

// A series engine could not certify the requested tolerance within its caps.
struct NonConvergence : std::runtime_error {
  double certified;  // tail bound actually achieved (absolute)
  double requested;  // tolerance that was asked for
  NonConvergence(const std::string& what, double cert, double req)
      : std::runtime_error(what + " (certified " + std::to_string(cert) +
                           ", requested " + std::to_string(req) + ")"),
        certified(cert), requested(req) {}
};

// Parameters fall in a different spectral regime than the operation serves.
struct RegimeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A matrix failed a structural precondition (symplectic, block form, ...).
struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ToleranceNotMet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientAcceptance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Compensated accumulation
// ---------------------------------------------------------------------------

class KahanAccumulator {
 public:
  void add(accum_t x) {
    const accum_t y = x - comp_;
    const accum_t t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return static_cast<double>(sum_); }

 private:
  accum_t sum_ = 0;
  accum_t comp_ = 0;
};

// Fixed-order pairwise reduction; deterministic for a given input order.
double pairwise_sum(std::span<const double> xs);

// splitmix64 step, used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace sphsemi

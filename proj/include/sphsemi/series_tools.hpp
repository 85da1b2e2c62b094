#pragma once

#include "sphsemi/common.hpp"

namespace sphsemi {

// Truncation control for the double-series engines. rel_tol is certified
// against the absolutely-summed magnitude of the outer alternating series
// (the natural binary64 scale of the computation); an engine that cannot
// meet it within the caps throws NonConvergence.
struct TruncationPolicy {
  double rel_tol = 1e-10;
  int max_m = 80;
  int max_j = 400;

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
      throw std::domain_error("TruncationPolicy: rel_tol must lie in (0,1)");
    if (max_m < 1 || max_j < 1)
      throw std::domain_error("TruncationPolicy: caps must be >= 1");
  }
};

struct CertifiedValue {
  complex value;
  double cert;  // absolute bound on truncation + evaluation error
};

// sum_{n>=0} (w0 + h n)^{-s} for integer s >= 2, Re(w0) > 0, h > 0.
// Direct terms until |w| is comfortably larger than s, then Euler-Maclaurin
// with up to 12 Bernoulli corrections; cert covers the first omitted term.
CertifiedValue power_sum_tail(int s, complex w0, double h);

// Inner sum of the rearranged double series:
//   sum_{j>=0} (m)_j / j! * (2j + z)^{-power}
// with Re(z) > 0. The weight (m)_j/j! is a degree (m-1) polynomial in j, so
// the tail beyond the direct range reduces exactly to power_sum_tail calls.
CertifiedValue nb_power_sum(int m, complex z, int power, const TruncationPolicy& pol);

// sum_{k>M} t^k / (k! (k+t+shift)^{1+extra}) -- outer-tail majorant of the
// m-summation, from the bound 2v/(e^{2v}-1) <= e^{-v}.
double outer_tail_bound(double t, double shift, int M, int extra);

// The m-outer double series common to all kernels:
//   sum_{m>=0} (-2t)^m c_m sum_{j>=0} (m)_j/j! (2j+2m+t+shift + i xi)^{-p_m}
// where (c_m, p_m) = (1, m+1) plainly or (m+1, m+2) in derivative form.
// `part` selects Re (cosine transforms) or Im (sine transforms);
// skip_00 removes the (j,m) = (0,0) term (the series J_t starts at j = 1).
struct SeriesSpec {
  double shift = 0.0;
  bool derivative = false;
  bool skip_00 = false;
  enum class Part { real_part, imag_part } part = Part::real_part;
};

double double_series(double t, double xi_nonneg, const SeriesSpec& spec,
                     const TruncationPolicy& pol);

}  // namespace sphsemi

#include "sphsemi/series_tools.hpp"

#include <algorithm>
#include <cmath>

namespace sphsemi {

namespace {

// B_2, B_4, ..., B_24
constexpr double kBernoulli[12] = {
    1.0 / 6,           -1.0 / 30,          1.0 / 42,
    -1.0 / 30,         5.0 / 66,           -691.0 / 2730,
    7.0 / 6,           -3617.0 / 510,      43867.0 / 798,
    -174611.0 / 330,   854513.0 / 138,     -236364091.0 / 2730};

double factorial(int n) { return std::tgamma(n + 1.0); }

complex cpow_int(complex w, int p) {
  // w^{-p} for p >= 1 via polar form; the arg/abs route keeps conjugate
  // symmetry exact, which the evenness guarantees rely on.
  const double r = std::abs(w);
  const double th = std::arg(w);
  const double mag = std::exp(-p * std::log(r));
  return {mag * std::cos(p * th), -mag * std::sin(p * th)};
}

// largest m for which the polynomial-expansion tail stays well conditioned;
// beyond it the outer factorial decay has made the terms irrelevant anyway.
constexpr int kTailMaxM = 32;

}  // namespace

CertifiedValue power_sum_tail(int s, complex w0, double h) {
  complex acc = 0.0;
  complex w = w0;
  const double thresh = std::max(36.0, 3.0 * s);
  int guard = 0;
  while (std::abs(w) < thresh && guard++ < 4096) {
    acc += cpow_int(w, s);
    w += h;
  }
  const complex base = cpow_int(w, s - 1) / (h * (s - 1.0)) + 0.5 * cpow_int(w, s);
  acc += base;
  double poch = s;  // (s)_{2k-1}
  double cert = 1e-18 * std::abs(acc);
  for (int k = 1; k <= 12; ++k) {
    const complex term = kBernoulli[k - 1] / factorial(2 * k) *
                         std::pow(h, 2 * k - 1) * poch * cpow_int(w, s + 2 * k - 1);
    acc += term;
    poch *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
    const double next = std::abs(kBernoulli[std::min(k, 11)]) / factorial(2 * k + 2) *
                        std::pow(h, 2 * k + 1) * poch *
                        std::pow(std::abs(w), -(s + 2.0 * k + 1.0));
    cert = next;
    if (next < 1e-17 * std::abs(acc)) break;
  }
  // evaluation error of exp(-p log w) grows with p log|w|
  const double pow_eps = (s * std::log(std::abs(w)) + 4.0) * 1.2e-16;
  return {acc, 4.0 * cert + pow_eps * std::abs(acc)};
}

CertifiedValue nb_power_sum(int m, complex z, int power, const TruncationPolicy& pol) {
  if (m == 0) return {cpow_int(z, power), 0.0};

  const int j_direct = std::min(pol.max_j, std::max(64, 4 * m));
  KahanAccumulator re, im;
  double abs_sum = 0.0;
  double p = 1.0;  // (m)_j / j!
  for (int j = 0; j < j_direct; ++j) {
    const complex term = p * cpow_int(2.0 * j + z, power);
    re.add(term.real());
    im.add(term.imag());
    abs_sum += std::abs(term);
    p *= (m + j) / (j + 1.0);
  }
  complex acc{re.value(), im.value()};
  double cert = (power * std::log(2.0 * j_direct + std::abs(z)) + 4.0) * 1.2e-16 * abs_sum;

  // Tail: (m)_j/j! = 2^{-(m-1)}/Gamma(m) * prod_{i=1}^{m-1}(w - (z-2i)) as a
  // polynomial in w = 2j+z, so the tail is an exact combination of
  // power_sum_tail values. The expansion loses conditioning as m grows;
  // cert carries an explicit cancellation term and the outer factorial
  // weight makes large-m tails negligible.
  const double crude = std::pow(2.0, -(power)) / std::tgamma(static_cast<double>(m)) /
                       std::max(1.0, j_direct + m - 1.0);
  if (m > kTailMaxM) {
    cert += crude;
    return {acc, cert};
  }

  std::vector<complex> d(m, 0.0);
  d[0] = 1.0;
  int deg = 0;
  for (int i = 1; i < m; ++i) {
    const complex r = z - 2.0 * i;
    for (int k = deg + 1; k >= 1; --k) d[k] = d[k - 1] - r * d[k];
    d[0] = -r * d[0];
    ++deg;
  }
  bool finite = true;
  for (const complex& c : d)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) finite = false;
  if (!finite) {
    cert += crude;
    return {acc, cert};
  }

  const complex w0 = 2.0 * j_direct + z;
  const double scale = std::pow(2.0, -(m - 1)) / std::tgamma(static_cast<double>(m));
  complex tail = 0.0;
  double tail_cert = 0.0, cond = 0.0;
  for (int k = 0; k < m; ++k) {
    const auto h = power_sum_tail(power - k, w0, 2.0);
    tail += d[k] * h.value;
    tail_cert += std::abs(d[k]) * h.cert;
    cond += std::abs(d[k]) * std::abs(h.value);
  }
  acc += scale * tail;
  cert += scale * (tail_cert + 2.3e-16 * cond);
  return {acc, cert};
}

double outer_tail_bound(double t, double shift, int M, int extra) {
  double bound = 0.0;
  double lt = (M + 1) * std::log(t) - std::lgamma(M + 2.0);
  for (int k = M + 1; k < M + 60; ++k) {
    const double rate = k + t + shift;
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    bound += std::exp(lt) / std::pow(rate, 1.0 + extra);
    lt += std::log(t) - std::log(k + 1.0);
  }
  return bound;
}

double double_series(double t, double xi, const SeriesSpec& spec,
                     const TruncationPolicy& pol) {
  pol.validate();
  if (!(t > 0.0)) throw std::domain_error("double_series requires t > 0");

  const int extra = spec.derivative ? 1 : 0;
  const int m_cap = std::min(pol.max_m, 48);
  KahanAccumulator total;
  double abs_sum = 0.0;
  double cert_sum = 0.0;
  double outer_w = 1.0;  // (2t)^m

  for (int m = 0; m <= m_cap; ++m) {
    const complex z = 2.0 * m + t + spec.shift + complex{0.0, xi};
    // all rates 2j+2m+t+shift must stay positive (m = 0 may sit on the
    // regime boundary, where callers take the Abel value)
    if (m > 0 && !(z.real() > 0.0))
      throw std::domain_error("double_series: nonpositive exponential rate");
    CertifiedValue inner{0.0, 0.0};
    if (!(spec.skip_00 && m == 0))
      inner = nb_power_sum(m, z, m + 1 + extra, pol);
    const double factor = spec.derivative ? (m + 1.0) : 1.0;
    const double sel = (spec.part == SeriesSpec::Part::real_part)
                           ? inner.value.real()
                           : inner.value.imag();
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double term = sign * outer_w * factor * sel;
    total.add(term);
    abs_sum += std::abs(term);
    cert_sum += outer_w * factor * inner.cert;

    if (m >= 3) {
      const double tail = outer_tail_bound(t, spec.shift, m, extra);
      const double scale = std::max(abs_sum, 1e-300);
      if (tail + cert_sum <= pol.rel_tol * scale) return total.value();
    }
    outer_w *= 2.0 * t;
  }
  const double tail = outer_tail_bound(t, spec.shift, m_cap, extra);
  throw NonConvergence("double_series: certified tail exceeds rel_tol at caps",
                       tail + cert_sum, pol.rel_tol * std::max(abs_sum, 1e-300));
}

double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n <= 4) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  return pairwise_sum(xs.first(n / 2)) + pairwise_sum(xs.subspan(n / 2));
}

}  // namespace sphsemi

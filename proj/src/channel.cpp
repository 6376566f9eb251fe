#include "lnfade/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lnfade/errors.hpp"
#include "lnfade/gaussian.hpp"

namespace lnfade {

void LognormalParams::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("LognormalParams.sigma must be > 0");
  }
  if (!std::isfinite(m)) throw DomainError("LognormalParams.m must be finite");
}

Ar1Params Ar1Params::from_doppler(double fd, double ts) {
  if (!(ts > 0.0)) throw DomainError("Ar1Params.Ts must be > 0");
  if (!(fd >= 0.0)) throw DomainError("Ar1Params.fd must be >= 0");
  return Ar1Params(fd, ts, std::exp(-2.0 * std::numbers::pi * fd * ts));
}

Ar1Params Ar1Params::from_coefficient(double a1, double ts) {
  if (!(ts > 0.0)) throw DomainError("Ar1Params.Ts must be > 0");
  if (!(a1 >= 0.0 && a1 <= 1.0)) throw DomainError("Ar1Params.a1 must lie in [0, 1]");
  const double fd = a1 == 0.0 ? std::numeric_limits<double>::infinity()
                              : -std::log(a1) / (2.0 * std::numbers::pi * ts);
  return Ar1Params(fd, ts, a1);
}

Ar1Process::Ar1Process(const LognormalParams& p, const Ar1Params& a, std::uint64_t seed)
    : m_(p.m),
      sigma_(p.sigma),
      a1_(a.a1()),
      innovation_sd_(p.sigma * std::sqrt(std::max(0.0, 1.0 - a.a1() * a.a1()))),
      rng_(seed) {
  p.validate();
}

double Ar1Process::next() {
  const double w = normal_(rng_);
  if (!started_) {
    x_ = m_ + sigma_ * w;
    started_ = true;
  } else {
    x_ = m_ * (1.0 - a1_) + a1_ * x_ + innovation_sd_ * w;
  }
  return std::exp(x_);
}

double lognormal_pdf(double h, const LognormalParams& p) {
  if (h == 0.0) return 0.0;
  if (!(h > 0.0)) throw DomainError("lognormal_pdf: gain must be >= 0");
  p.validate();
  const double z = (std::log(h) - p.m) / p.sigma;
  return std::exp(-0.5 * z * z) / (h * p.sigma * std::sqrt(2.0 * std::numbers::pi));
}

LognormalMoments lognormal_moments(const LognormalParams& p) {
  p.validate();
  const double s2 = p.sigma * p.sigma;
  return {std::exp(p.m + 0.5 * s2), std::exp(2.0 * p.m + s2) * std::expm1(s2)};
}

ChannelTrace gen_ar1_trace(const LognormalParams& p, const Ar1Params& a, std::size_t n_slots,
                           std::uint64_t seed) {
  if (n_slots == 0) throw DomainError("gen_ar1_trace: n_slots must be >= 1");
  Ar1Process process(p, a, seed);
  ChannelTrace trace;
  trace.slot = a.ts();
  trace.seed = seed;
  trace.gains.reserve(n_slots);
  for (std::size_t j = 0; j < n_slots; ++j) trace.gains.push_back(process.next());
  return trace;
}

double lag1_autocorrelation(const std::vector<double>& x) {
  if (x.size() < 2) throw DomainError("lag-1 autocorrelation needs at least 2 samples");
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double r0 = 0.0;
  double r1 = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const double d = x[t] - mean;
    r0 += d * d;
    if (t + 1 < x.size()) r1 += d * (x[t + 1] - mean);
  }
  // A constant series leaves only rounding residue around the mean.
  const double resid = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(mean), 1e-150);
  if (r0 <= n * resid * resid) {
    throw DegenerateInputError("lag-1 autocorrelation undefined for a zero-variance series");
  }
  return r1 / r0;
}

double estimate_a1(const ChannelTrace& trace) {
  if (trace.gains.size() < 2) throw DomainError("estimate_a1: trace shorter than 2 slots");
  std::vector<double> logs;
  logs.reserve(trace.gains.size());
  for (double h : trace.gains) {
    if (!(h > 0.0)) throw DomainError("estimate_a1: non-positive gain in trace");
    logs.push_back(std::log(h));
  }
  return lag1_autocorrelation(logs);
}

double psd_ar1(double f, const Ar1Params& a, const LognormalParams& p, PsdForm form) {
  const double s2 = p.sigma * p.sigma;
  if (form == PsdForm::Lorentzian) {
    const double fd = a.fd();
    if (!(fd > 0.0) || !std::isfinite(fd)) {
      throw DomainError("psd_ar1: Lorentzian form needs a finite positive Doppler spread");
    }
    const double r = f / fd;
    return (s2 / (std::numbers::pi * fd)) / (1.0 + r * r);
  }
  // |1 + a e^{-j w}|^2 = 1 + 2 a cos w + a^2
  const double a1 = a.a1();
  const double w = 2.0 * std::numbers::pi * f;
  return s2 / (1.0 + 2.0 * a1 * std::cos(w) + a1 * a1);
}

void QuantizedChain::validate() const {
  const std::size_t k = levels.size();
  if (k < 2 || trans.size() != k) throw DomainError("QuantizedChain: shape mismatch");
  for (std::size_t u = 0; u < k; ++u) {
    if (!(levels[u] > 0.0)) throw DomainError("QuantizedChain: non-positive level");
    if (u > 0 && !(levels[u] > levels[u - 1])) {
      throw DomainError("QuantizedChain: levels not strictly increasing");
    }
    if (trans[u].size() != k) throw DomainError("QuantizedChain: ragged transition matrix");
    double sum = 0.0;
    for (double v : trans[u]) {
      if (!(v >= 0.0 && v <= 1.0)) throw DomainError("QuantizedChain: entry outside [0, 1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw DomainError("QuantizedChain: row does not sum to 1");
  }
}

std::vector<double> quantile_boundaries(const LognormalParams& p, std::size_t k) {
  std::vector<double> b(k + 1);
  b.front() = -std::numeric_limits<double>::infinity();
  b.back() = std::numeric_limits<double>::infinity();
  for (std::size_t c = 1; c < k; ++c) {
    const double lower = static_cast<double>(c) / static_cast<double>(k);
    b[c] = p.m + p.sigma * q_inverse(1.0 - lower);
  }
  return b;
}

std::size_t cell_index(const std::vector<double>& boundaries, double log_gain) {
  // boundaries[0] = -inf, so upper_bound lands in [1, K].
  const auto it = std::upper_bound(boundaries.begin() + 1, boundaries.end() - 1, log_gain);
  return static_cast<std::size_t>(it - boundaries.begin()) - 1;
}

namespace {

// Normal mass of [lo, hi], taken from whichever tail avoids cancellation.
double normal_mass(double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  return lo >= 0.0 ? q_function(lo) - q_function(hi) : normal_cdf(hi) - normal_cdf(lo);
}

template <typename F>
double simpson(F&& f, double lo, double hi, int panels) {
  if (!(hi > lo)) return 0.0;
  const double h = (hi - lo) / panels;
  double s = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

constexpr double kZClip = 12.0;
constexpr int kPanels = 400;

// P(X in [a, b], a1 X + s W in [c, d]) for independent standard normals X, W.
// Integrates over whichever variable keeps the inner probability smooth.
double cell_pair_mass(double a, double b, double c, double d, double a1, double s) {
  if (a1 <= s) {
    const auto f = [&](double x) { return normal_pdf(x) * normal_mass((c - a1 * x) / s, (d - a1 * x) / s); };
    return simpson(f, std::max(a, -kZClip), std::min(b, kZClip), kPanels);
  }
  // X must lie in [a, b] and in [(c - s w) / a1, (d - s w) / a1].
  const auto f = [&](double w) {
    return normal_pdf(w) * normal_mass(std::max(a, (c - s * w) / a1), std::min(b, (d - s * w) / a1));
  };
  std::vector<double> cuts{-kZClip, kZClip};
  for (double edge : {c - a1 * a, c - a1 * b, d - a1 * a, d - a1 * b}) {
    const double w = edge / s;
    if (std::isfinite(w) && w > -kZClip && w < kZClip) cuts.push_back(w);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += simpson(f, cuts[i], cuts[i + 1], kPanels);
  return total;
}

}  // namespace

QuantizedChain quantize_chain(const LognormalParams& p, const Ar1Params& a, std::size_t k) {
  if (k < 2) throw DomainError("quantize_chain: K must be >= 2");
  p.validate();
  const auto bounds = quantile_boundaries(p, k);
  const double a1 = a.a1();
  const double s = std::sqrt(std::max(0.0, 1.0 - a1 * a1));

  QuantizedChain chain;
  chain.levels.resize(k);
  chain.trans.assign(k, std::vector<double>(k, 0.0));
  std::vector<double> z(k + 1);
  for (std::size_t c = 0; c <= k; ++c) z[c] = (bounds[c] - p.m) / p.sigma;
  for (std::size_t u = 0; u < k; ++u) {
    const double mid = (2.0 * static_cast<double>(u) + 1.0) / (2.0 * static_cast<double>(k));
    chain.levels[u] = std::exp(p.m + p.sigma * q_inverse(1.0 - mid));
  }

  // Row u is the law of the next cell given the current log gain is anywhere
  // in cell u, weighted by its stationary density.
  for (std::size_t u = 0; u < k; ++u) {
    auto& row = chain.trans[u];
    if (s == 0.0) {
      row[u] = 1.0;
      continue;
    }
    for (std::size_t v = 0; v < k; ++v) {
      row[v] = std::max(0.0, cell_pair_mass(z[u], z[u + 1], z[v], z[v + 1], a1, s));
    }
    double sum = 0.0;
    for (double v : row) sum += v;
    for (double& v : row) v /= sum;
  }
  return chain;
}

std::vector<double> stationary_distribution(const QuantizedChain& chain, int max_iter,
                                            double tol) {
  const std::size_t k = chain.size();
  std::vector<double> pi(k, 1.0 / static_cast<double>(k));
  std::vector<double> next(k);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t u = 0; u < k; ++u) {
      for (std::size_t v = 0; v < k; ++v) next[v] += pi[u] * chain.trans[u][v];
    }
    double diff = 0.0;
    for (std::size_t v = 0; v < k; ++v) diff = std::max(diff, std::abs(next[v] - pi[v]));
    pi.swap(next);
    if (diff < tol) break;
  }
  return pi;
}

}  // namespace lnfade

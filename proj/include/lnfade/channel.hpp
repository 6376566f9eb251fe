#pragma once

// Log-normal AR(1) fading: marginal density, trace generation, coefficient
// estimation, spectrum, and a finite-state Markov quantization of the kernel.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace lnfade {

/// Parameters of ln h ~ Normal(m, sigma^2), natural-log domain.
struct LognormalParams {
  double m = -0.5;
  double sigma = 1.0;

  void validate() const;
};

/// AR(1) correlation of the log-gain process, a1 = exp(-2 pi fd Ts).
class Ar1Params {
 public:
  /// From Doppler spread and slot period. fd = 0 gives the static channel a1 = 1.
  static Ar1Params from_doppler(double fd, double ts);

  /// From the one-step coefficient directly. a1 = 0 maps to fd = +inf.
  static Ar1Params from_coefficient(double a1, double ts);

  double fd() const { return fd_; }
  double ts() const { return ts_; }
  double a1() const { return a1_; }

 private:
  Ar1Params(double fd, double ts, double a1) : fd_(fd), ts_(ts), a1_(a1) {}

  double fd_;
  double ts_;
  double a1_;
};

struct ChannelTrace {
  std::vector<double> gains;
  double slot = 0.0;
  std::uint64_t seed = 0;
};

struct LognormalMoments {
  double mean;
  double variance;
};

/// Stateful generator of the log-domain AR(1) gain sequence.
///
/// X_0 ~ N(m, sigma^2); X_j = m (1 - a1) + a1 X_{j-1} + w_j with
/// w_j ~ N(0, sigma^2 (1 - a1^2)), so every X_j has the stationary marginal.
/// The first call to next() returns h_0 = exp(X_0).
class Ar1Process {
 public:
  Ar1Process(const LognormalParams& p, const Ar1Params& a, std::uint64_t seed);

  double next();

 private:
  double m_;
  double sigma_;
  double a1_;
  double innovation_sd_;
  bool started_ = false;
  double x_ = 0.0;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

double lognormal_pdf(double h, const LognormalParams& p);

LognormalMoments lognormal_moments(const LognormalParams& p);

ChannelTrace gen_ar1_trace(const LognormalParams& p, const Ar1Params& a, std::size_t n_slots,
                           std::uint64_t seed);

/// Yule-Walker AR(1) estimate: lag-1 over lag-0 sample autocovariance of the
/// mean-removed log-gains.
double estimate_a1(const ChannelTrace& trace);

/// Same estimator on an arbitrary real series (already in the log domain).
double lag1_autocorrelation(const std::vector<double>& series);

enum class PsdForm {
  Rational,    // sigma^2 / |1 + a1 e^{-j 2 pi f}|^2, f normalized to the slot rate
  Lorentzian,  // (sigma^2 / (pi fd)) / (1 + (f / fd)^2), f in Hz
};

double psd_ar1(double f, const Ar1Params& a, const LognormalParams& p,
               PsdForm form = PsdForm::Rational);

struct QuantizedChain {
  std::vector<double> levels;             // ascending gains, one per cell
  std::vector<std::vector<double>> trans;  // row-stochastic K x K

  std::size_t size() const { return levels.size(); }
  void validate() const;
};

/// Equiprobable quantization of the log-gain marginal into K cells with the
/// AR(1) Gaussian step kernel integrated over each destination cell.
QuantizedChain quantize_chain(const LognormalParams& p, const Ar1Params& a, std::size_t k);

/// Cell boundaries in the log domain, size K + 1, with +-inf at the ends.
std::vector<double> quantile_boundaries(const LognormalParams& p, std::size_t k);

/// Index of the quantization cell containing a log-gain.
std::size_t cell_index(const std::vector<double>& boundaries, double log_gain);

/// Left eigenvector of the chain for eigenvalue 1, by power iteration.
std::vector<double> stationary_distribution(const QuantizedChain& chain, int max_iter = 100000,
                                            double tol = 1e-14);

}  // namespace lnfade

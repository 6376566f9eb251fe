#pragma once

// Link-level error model: Q-function bounds on the bit error probability,
// packet erasure, outage-driven power control, and correlated (multi-packet)
// Gaussian orthant probabilities.

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "lnfade/channel.hpp"
#include "lnfade/gaussian.hpp"

namespace lnfade {

enum class PolicyKind { Fixed, Adaptive };

/// Transmit power policy. Adaptive inverts the channel relative to the
/// outage gain h_out and goes silent when inversion would exceed pt_max.
struct PowerPolicy {
  PolicyKind kind = PolicyKind::Fixed;
  double pt = 1.0;
  double pt_max = 0.0;
  double p_out = 0.0;
  double h_out = 0.0;

  static PowerPolicy fixed(double pt);
  static PowerPolicy adaptive(double pt, double pt_max, double p_out, const LognormalParams& p);

  /// Throws DomainError naming the first broken invariant. `p` is needed to
  /// check the stored h_out against the outage probability.
  void validate(const LognormalParams& p) const;
};

/// Noise floor and packet format. snr is the nominal pt / (n0 rate).
struct LinkBudget {
  double n0 = 1.0;
  double rate = 1.0;
  int bits = 8;
  double snr = 1.0;

  /// Budget for a target SNR in dB with transmit power pt; n0 is derived.
  static LinkBudget from_snr_db(double snr_db, double pt, double rate, int bits);

  void validate() const;
};

/// Grouping of the logarithm argument in the fixed-power BER bound.
enum class BerOrientation {
  Ratio,    // Q((m - ln(h / SNR)) / sigma), the printed form
  Product,  // Q((m - ln(h * SNR)) / sigma)
};

/// Symmetric, unit-diagonal, positive semi-definite correlation matrix.
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(Eigen::MatrixXd entries);

  static CorrelationMatrix identity(Eigen::Index k);
  /// All off-diagonals equal to rho.
  static CorrelationMatrix equicorrelated(Eigen::Index k, double rho);

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  Eigen::MatrixXd entries_;
  double min_eigenvalue_;
};

/// Monte Carlo estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

double ber_fixed(double h, const LinkBudget& budget, const LognormalParams& p,
                 BerOrientation orientation = BerOrientation::Ratio);

/// Channel-independent bound under the adaptive policy (valid while not in outage).
double ber_adaptive(const PowerPolicy& policy, const LinkBudget& budget, const LognormalParams& p);

double packet_erasure(double pb, int bits);

double outage_threshold(double p_out, const LognormalParams& p);

double effective_power(double h, const PowerPolicy& policy);

struct SlotLink {
  double erasure;  // packet erasure probability in this slot
  double power;    // transmit power, 0 when silent
};

/// Per-slot erasure and power under a policy. Adaptive outage slots are
/// silent with erasure exactly 1.
SlotLink slot_link(double h, const PowerPolicy& policy, const LinkBudget& budget,
                   const LognormalParams& p, BerOrientation orientation = BerOrientation::Ratio);

/// Stationary mean of the per-slot erasure over the log-normal marginal,
/// by quadrature over ln h.
double mean_erasure(const PowerPolicy& policy, const LinkBudget& budget, const LognormalParams& p,
                    BerOrientation orientation = BerOrientation::Ratio);

/// Bivariate upper-orthant probability P(X1 > x1, X2 > x2) for standard
/// normals with correlation rho, by adaptive quadrature.
double q2(double x1, double x2, double rho);

/// k-dimensional upper-orthant probability by seeded Monte Carlo.
Estimate qn(std::span<const double> x, const CorrelationMatrix& c, std::uint64_t seed,
            std::size_t samples = 1'000'000);

/// Joint BER bound for k correlated coded packets. k = 1 and k = 2 are
/// deterministic (std_error 0); k >= 3 falls back to qn.
Estimate ber_correlated(std::span<const double> gains, const CorrelationMatrix& c,
                        const LognormalParams& p, std::uint64_t seed = 1,
                        std::size_t samples = 1'000'000);

/// Multivariate log-normal joint density with log-covariance sigma^2 c.
double joint_lognormal_density(std::span<const double> gains, std::span<const double> mu,
                               const CorrelationMatrix& c, double sigma);

/// Samples of sum_i h_i for a correlated log-normal vector; the sum has no
/// closed-form law.
std::vector<double> sample_lognormal_sum(std::span<const double> mu, const CorrelationMatrix& c,
                                         double sigma, std::size_t n, std::uint64_t seed);

}  // namespace lnfade

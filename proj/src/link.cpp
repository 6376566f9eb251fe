#include "lnfade/link.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "lnfade/errors.hpp"
#include "lnfade/linalg.hpp"

namespace lnfade {

PowerPolicy PowerPolicy::fixed(double pt) {
  PowerPolicy policy;
  policy.kind = PolicyKind::Fixed;
  policy.pt = pt;
  if (!(pt > 0.0)) throw DomainError("PowerPolicy.pt must be > 0");
  return policy;
}

PowerPolicy PowerPolicy::adaptive(double pt, double pt_max, double p_out,
                                  const LognormalParams& p) {
  PowerPolicy policy;
  policy.kind = PolicyKind::Adaptive;
  policy.pt = pt;
  policy.pt_max = pt_max;
  policy.p_out = p_out;
  if (!(p_out > 0.0 && p_out < 1.0)) throw DomainError("PowerPolicy.p_out must lie in (0, 1)");
  policy.h_out = outage_threshold(p_out, p);
  policy.validate(p);
  return policy;
}

void PowerPolicy::validate(const LognormalParams& p) const {
  if (!(pt > 0.0)) throw DomainError("PowerPolicy.pt must be > 0");
  if (kind == PolicyKind::Fixed) return;
  if (!(pt_max >= pt)) throw DomainError("PowerPolicy.pt_max must be >= pt");
  if (!(p_out > 0.0 && p_out < 1.0)) throw DomainError("PowerPolicy.p_out must lie in (0, 1)");
  if (!(h_out > 0.0)) throw DomainError("PowerPolicy.h_out must be > 0");
  const double expected = outage_threshold(p_out, p);
  if (std::abs(h_out - expected) > 1e-12 * expected) {
    throw DomainError("PowerPolicy.h_out inconsistent with p_out");
  }
}

LinkBudget LinkBudget::from_snr_db(double snr_db, double pt, double rate, int bits) {
  LinkBudget budget;
  budget.snr = std::pow(10.0, snr_db / 10.0);
  budget.rate = rate;
  budget.bits = bits;
  budget.n0 = pt / (rate * budget.snr);
  budget.validate();
  return budget;
}

void LinkBudget::validate() const {
  if (!(n0 > 0.0)) throw DomainError("LinkBudget.n0 must be > 0");
  if (!(rate > 0.0)) throw DomainError("LinkBudget.rate must be > 0");
  if (bits < 1) throw DomainError("LinkBudget.bits must be >= 1");
  if (!(snr > 0.0)) throw DomainError("LinkBudget.snr must be > 0");
}

CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  const Eigen::Index k = entries_.rows();
  if (k < 1 || entries_.cols() != k) throw DomainError("CorrelationMatrix: must be square, k >= 1");
  for (Eigen::Index i = 0; i < k; ++i) {
    if (entries_(i, i) != 1.0) throw DomainError("CorrelationMatrix: diagonal must be 1");
    for (Eigen::Index j = 0; j < k; ++j) {
      if (entries_(i, j) != entries_(j, i)) throw DomainError("CorrelationMatrix: not symmetric");
      if (!(std::abs(entries_(i, j)) <= 1.0)) {
        throw DomainError("CorrelationMatrix: entries must lie in [-1, 1]");
      }
    }
  }
  min_eigenvalue_ = jacobi_eigen<double>(entries_).values.minCoeff();
  if (min_eigenvalue_ < -1e-10) throw DomainError("CorrelationMatrix: not positive semi-definite");
}

CorrelationMatrix CorrelationMatrix::identity(Eigen::Index k) {
  return CorrelationMatrix(Eigen::MatrixXd::Identity(k, k));
}

CorrelationMatrix CorrelationMatrix::equicorrelated(Eigen::Index k, double rho) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Constant(k, k, rho);
  c.diagonal().setOnes();
  return CorrelationMatrix(std::move(c));
}

double ber_fixed(double h, const LinkBudget& budget, const LognormalParams& p,
                 BerOrientation orientation) {
  if (!(h > 0.0)) throw DomainError("ber_fixed: gain must be > 0");
  if (!(budget.snr > 0.0)) throw DomainError("ber_fixed: snr must be > 0");
  const double log_arg = orientation == BerOrientation::Ratio
                             ? std::log(h) - std::log(budget.snr)
                             : std::log(h) + std::log(budget.snr);
  return q_function((p.m - log_arg) / p.sigma);
}

double ber_adaptive(const PowerPolicy& policy, const LinkBudget& budget,
                    const LognormalParams& p) {
  if (policy.kind != PolicyKind::Adaptive) {
    throw UsageError("ber_adaptive: requires an adaptive power policy");
  }
  const double arg = policy.h_out * budget.n0 * budget.rate / policy.pt;
  return q_function((p.m - std::log(arg)) / p.sigma);
}

double packet_erasure(double pb, int bits) {
  if (!(pb >= 0.0 && pb <= 1.0)) throw DomainError("packet_erasure: pb must lie in [0, 1]");
  if (bits < 1) throw DomainError("packet_erasure: bits must be >= 1");
  if (pb == 1.0) return 1.0;
  // 1 - (1 - pb)^B without cancellation for small pb.
  return -std::expm1(static_cast<double>(bits) * std::log1p(-pb));
}

double outage_threshold(double p_out, const LognormalParams& p) {
  if (!(p_out > 0.0 && p_out < 1.0)) {
    throw DomainError("outage_threshold: p_out must lie in (0, 1)");
  }
  return std::exp(p.m - p.sigma * q_inverse(p_out));
}

double effective_power(double h, const PowerPolicy& policy) {
  if (!(h >= 0.0)) throw DomainError("effective_power: gain must be >= 0");
  if (policy.kind == PolicyKind::Fixed) return policy.pt;
  if (h == 0.0) return 0.0;
  const double power = policy.pt * policy.h_out / h;
  return power <= policy.pt_max ? power : 0.0;
}

SlotLink slot_link(double h, const PowerPolicy& policy, const LinkBudget& budget,
                   const LognormalParams& p, BerOrientation orientation) {
  const double power = effective_power(h, policy);
  if (policy.kind == PolicyKind::Fixed) {
    return {packet_erasure(ber_fixed(h, budget, p, orientation), budget.bits), power};
  }
  if (power == 0.0) return {1.0, 0.0};
  return {packet_erasure(ber_adaptive(policy, budget, p), budget.bits), power};
}

double mean_erasure(const PowerPolicy& policy, const LinkBudget& budget, const LognormalParams& p,
                    BerOrientation orientation) {
  if (policy.kind == PolicyKind::Adaptive) {
    // Outage iff h < pt h_out / pt_max; erasure is 1 there and constant elsewhere.
    const double in_service = packet_erasure(ber_adaptive(policy, budget, p), budget.bits);
    if (!std::isfinite(policy.pt_max)) return in_service;
    const double cut = std::log(policy.pt * policy.h_out / policy.pt_max);
    const double p_outage = normal_cdf((cut - p.m) / p.sigma);
    return p_outage + (1.0 - p_outage) * in_service;
  }
  // Composite Simpson over z in [-10, 10], ln h = m + sigma z.
  constexpr int panels = 4000;
  constexpr double lo = -10.0;
  constexpr double hi = 10.0;
  const double dz = (hi - lo) / panels;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double z = lo + dz * i;
    const double h = std::exp(p.m + p.sigma * z);
    const double f =
        normal_pdf(z) * packet_erasure(ber_fixed(h, budget, p, orientation), budget.bits);
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * f;
  }
  return sum * dz / 3.0;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson over [a, b], pre-split into unit-width panels so narrow
// features are not skipped by the first coarse estimate.
double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(b - a)) * 4);
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + width * i;
    const double hi = i + 1 == panels ? b : lo + width;
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fmid = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += simpson_step(f, lo, hi, flo, fmid, fhi, whole, tol / panels, 40);
  }
  return total;
}

constexpr double kTailCut = 10.0;  // normal_pdf(10) ~ 7.7e-23

}  // namespace

double q2(double x1, double x2, double rho) {
  if (!(std::abs(rho) < 1.0)) throw DomainError("q2: |rho| must be < 1");
  if (rho == 0.0) return q_function(x1) * q_function(x2);
  if (x1 >= kTailCut || x2 >= kTailCut) return 0.0;
  const double s = std::sqrt(1.0 - rho * rho);
  // P(X1 > x1, X2 > x2) = int_{x1}^inf phi(u) Q((x2 - rho u) / s) du
  auto integrand = [&](double u) { return normal_pdf(u) * q_function((x2 - rho * u) / s); };
  return integrate(integrand, std::max(x1, -kTailCut), kTailCut, 1e-12);
}

namespace {

Eigen::MatrixXd cholesky_factor(const CorrelationMatrix& c) {
  Eigen::LLT<Eigen::MatrixXd> llt(c.entries());
  if (llt.info() != Eigen::Success) throw DomainError("correlation matrix is not positive definite");
  return llt.matrixL();
}

}  // namespace

Estimate qn(std::span<const double> x, const CorrelationMatrix& c, std::uint64_t seed,
            std::size_t samples) {
  const Eigen::Index k = c.dim();
  if (static_cast<Eigen::Index>(x.size()) != k) throw DomainError("qn: dimension mismatch");
  if (samples == 0) throw DomainError("qn: samples must be >= 1");
  const Eigen::MatrixXd l = cholesky_factor(c);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(k);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < k; ++i) z(i) = normal(rng);
    bool inside = true;
    // y = L z, evaluated row by row with early exit.
    for (Eigen::Index i = 0; i < k && inside; ++i) {
      const double y = l.row(i).head(i + 1).dot(z.head(i + 1));
      inside = y > x[static_cast<std::size_t>(i)];
    }
    hits += inside ? 1 : 0;
  }
  const double n = static_cast<double>(samples);
  const double phat = static_cast<double>(hits) / n;
  return {phat, std::sqrt(phat * (1.0 - phat) / n)};
}

Estimate ber_correlated(std::span<const double> gains, const CorrelationMatrix& c,
                        const LognormalParams& p, std::uint64_t seed, std::size_t samples) {
  if (static_cast<Eigen::Index>(gains.size()) != c.dim()) {
    throw DomainError("ber_correlated: dimension mismatch");
  }
  std::vector<double> args;
  args.reserve(gains.size());
  for (double h : gains) {
    if (!(h > 0.0)) throw DomainError("ber_correlated: gains must be > 0");
    args.push_back((p.m - std::log(h)) / p.sigma);
  }
  if (args.size() == 1) return {q_function(args[0]), 0.0};
  if (args.size() == 2) return {q2(args[0], args[1], c.entries()(0, 1)), 0.0};
  return qn(args, c, seed, samples);
}

double joint_lognormal_density(std::span<const double> gains, std::span<const double> mu,
                               const CorrelationMatrix& c, double sigma) {
  const Eigen::Index k = c.dim();
  if (static_cast<Eigen::Index>(gains.size()) != k || static_cast<Eigen::Index>(mu.size()) != k) {
    throw DomainError("joint_lognormal_density: dimension mismatch");
  }
  if (!(sigma > 0.0)) throw DomainError("joint_lognormal_density: sigma must be > 0");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma * sigma * c.entries());
  if (llt.info() != Eigen::Success) throw DomainError("joint_lognormal_density: singular matrix");

  Eigen::VectorXd d(k);
  double jacobian = 1.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double h = gains[static_cast<std::size_t>(i)];
    if (!(h > 0.0)) throw DomainError("joint_lognormal_density: gains must be > 0");
    d(i) = std::log(h) - mu[static_cast<std::size_t>(i)];
    jacobian /= h;
  }
  const Eigen::VectorXd w = llt.matrixL().solve(d);
  const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double log_norm = -0.5 * static_cast<double>(k) * std::log(2.0 * std::numbers::pi) -
                          0.5 * log_det;
  return jacobian * std::exp(log_norm - 0.5 * w.squaredNorm());
}

std::vector<double> sample_lognormal_sum(std::span<const double> mu, const CorrelationMatrix& c,
                                         double sigma, std::size_t n, std::uint64_t seed) {
  const Eigen::Index k = c.dim();
  if (static_cast<Eigen::Index>(mu.size()) != k) {
    throw DomainError("sample_lognormal_sum: dimension mismatch");
  }
  const Eigen::MatrixXd l = sigma * cholesky_factor(c);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(k);
  std::vector<double> out(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (Eigen::Index i = 0; i < k; ++i) z(i) = normal(rng);
    const Eigen::VectorXd y = l * z;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) sum += std::exp(mu[static_cast<std::size_t>(i)] + y(i));
    out[s] = sum;
  }
  return out;
}

}  // namespace lnfade

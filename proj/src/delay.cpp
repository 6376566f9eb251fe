#include "lnfade/delay.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include "lnfade/errors.hpp"

namespace lnfade {

ErasureProfile ErasureProfile::constant(double pe) {
  ErasureProfile profile;
  profile.tail = pe;
  profile.validate();
  return profile;
}

void ErasureProfile::validate() const {
  for (double v : pe) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("ErasureProfile: entry outside [0, 1]");
  }
  if (!(tail >= 0.0 && tail <= 1.0)) throw DomainError("ErasureProfile: tail outside [0, 1]");
  if (!duty.empty() && duty.size() != pe.size()) {
    throw DomainError("ErasureProfile: duty length differs from pe length");
  }
  for (double d : duty) {
    if (!(d >= 0.0)) throw DomainError("ErasureProfile: negative duty");
  }
  if (!(tail_duty >= 0.0)) throw DomainError("ErasureProfile: negative tail duty");
}

TransitionProbs transition_probs(double pe) {
  if (!(pe >= 0.0 && pe <= 1.0)) throw DomainError("transition_probs: pe must lie in [0, 1]");
  return {1.0 - pe, pe};
}

DelayTable::DelayTable(std::size_t n_packets, std::size_t n_slots, double tp)
    : rows_(n_packets + 1), cols_(n_slots), tp_(tp), t_(rows_ * cols_, 0.0) {}

void DelayTable::write_csv(std::ostream& os) const {
  os << "i,j,seconds\n";
  char buf[64];
  for (std::size_t i = 1; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      std::snprintf(buf, sizeof buf, "%.11e", at(i, j));
      os << i << ',' << j << ',' << buf << '\n';
    }
  }
}

double expected_time_constant(std::size_t i, double pe, double tp) {
  if (!(pe < 1.0)) throw DivergenceError("expected delivery time diverges at erasure 1");
  return static_cast<double>(i) * tp / (1.0 - pe);
}

DelayTable expected_time_uncoded(const ErasureProfile& profile, std::size_t n_packets, double tp) {
  profile.validate();
  if (profile.pe.empty()) throw DomainError("expected_time_uncoded: empty profile");
  if (!(tp > 0.0)) throw DomainError("expected_time_uncoded: tp must be > 0");
  const std::size_t n = profile.size();
  DelayTable table(n_packets, n, tp);
  if (n_packets == 0) return table;
  if (!(profile.tail < 1.0)) {
    throw DivergenceError("expected_time_uncoded: tail erasure 1 gives unbounded delay");
  }

  // Backward over slots; column j reads column j + 1 or the tail closed form.
  std::vector<double> next(n_packets + 1);
  for (std::size_t i = 0; i <= n_packets; ++i) {
    next[i] = expected_time_constant(i, profile.tail, tp);
  }
  for (std::size_t jj = n; jj-- > 0;) {
    const auto [ps, pf] = transition_probs(profile.pe[jj]);
    for (std::size_t i = 1; i <= n_packets; ++i) {
      table.at(i, jj) = tp + ps * next[i - 1] + pf * next[i];
    }
    for (std::size_t i = 0; i <= n_packets; ++i) next[i] = table.at(i, jj);
  }
  return table;
}

ErasureProfile erasure_profile_from_trace(const ChannelTrace& trace, const LinkBudget& budget,
                                          const PowerPolicy& policy, const LognormalParams& p,
                                          BerOrientation orientation) {
  ErasureProfile profile;
  profile.pe.reserve(trace.gains.size());
  profile.duty.reserve(trace.gains.size());
  double sum_pe = 0.0;
  double sum_duty = 0.0;
  for (double h : trace.gains) {
    const SlotLink link = slot_link(h, policy, budget, p, orientation);
    profile.pe.push_back(link.erasure);
    profile.duty.push_back(link.power / policy.pt);
    sum_pe += link.erasure;
    sum_duty += link.power / policy.pt;
  }
  const double n = static_cast<double>(std::max<std::size_t>(1, trace.gains.size()));
  profile.tail = std::min(sum_pe / n, 1.0 - 1e-9);
  profile.tail_duty = sum_duty / n;
  return profile;
}

std::vector<std::vector<double>> expected_time_chain(const QuantizedChain& chain,
                                                     const std::vector<double>& pe_levels,
                                                     std::size_t n_packets, double tp) {
  chain.validate();
  const auto k = static_cast<Eigen::Index>(chain.size());
  if (static_cast<Eigen::Index>(pe_levels.size()) != k) {
    throw DomainError("expected_time_chain: one erasure per level required");
  }
  Eigen::MatrixXd trans(k, k);
  for (Eigen::Index u = 0; u < k; ++u) {
    if (!(pe_levels[u] >= 0.0 && pe_levels[u] <= 1.0)) {
      throw DomainError("expected_time_chain: erasure outside [0, 1]");
    }
    for (Eigen::Index v = 0; v < k; ++v) trans(u, v) = chain.trans[u][v];
  }
  const Eigen::VectorXd pe = Eigen::Map<const Eigen::VectorXd>(pe_levels.data(), k);

  // (I - diag(pe) P) T_i = tp 1 + diag(1 - pe) P T_{i-1}
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k) - pe.asDiagonal() * trans;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) {
    throw DivergenceError("expected_time_chain: some cell can never deliver a packet");
  }
  std::vector<std::vector<double>> out(n_packets + 1, std::vector<double>(pe_levels.size(), 0.0));
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(k);
  for (std::size_t i = 1; i <= n_packets; ++i) {
    const Eigen::VectorXd rhs =
        Eigen::VectorXd::Constant(k, tp) + ((1.0 - pe.array()).matrix().asDiagonal() * trans) * prev;
    prev = lu.solve(rhs);
    for (Eigen::Index u = 0; u < k; ++u) out[i][static_cast<std::size_t>(u)] = prev(u);
  }
  return out;
}

}  // namespace lnfade

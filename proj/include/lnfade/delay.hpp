#pragma once

// Expected time to deliver i uncoded packets over a trace-aligned sequence of
// channel states. Every attempt occupies one slot and moves to the next
// channel state; success removes one packet.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "lnfade/channel.hpp"
#include "lnfade/link.hpp"

namespace lnfade {

/// Per-slot erasure probabilities plus the stationary tail used past the end.
///
/// `duty` is the optional per-slot transmit power relative to the policy's
/// baseline pt (1 under fixed power, h_out / h under inversion, 0 when silent);
/// empty means 1 everywhere. Only energy computations read it.
struct ErasureProfile {
  std::vector<double> pe;
  double tail = 0.0;
  std::vector<double> duty;
  double tail_duty = 1.0;

  /// Constant-erasure profile with no explicit slots.
  static ErasureProfile constant(double pe);

  double at(std::size_t j) const { return j < pe.size() ? pe[j] : tail; }
  double duty_at(std::size_t j) const {
    if (j < pe.size()) return duty.empty() ? 1.0 : duty[j];
    return tail_duty;
  }
  std::size_t size() const { return pe.size(); }

  void validate() const;
};

struct TransitionProbs {
  double ps;
  double pf;
};

TransitionProbs transition_probs(double pe);

/// T(i, j) for i = 0..N and j = 0..n-1, with T(0, j) = 0.
class DelayTable {
 public:
  DelayTable(std::size_t n_packets, std::size_t n_slots, double tp);

  double at(std::size_t i, std::size_t j) const { return t_[i * cols_ + j]; }
  double& at(std::size_t i, std::size_t j) { return t_[i * cols_ + j]; }
  std::size_t packets() const { return rows_ - 1; }
  std::size_t slots() const { return cols_; }
  double tp() const { return tp_; }

  /// CSV with header `i,j,seconds`, rows i = 1..N, 12 significant digits.
  void write_csv(std::ostream& os) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  double tp_;
  std::vector<double> t_;
};

/// Closed form for a constant erasure probability: i tp / (1 - pe).
double expected_time_constant(std::size_t i, double pe, double tp);

DelayTable expected_time_uncoded(const ErasureProfile& profile, std::size_t n_packets, double tp);

ErasureProfile erasure_profile_from_trace(const ChannelTrace& trace, const LinkBudget& budget,
                                          const PowerPolicy& policy, const LognormalParams& p,
                                          BerOrientation orientation = BerOrientation::Ratio);

/// Quantized-chain evaluation: T(i, u) for a chain started in cell u, with
/// per-cell erasure pe_levels[u]. Rows i = 0..N, each solved as a K x K
/// linear system.
std::vector<std::vector<double>> expected_time_chain(const QuantizedChain& chain,
                                                     const std::vector<double>& pe_levels,
                                                     std::size_t n_packets, double tp);

}  // namespace lnfade

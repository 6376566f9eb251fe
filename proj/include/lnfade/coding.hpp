#pragma once

// Network-coded delivery over the trace-aligned erasure profile. A round
// sends ni coded packets in ni consecutive slots followed by one ACK slot;
// the receiver needs i more degrees of freedom (dof) and any i arrivals
// complete the block.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "lnfade/delay.hpp"

namespace lnfade {

struct CodedConfig {
  std::size_t n_data = 1;
  std::size_t ni = 1;
  double tp = 1.0 / 150.0;
  std::size_t ni_max = 1;

  void validate() const;
};

/// probs[l] = P(l dof remain after one round), l = 0..i.
struct DofDistribution {
  std::vector<double> probs;
};

/// Coded packets per round as a function of the remaining dof.
/// Index 0 is unused; ni_by_dof[i] applies when i dof remain.
struct RoundSchedule {
  std::vector<std::size_t> ni_by_dof;

  static RoundSchedule constant(std::size_t ni, std::size_t n_data);
  std::size_t at(std::size_t dof) const { return ni_by_dof.at(dof); }
};

DofDistribution round_success_distribution(std::span<const double> pe_slice, std::size_t i);

/// Expected seconds to deliver config.n_data dof starting at slot j0, sending
/// config.ni coded packets in every round.
double expected_time_coded(const ErasureProfile& profile, const CodedConfig& config,
                           std::size_t j0 = 0);

/// Same, with a per-dof schedule.
double expected_time_coded(const ErasureProfile& profile, const RoundSchedule& schedule,
                           std::size_t n_data, double tp, std::size_t j0 = 0);

/// Expected transmit energy (joules) of the fixed schedule in `config`.
/// `powers` holds one level for every round, or one per dof level (index
/// dof - 1). ACK slots and silent slots draw no energy.
double energy_coded(const ErasureProfile& profile, const CodedConfig& config,
                    std::span<const double> powers, std::size_t j0 = 0);

/// Per-dof decision and outcome at the starting slot.
struct CodedPlanRow {
  std::size_t dof;
  std::size_t ni_star;
  double power;
  double expected_seconds;
  double expected_joules;
};

struct CodedPlan {
  std::vector<CodedPlanRow> rows;  // dof = 1..n_data
  double minimum = 0.0;            // optimized objective at (n_data, j0)

  /// CSV with header `dof,ni_star,power,expected_seconds,expected_joules`.
  void write_csv(std::ostream& os) const;
};

/// Minimum expected delivery time over ni in {min(i, ni_max), ..., ni_max}
/// at every (dof, slot) state; ties go to the smaller ni. `power` only
/// scales the reported energy column.
CodedPlan optimize_ni(const ErasureProfile& profile, std::size_t n_data, double tp,
                      std::size_t ni_max, std::size_t j0 = 0, double power = 1.0);

using ProfileForPower = std::function<ErasureProfile(double power)>;

/// Minimum expected energy over (power level, ni) at every state. Ties go to
/// the smaller ni, then the smaller power.
CodedPlan optimize_energy(const ProfileForPower& profile_for_power, std::size_t n_data, double tp,
                          std::span<const double> power_grid, std::size_t ni_max,
                          std::size_t j0 = 0);

}  // namespace lnfade

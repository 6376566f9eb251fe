#pragma once

// Slot-by-slot Monte Carlo of packet delivery over the AR(1) log-normal
// channel. This is the independent check for the analytic delay and coding
// models, so it shares only the per-slot link formulas with them.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lnfade/channel.hpp"
#include "lnfade/coding.hpp"
#include "lnfade/delay.hpp"
#include "lnfade/link.hpp"

namespace lnfade {

enum class Scheme { Uncoded, Coded };

std::string to_string(Scheme scheme);
std::string to_string(PolicyKind kind);

struct SimConfig {
  std::size_t n_data = 10;
  std::size_t block_size = 0;  // coded block size; 0 means one block of n_data
  double tp = 1.0 / 150.0;
  Scheme scheme = Scheme::Uncoded;
  std::size_t ni = 0;  // coded packets per round; 0 selects the optimized per-dof schedule
  std::size_t ni_max = 8;
  PowerPolicy policy = PowerPolicy::fixed(1.0);
  LinkBudget budget;
  LognormalParams channel;
  double a1 = 0.0;  // one-step log-gain correlation; slot period is tp
  std::size_t episodes = 1000;
  std::uint64_t seed = 1;
  std::uint64_t slot_cap = 10'000'000;
  BerOrientation orientation = BerOrientation::Ratio;
  /// Replaces the channel-derived erasure by a fixed per-slot sequence
  /// (indexed from the episode start, tail beyond). The channel is still
  /// drawn for power and energy.
  std::optional<ErasureProfile> forced_erasure;

  std::size_t block() const { return block_size == 0 ? n_data : block_size; }
  void validate() const;
};

struct SimResult {
  double delivery_time = 0.0;
  double throughput = 0.0;
  double erasure_rate = 0.0;
  double energy = 0.0;
  std::uint64_t silent_slots = 0;
  std::uint64_t transmissions = 0;
  std::uint64_t successes = 0;
  std::uint64_t erasures = 0;
  std::uint64_t ack_slots = 0;
  std::size_t delivered = 0;
};

struct SlotRecord {
  double gain;
  double power;  // 0 on ACK and silent slots
  bool ack;
  bool silent;
  bool erased;
};

/// Deterministic per-episode stream seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t episode, std::uint64_t stream);

/// Runs episodes of one configuration; resolves the coded schedule once.
class Simulator {
 public:
  explicit Simulator(SimConfig config);

  SimResult run_episode(std::uint64_t episode_index, std::vector<SlotRecord>* log = nullptr) const;

  const SimConfig& config() const { return config_; }
  const RoundSchedule& schedule() const { return schedule_; }

 private:
  SimConfig config_;
  Ar1Params ar1_;
  RoundSchedule schedule_;
};

SimResult run_episode(const SimConfig& config, std::uint64_t episode_index);

struct Summary {
  double mean = 0.0;
  double se = 0.0;
};

Summary summarize(std::span<const double> values);

struct SweepRow {
  double snr_db;
  Scheme scheme;
  PolicyKind policy;
  double a1;
  Summary time;
  Summary throughput;
  Summary erasure;
  Summary energy;
  double mean_silent;
  std::size_t episodes;
};

/// All episodes at every grid point; the budget's snr and n0 are replaced per
/// point with pt taken from the policy.
std::vector<SweepRow> sweep(const SimConfig& config, std::span<const double> snr_grid_db);

inline constexpr const char* kSweepCsvHeader =
    "snr_db,scheme,policy,a1,mean_time,se_time,mean_throughput,se_throughput,mean_erasure,"
    "se_erasure,mean_energy,se_energy,mean_silent,episodes";

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

}  // namespace lnfade

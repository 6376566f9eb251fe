#include "lnfade/mcsim.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "lnfade/errors.hpp"

namespace lnfade {

std::string to_string(Scheme scheme) { return scheme == Scheme::Uncoded ? "uncoded" : "coded"; }

std::string to_string(PolicyKind kind) { return kind == PolicyKind::Fixed ? "fixed" : "adaptive"; }

void SimConfig::validate() const {
  if (n_data < 1) throw DomainError("SimConfig.n_data must be >= 1");
  if (!(tp > 0.0)) throw DomainError("SimConfig.tp must be > 0");
  if (episodes < 1) throw DomainError("SimConfig.episodes must be >= 1");
  if (slot_cap < 1) throw DomainError("SimConfig.slot_cap must be >= 1");
  if (!(a1 >= 0.0 && a1 <= 1.0)) throw DomainError("SimConfig.a1 must lie in [0, 1]");
  if (scheme == Scheme::Coded && ni == 0 && ni_max < 1) {
    throw DomainError("SimConfig.ni_max must be >= 1 for the optimized schedule");
  }
  channel.validate();
  budget.validate();
  policy.validate(channel);
  if (forced_erasure) forced_erasure->validate();
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t episode, std::uint64_t stream) {
  // splitmix64 finalizer over a mix of the three inputs.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ episode) ^ (stream * 0xd1342543de82ef95ULL));
}

namespace {

RoundSchedule resolve_schedule(const SimConfig& c) {
  if (c.scheme == Scheme::Uncoded) return {};
  const std::size_t block = c.block();
  if (c.ni > 0) return RoundSchedule::constant(c.ni, block);
  const double pe = c.forced_erasure ? c.forced_erasure->tail
                                     : mean_erasure(c.policy, c.budget, c.channel, c.orientation);
  const CodedPlan plan =
      optimize_ni(ErasureProfile::constant(std::min(pe, 1.0 - 1e-9)), block, c.tp, c.ni_max);
  RoundSchedule s;
  s.ni_by_dof.assign(block + 1, 0);
  for (const auto& row : plan.rows) s.ni_by_dof[row.dof] = row.ni_star;
  return s;
}

}  // namespace

Simulator::Simulator(SimConfig config)
    : config_(std::move(config)), ar1_(Ar1Params::from_coefficient(config_.a1, config_.tp)) {
  config_.validate();
  schedule_ = resolve_schedule(config_);
}

SimResult Simulator::run_episode(std::uint64_t episode_index, std::vector<SlotRecord>* log) const {
  const SimConfig& c = config_;
  Ar1Process channel(c.channel, ar1_, derive_seed(c.seed, episode_index, 0));
  std::mt19937_64 erasure_rng(derive_seed(c.seed, episode_index, 1));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  SimResult r;
  std::uint64_t slot = 0;

  auto advance = [&]() {
    if (slot >= c.slot_cap) {
      throw ConvergenceError("episode " + std::to_string(episode_index) + " exceeded slot cap of " +
                             std::to_string(c.slot_cap));
    }
    ++slot;
    return channel.next();
  };

  // One transmission slot; returns true on successful reception.
  auto transmit = [&]() {
    const double h = advance();
    SlotLink link = slot_link(h, c.policy, c.budget, c.channel, c.orientation);
    if (c.forced_erasure) link.erasure = c.forced_erasure->at(slot - 1);
    const double u = uniform(erasure_rng);
    const bool silent = link.power == 0.0;
    const bool erased = silent || u < link.erasure;
    ++r.transmissions;
    r.silent_slots += silent ? 1 : 0;
    r.energy += link.power * c.tp;
    if (erased) {
      ++r.erasures;
    } else {
      ++r.successes;
    }
    if (log) log->push_back({h, link.power, false, silent, erased});
    return !erased;
  };

  auto ack = [&]() {
    const double h = advance();
    ++r.ack_slots;
    if (log) log->push_back({h, 0.0, true, false, false});
  };

  if (c.scheme == Scheme::Uncoded) {
    std::size_t remaining = c.n_data;
    while (remaining > 0) {
      if (transmit()) --remaining;
    }
  } else {
    std::size_t remaining = c.n_data;
    while (remaining > 0) {
      std::size_t dof = std::min(c.block(), remaining);
      remaining -= dof;
      while (dof > 0) {
        const std::size_t ni = schedule_.at(dof);
        std::size_t received = 0;
        for (std::size_t s = 0; s < ni; ++s) received += transmit() ? 1 : 0;
        ack();
        dof -= std::min(received, dof);
      }
    }
  }

  r.delivered = c.n_data;
  r.delivery_time = static_cast<double>(slot) * c.tp;
  r.throughput = static_cast<double>(c.n_data) / r.delivery_time;
  r.erasure_rate = static_cast<double>(r.erasures) / static_cast<double>(r.transmissions);
  return r;
}

SimResult run_episode(const SimConfig& config, std::uint64_t episode_index) {
  return Simulator(config).run_episode(episode_index);
}

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return s;
}

std::vector<SweepRow> sweep(const SimConfig& config, std::span<const double> snr_grid_db) {
  if (snr_grid_db.empty()) throw DomainError("sweep: empty SNR grid");
  std::vector<SweepRow> rows;
  rows.reserve(snr_grid_db.size());
  for (double db : snr_grid_db) {
    SimConfig point = config;
    point.budget = LinkBudget::from_snr_db(db, config.policy.pt, config.budget.rate,
                                           config.budget.bits);
    const Simulator sim(point);
    std::vector<double> time(point.episodes);
    std::vector<double> thr(point.episodes);
    std::vector<double> era(point.episodes);
    std::vector<double> energy(point.episodes);
    double silent = 0.0;
    for (std::size_t e = 0; e < point.episodes; ++e) {
      const SimResult r = sim.run_episode(e);
      time[e] = r.delivery_time;
      thr[e] = r.throughput;
      era[e] = r.erasure_rate;
      energy[e] = r.energy;
      silent += static_cast<double>(r.silent_slots);
    }
    rows.push_back({db, point.scheme, point.policy.kind, point.a1, summarize(time),
                    summarize(thr), summarize(era), summarize(energy),
                    silent / static_cast<double>(point.episodes), point.episodes});
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << kSweepCsvHeader << '\n';
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%.6g,%s,%s,%.6g,%.11e,%.11e,%.11e,%.11e,%.11e,%.11e,%.11e,%.11e,%.11e,%zu\n",
                  r.snr_db, to_string(r.scheme).c_str(), to_string(r.policy).c_str(), r.a1,
                  r.time.mean, r.time.se, r.throughput.mean, r.throughput.se, r.erasure.mean,
                  r.erasure.se, r.energy.mean, r.energy.se, r.mean_silent, r.episodes);
    os << buf;
  }
}

}  // namespace lnfade

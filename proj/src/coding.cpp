#include "lnfade/coding.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "lnfade/errors.hpp"

namespace lnfade {

void CodedConfig::validate() const {
  if (n_data < 1) throw DomainError("CodedConfig.n_data must be >= 1");
  if (ni < 1) throw DomainError("CodedConfig.ni must be >= 1");
  if (ni_max < ni) throw DomainError("CodedConfig.ni_max must be >= ni");
  if (!(tp > 0.0)) throw DomainError("CodedConfig.tp must be > 0");
}

RoundSchedule RoundSchedule::constant(std::size_t ni, std::size_t n_data) {
  RoundSchedule s;
  s.ni_by_dof.assign(n_data + 1, ni);
  s.ni_by_dof[0] = 0;
  return s;
}

DofDistribution round_success_distribution(std::span<const double> pe_slice, std::size_t i) {
  // succ[s] = P(s successes so far), with s capped at i.
  std::vector<double> succ(i + 1, 0.0);
  succ[0] = 1.0;
  std::vector<double> next(i + 1);
  for (double pe : pe_slice) {
    if (!(pe >= 0.0 && pe <= 1.0)) {
      throw DomainError("round_success_distribution: erasure outside [0, 1]");
    }
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t s = 0; s <= i; ++s) {
      if (succ[s] == 0.0) continue;
      next[s] += succ[s] * pe;
      next[std::min(s + 1, i)] += succ[s] * (1.0 - pe);
    }
    succ.swap(next);
  }
  DofDistribution d;
  d.probs.resize(i + 1);
  for (std::size_t s = 0; s <= i; ++s) d.probs[i - s] = succ[s];
  return d;
}

namespace {

enum class Objective { Time, Energy };

struct Option {
  std::size_t ni;
  std::size_t power_index;
};

// Backward induction over (dof, slot) states. The objective picks the action;
// time and energy are both carried along the chosen policy.
class RoundEngine {
 public:
  using OptionsFn = std::function<std::vector<Option>(std::size_t dof)>;

  RoundEngine(std::vector<ErasureProfile> profiles, std::vector<double> powers, double tp,
              std::size_t n_data, Objective objective, OptionsFn options)
      : profiles_(std::move(profiles)),
        powers_(std::move(powers)),
        tp_(tp),
        n_data_(n_data),
        objective_(objective),
        options_(std::move(options)) {
    if (!(tp_ > 0.0)) throw DomainError("coded delivery: tp must be > 0");
    for (const auto& p : profiles_) {
      p.validate();
      slots_ = std::max(slots_, p.size());
    }
    solve_tail();
    solve_trace();
  }

  struct Cell {
    double objective = 0.0;
    double time = 0.0;
    double energy = 0.0;
    Option choice{0, 0};
  };

  const Cell& at(std::size_t dof, std::size_t slot) const {
    if (slot >= slots_) return tail_[dof];
    return trace_[dof * slots_ + slot];
  }

 private:
  double value(Objective which, const Cell& c) const {
    return which == Objective::Time ? c.time : c.energy;
  }

  std::vector<double> slice(const ErasureProfile& p, std::size_t j, std::size_t ni) const {
    std::vector<double> out(ni);
    for (std::size_t s = 0; s < ni; ++s) out[s] = p.at(j + s);
    return out;
  }

  double round_energy(const Option& o, std::size_t j) const {
    const ErasureProfile& p = profiles_[o.power_index];
    double duty = 0.0;
    for (std::size_t s = 0; s < o.ni; ++s) duty += p.duty_at(j + s);
    return powers_[o.power_index] * tp_ * duty;
  }

  // Constant-erasure region past the profile: the state repeats on zero
  // progress, so each dof level is a ratio with the self-loop removed.
  void solve_tail() {
    tail_.assign(n_data_ + 1, Cell{});
    for (std::size_t i = 1; i <= n_data_; ++i) {
      bool found = false;
      Cell best;
      for (const Option& o : options_(i)) {
        const ErasureProfile& p = profiles_[o.power_index];
        const DofDistribution d =
            round_success_distribution(std::vector<double>(o.ni, p.tail), i);
        const double stay = d.probs[i];
        if (!(stay < 1.0)) continue;
        double t = static_cast<double>(o.ni + 1) * tp_;
        double e = powers_[o.power_index] * tp_ * static_cast<double>(o.ni) * p.tail_duty;
        for (std::size_t l = 1; l < i; ++l) {
          t += d.probs[l] * tail_[l].time;
          e += d.probs[l] * tail_[l].energy;
        }
        Cell c{0.0, t / (1.0 - stay), e / (1.0 - stay), o};
        c.objective = value(objective_, c);
        if (!found || c.objective < best.objective) {
          best = c;
          found = true;
        }
      }
      if (!found) {
        throw DivergenceError("coded delivery: tail erasure gives no progress at dof " +
                              std::to_string(i));
      }
      tail_[i] = best;
    }
  }

  void solve_trace() {
    trace_.assign((n_data_ + 1) * slots_, Cell{});
    for (std::size_t j = slots_; j-- > 0;) {
      for (std::size_t i = 1; i <= n_data_; ++i) {
        bool found = false;
        Cell best;
        for (const Option& o : options_(i)) {
          const DofDistribution d =
              round_success_distribution(slice(profiles_[o.power_index], j, o.ni), i);
          const std::size_t resume = j + o.ni + 1;
          double t = static_cast<double>(o.ni + 1) * tp_;
          double e = round_energy(o, j);
          for (std::size_t l = 1; l <= i; ++l) {
            t += d.probs[l] * at(l, resume).time;
            e += d.probs[l] * at(l, resume).energy;
          }
          Cell c{0.0, t, e, o};
          c.objective = value(objective_, c);
          if (!found || c.objective < best.objective) {
            best = c;
            found = true;
          }
        }
        trace_[i * slots_ + j] = best;
      }
    }
  }

  std::vector<ErasureProfile> profiles_;
  std::vector<double> powers_;
  double tp_;
  std::size_t n_data_;
  Objective objective_;
  OptionsFn options_;
  std::size_t slots_ = 0;
  std::vector<Cell> tail_;
  std::vector<Cell> trace_;
};

CodedPlan make_plan(const RoundEngine& engine, const std::vector<double>& powers,
                    std::size_t n_data, std::size_t j0) {
  CodedPlan plan;
  for (std::size_t i = 1; i <= n_data; ++i) {
    const auto& c = engine.at(i, j0);
    plan.rows.push_back({i, c.choice.ni, powers[c.choice.power_index], c.time, c.energy});
  }
  plan.minimum = engine.at(n_data, j0).objective;
  return plan;
}

std::vector<std::size_t> ni_candidates(std::size_t dof, std::size_t ni_max) {
  std::vector<std::size_t> out;
  for (std::size_t ni = std::min(dof, ni_max); ni <= ni_max; ++ni) out.push_back(ni);
  return out;
}

}  // namespace

double expected_time_coded(const ErasureProfile& profile, const RoundSchedule& schedule,
                           std::size_t n_data, double tp, std::size_t j0) {
  if (n_data == 0) return 0.0;
  if (schedule.ni_by_dof.size() < n_data + 1) {
    throw DomainError("expected_time_coded: schedule shorter than n_data");
  }
  for (std::size_t i = 1; i <= n_data; ++i) {
    if (schedule.at(i) < 1) throw DomainError("expected_time_coded: ni must be >= 1");
  }
  RoundEngine engine({profile}, {1.0}, tp, n_data, Objective::Time,
                     [&](std::size_t dof) { return std::vector<Option>{{schedule.at(dof), 0}}; });
  return engine.at(n_data, j0).time;
}

double expected_time_coded(const ErasureProfile& profile, const CodedConfig& config,
                           std::size_t j0) {
  config.validate();
  return expected_time_coded(profile, RoundSchedule::constant(config.ni, config.n_data),
                             config.n_data, config.tp, j0);
}

double energy_coded(const ErasureProfile& profile, const CodedConfig& config,
                    std::span<const double> powers, std::size_t j0) {
  config.validate();
  if (powers.size() != 1 && powers.size() != config.n_data) {
    throw DomainError("energy_coded: need one power or one per dof level");
  }
  for (double p : powers) {
    if (!(p > 0.0)) throw DomainError("energy_coded: powers must be > 0");
  }
  std::vector<double> levels(powers.begin(), powers.end());
  std::vector<ErasureProfile> profiles(levels.size(), profile);
  const bool per_dof = levels.size() > 1;
  RoundEngine engine(std::move(profiles), levels, config.tp, config.n_data, Objective::Energy,
                     [&](std::size_t dof) {
                       return std::vector<Option>{{config.ni, per_dof ? dof - 1 : 0}};
                     });
  return engine.at(config.n_data, j0).energy;
}

void CodedPlan::write_csv(std::ostream& os) const {
  os << "dof,ni_star,power,expected_seconds,expected_joules\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.11e,%.11e,%.11e\n", r.dof, r.ni_star, r.power,
                  r.expected_seconds, r.expected_joules);
    os << buf;
  }
}

CodedPlan optimize_ni(const ErasureProfile& profile, std::size_t n_data, double tp,
                      std::size_t ni_max, std::size_t j0, double power) {
  if (ni_max < 1) throw DomainError("optimize_ni: ni_max must be >= 1");
  if (n_data < 1) throw DomainError("optimize_ni: n_data must be >= 1");
  RoundEngine engine({profile}, {power}, tp, n_data, Objective::Time, [&](std::size_t dof) {
    std::vector<Option> out;
    for (std::size_t ni : ni_candidates(dof, ni_max)) out.push_back({ni, 0});
    return out;
  });
  return make_plan(engine, {power}, n_data, j0);
}

CodedPlan optimize_energy(const ProfileForPower& profile_for_power, std::size_t n_data, double tp,
                          std::span<const double> power_grid, std::size_t ni_max, std::size_t j0) {
  if (power_grid.empty()) throw DomainError("optimize_energy: empty power grid");
  if (ni_max < 1) throw DomainError("optimize_energy: ni_max must be >= 1");
  if (n_data < 1) throw DomainError("optimize_energy: n_data must be >= 1");
  std::vector<double> powers(power_grid.begin(), power_grid.end());
  for (double p : powers) {
    if (!(p > 0.0)) throw DomainError("optimize_energy: powers must be > 0");
  }
  std::sort(powers.begin(), powers.end());
  std::vector<ErasureProfile> profiles;
  profiles.reserve(powers.size());
  for (double p : powers) profiles.push_back(profile_for_power(p));

  RoundEngine engine(std::move(profiles), powers, tp, n_data, Objective::Energy,
                     [&](std::size_t dof) {
                       std::vector<Option> out;
                       for (std::size_t ni : ni_candidates(dof, ni_max)) {
                         for (std::size_t k = 0; k < powers.size(); ++k) out.push_back({ni, k});
                       }
                       return out;
                     });
  return make_plan(engine, powers, n_data, j0);
}

}  // namespace lnfade

#include "lnfade/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ios>
#include <limits>
#include <numbers>
#include <sstream>

#include "lnfade/csv.hpp"
#include "lnfade/errors.hpp"

namespace lnfade {

using nlohmann::json;

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Fig2: return "fig2";
    case ExperimentKind::Fig3: return "fig3";
    case ExperimentKind::Fig4: return "fig4";
    case ExperimentKind::Custom: return "custom";
  }
  return "custom";
}

namespace {

std::string join_messages(const std::vector<Violation>& v) {
  std::string out = "spec validation failed:";
  for (const auto& x : v) out += "\n  " + x.field + ": " + x.message;
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> v)
    : std::runtime_error(join_messages(v)), violations(std::move(v)) {}

namespace {

// Typed access to dotted paths in the spec document; failures become
// violations instead of exceptions so every problem is reported.
class SpecReader {
 public:
  SpecReader(const json& doc, std::vector<Violation>& out) : doc_(doc), out_(out) {}

  const json* find(const std::string& path) const {
    const json* node = &doc_;
    for (const auto& key : split_path(path)) {
      if (!node->is_object()) return nullptr;
      const auto it = node->find(key);
      if (it == node->end()) return nullptr;
      node = &*it;
    }
    return node;
  }

  bool has(const std::string& path) const { return find(path) != nullptr; }

  void number(const std::string& path, double& target) {
    if (const json* n = find(path)) {
      if (n->is_number()) {
        target = n->get<double>();
      } else {
        out_.push_back({path, "expected a number"});
      }
    }
  }

  template <typename Int>
  void count(const std::string& path, Int& target) {
    if (const json* n = find(path)) {
      if (n->is_number_integer() && n->get<long long>() >= 0) {
        target = static_cast<Int>(n->get<long long>());
      } else if (n->is_number_float() && n->get<double>() >= 0.0 &&
                 n->get<double>() == std::floor(n->get<double>())) {
        target = static_cast<Int>(n->get<double>());
      } else {
        out_.push_back({path, "expected a non-negative integer"});
      }
    }
  }

  void boolean(const std::string& path, bool& target) {
    if (const json* n = find(path)) {
      if (n->is_boolean()) {
        target = n->get<bool>();
      } else {
        out_.push_back({path, "expected true or false"});
      }
    }
  }

  bool string(const std::string& path, std::string& target) {
    if (const json* n = find(path)) {
      if (n->is_string()) {
        target = n->get<std::string>();
        return true;
      }
      out_.push_back({path, "expected a string"});
    }
    return false;
  }

  void numbers(const std::string& path, std::vector<double>& target) {
    if (const json* n = find(path)) {
      if (!n->is_array()) {
        out_.push_back({path, "expected an array of numbers"});
        return;
      }
      target.clear();
      for (const auto& v : *n) {
        if (!v.is_number()) {
          out_.push_back({path, "expected an array of numbers"});
          return;
        }
        target.push_back(v.get<double>());
      }
    }
  }

  void violation(std::string field, std::string message) {
    out_.push_back({std::move(field), std::move(message)});
  }

 private:
  static std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> keys;
    std::string cur;
    for (char c : path) {
      if (c == '.') {
        keys.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    keys.push_back(cur);
    return keys;
  }

  const json& doc_;
  std::vector<Violation>& out_;
};

const std::vector<double> kDefaultGrid = {0, 5, 10, 15, 20, 25, 30};

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

ExperimentSpec parse_spec(const json& doc, std::vector<Violation>& violations) {
  ExperimentSpec spec;
  SpecReader in(doc, violations);
  if (!doc.is_object()) {
    in.violation("spec", "top level must be an object");
    return spec;
  }

  std::string name = "custom";
  in.string("experiment", name);
  if (name == "fig2") {
    spec.kind = ExperimentKind::Fig2;
  } else if (name == "fig3") {
    spec.kind = ExperimentKind::Fig3;
  } else if (name == "fig4") {
    spec.kind = ExperimentKind::Fig4;
  } else if (name == "custom") {
    spec.kind = ExperimentKind::Custom;
  } else {
    in.violation("experiment", "must be one of fig2, fig3, fig4, custom");
  }
  in.boolean("allow_override", spec.allow_override);

  SimConfig& sim = spec.sim;
  sim.tp = FigureParams::tp;
  sim.n_data = FigureParams::n_data;
  sim.channel = {FigureParams::m, FigureParams::sigma};
  sim.budget.bits = FigureParams::bits;
  sim.budget.rate = 1.0;
  sim.policy.kind = PolicyKind::Fixed;
  sim.policy.pt = FigureParams::pt;
  spec.snr_db = kDefaultGrid;

  in.number("channel.m", sim.channel.m);
  in.number("channel.sigma", sim.channel.sigma);
  if (in.has("channel.a1")) {
    in.number("channel.a1", sim.a1);
  } else if (in.has("channel.fd")) {
    double fd = 0.0;
    in.number("channel.fd", fd);
    sim.a1 = std::exp(-2.0 * std::numbers::pi * fd * sim.tp);
  } else {
    in.violation("Ar1Params.a1", "required: set channel.a1 (or channel.fd)");
  }

  in.count("link.bits", sim.budget.bits);
  in.number("link.rate", sim.budget.rate);
  std::string orientation = "ratio";
  if (in.string("link.orientation", orientation)) {
    if (orientation == "ratio") {
      sim.orientation = BerOrientation::Ratio;
    } else if (orientation == "product") {
      sim.orientation = BerOrientation::Product;
    } else {
      in.violation("link.orientation", "must be ratio or product");
    }
  }

  std::string policy = "fixed";
  in.string("policy.type", policy);
  in.number("policy.pt", sim.policy.pt);
  if (policy == "fixed") {
    sim.policy.kind = PolicyKind::Fixed;
  } else if (policy == "adaptive") {
    sim.policy.kind = PolicyKind::Adaptive;
    sim.policy.pt_max = std::numeric_limits<double>::quiet_NaN();
    sim.policy.p_out = std::numeric_limits<double>::quiet_NaN();
    if (!in.has("policy.p_out")) in.violation("PowerPolicy.p_out", "required for the adaptive policy");
    if (!in.has("policy.pt_max")) in.violation("PowerPolicy.pt_max", "required for the adaptive policy");
    in.number("policy.p_out", sim.policy.p_out);
    in.number("policy.pt_max", sim.policy.pt_max);
  } else {
    in.violation("policy.type", "must be fixed or adaptive");
  }

  std::string scheme = "uncoded";
  in.string("scheme.type", scheme);
  if (scheme == "uncoded") {
    sim.scheme = Scheme::Uncoded;
  } else if (scheme == "coded") {
    sim.scheme = Scheme::Coded;
  } else {
    in.violation("scheme.type", "must be uncoded or coded");
  }
  in.count("scheme.ni", sim.ni);
  in.count("scheme.ni_max", sim.ni_max);
  in.count("scheme.block_size", sim.block_size);

  in.count("simulation.n_data", sim.n_data);
  in.number("simulation.tp", sim.tp);
  in.count("simulation.episodes", sim.episodes);
  in.count("simulation.seed", sim.seed);
  in.count("simulation.slot_cap", sim.slot_cap);
  in.numbers("simulation.snr_db", spec.snr_db);

  in.boolean("analytic.enabled", spec.analytic);
  in.number("analytic.rho", spec.rho);
  in.count("analytic.profile_slots", spec.profile_slots);
  in.count("analytic.profile_seed", spec.profile_seed);
  in.string("output", spec.output);
  return spec;
}

std::vector<Violation> validate_spec(const ExperimentSpec& spec) {
  std::vector<Violation> v;
  const SimConfig& s = spec.sim;
  auto bad = [&](std::string field, std::string message) {
    v.push_back({std::move(field), std::move(message)});
  };

  if (!(s.channel.sigma > 0.0) || !std::isfinite(s.channel.sigma)) {
    bad("LognormalParams.sigma", "must be > 0");
  }
  if (!std::isfinite(s.channel.m)) bad("LognormalParams.m", "must be finite");
  if (!(s.a1 >= 0.0 && s.a1 <= 1.0)) bad("Ar1Params.a1", "must lie in [0, 1]");

  if (!(s.policy.pt > 0.0)) bad("PowerPolicy.pt", "must be > 0");
  if (s.policy.kind == PolicyKind::Adaptive) {
    if (!(s.policy.p_out > 0.0 && s.policy.p_out < 1.0) && !std::isnan(s.policy.p_out)) {
      bad("PowerPolicy.p_out", "must lie in (0, 1)");
    }
    if (!(s.policy.pt_max >= s.policy.pt) && !std::isnan(s.policy.pt_max)) {
      bad("PowerPolicy.pt_max", "must be >= pt");
    }
  }

  if (s.budget.bits < 1) bad("LinkBudget.bits", "must be >= 1");
  if (!(s.budget.rate > 0.0)) bad("LinkBudget.rate", "must be > 0");

  if (s.n_data < 1) bad("SimConfig.n_data", "must be >= 1");
  if (!(s.tp > 0.0)) bad("SimConfig.tp", "must be > 0");
  if (s.episodes < 1) bad("SimConfig.episodes", "must be >= 1");
  if (s.slot_cap < 1) bad("SimConfig.slot_cap", "must be >= 1");
  if (s.scheme == Scheme::Coded || spec.analytic) {
    if (s.ni_max < 1) bad("CodedConfig.ni_max", "must be >= 1");
    if (s.ni > 0 && s.ni_max < s.ni) bad("CodedConfig.ni_max", "must be >= ni");
  }

  if (spec.snr_db.empty()) bad("ExperimentSpec.snr_db", "grid must not be empty");
  for (double db : spec.snr_db) {
    if (!std::isfinite(db)) {
      bad("ExperimentSpec.snr_db", "grid values must be finite");
      break;
    }
  }
  if (!(std::abs(spec.rho) < 1.0)) bad("ExperimentSpec.rho", "must satisfy |rho| < 1");
  if (spec.profile_slots < 1) bad("ExperimentSpec.profile_slots", "must be >= 1");
  if (spec.output.empty()) bad("ExperimentSpec.output", "must not be empty");

  if (spec.kind != ExperimentKind::Custom && !spec.allow_override) {
    const std::string fig = to_string(spec.kind);
    auto pin = [&](const char* field, double actual, double pinned) {
      if (!same(actual, pinned)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "pinned to %.10g for %s (set allow_override to change)",
                      pinned, fig.c_str());
        bad(field, buf);
      }
    };
    pin("SimConfig.tp", s.tp, FigureParams::tp);
    pin("PowerPolicy.pt", s.policy.pt, FigureParams::pt);
    pin("LognormalParams.m", s.channel.m, FigureParams::m);
    pin("LognormalParams.sigma", s.channel.sigma, FigureParams::sigma);
    pin("ExperimentSpec.rho", spec.rho, FigureParams::rho);
  }
  return v;
}

std::vector<Violation> validate_file(const std::filesystem::path& path, ExperimentSpec* out) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read spec file " + path.string());
  std::vector<Violation> v;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    v.push_back({"spec", std::string("malformed JSON: ") + e.what()});
    return v;
  }
  ExperimentSpec spec = parse_spec(doc, v);
  auto more = validate_spec(spec);
  v.insert(v.end(), more.begin(), more.end());
  if (out) *out = std::move(spec);
  return v;
}

std::vector<SimConfig> expand_series(const ExperimentSpec& spec) {
  SimConfig base = spec.sim;
  if (base.policy.kind == PolicyKind::Adaptive) {
    base.policy = PowerPolicy::adaptive(base.policy.pt, base.policy.pt_max, base.policy.p_out,
                                        base.channel);
  }
  if (spec.kind == ExperimentKind::Custom) return {base};

  SimConfig independent = base;
  independent.a1 = 0.0;
  independent.scheme = Scheme::Uncoded;
  SimConfig dependent = base;
  dependent.scheme = Scheme::Uncoded;
  SimConfig coded = base;
  coded.scheme = Scheme::Coded;
  return {independent, dependent, coded};
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot write " + path.string());
  return os;
}

void close_output(std::ofstream& os, const std::filesystem::path& path) {
  os.close();
  if (!os) throw std::ios_base::failure("failed writing " + path.string());
}

}  // namespace

std::vector<std::string> describe(const ExperimentSpec& spec) {
  const SimConfig& s = spec.sim;
  std::vector<std::string> lines;
  lines.push_back("experiment = " + to_string(spec.kind));
  lines.push_back("allow_override = " + std::string(spec.allow_override ? "true" : "false"));
  lines.push_back("channel.m = " + num(s.channel.m));
  lines.push_back("channel.sigma = " + num(s.channel.sigma));
  lines.push_back("channel.a1 = " + num(s.a1));
  lines.push_back("link.bits = " + std::to_string(s.budget.bits));
  lines.push_back("link.rate = " + num(s.budget.rate));
  lines.push_back(std::string("link.orientation = ") +
                  (s.orientation == BerOrientation::Ratio ? "ratio" : "product"));
  lines.push_back("policy.type = " + to_string(s.policy.kind));
  lines.push_back("policy.pt = " + num(s.policy.pt));
  if (s.policy.kind == PolicyKind::Adaptive) {
    lines.push_back("policy.pt_max = " + num(s.policy.pt_max));
    lines.push_back("policy.p_out = " + num(s.policy.p_out));
  }
  lines.push_back("scheme.type = " + to_string(s.scheme));
  lines.push_back("scheme.ni = " + std::to_string(s.ni) + (s.ni == 0 ? " (optimized)" : ""));
  lines.push_back("scheme.ni_max = " + std::to_string(s.ni_max));
  lines.push_back("scheme.block_size = " + std::to_string(s.block()));
  lines.push_back("simulation.n_data = " + std::to_string(s.n_data));
  lines.push_back("simulation.tp = " + num(s.tp));
  lines.push_back("simulation.episodes = " + std::to_string(s.episodes));
  lines.push_back("simulation.seed = " + std::to_string(s.seed));
  lines.push_back("simulation.slot_cap = " + std::to_string(s.slot_cap));
  std::string grid;
  for (double db : spec.snr_db) grid += (grid.empty() ? "" : " ") + short_num(db);
  lines.push_back("simulation.snr_db = " + grid);
  lines.push_back("analytic.enabled = " + std::string(spec.analytic ? "true" : "false"));
  lines.push_back("analytic.rho = " + num(spec.rho));
  lines.push_back("analytic.profile_slots = " + std::to_string(spec.profile_slots));
  lines.push_back("analytic.profile_seed = " + std::to_string(spec.profile_seed));
  return lines;
}

RunOutput run_experiment(const ExperimentSpec& spec) {
  auto violations = validate_spec(spec);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  const auto series = expand_series(spec);
  const auto comments = describe(spec);
  const std::filesystem::path out_path(spec.output);
  const std::filesystem::path stem = out_path.parent_path() / out_path.stem();
  RunOutput result;

  std::vector<SweepRow> rows;
  for (const SimConfig& cfg : series) {
    const auto part = sweep(cfg, spec.snr_db);
    for (const auto& r : part) {
      char buf[256];
      std::snprintf(buf, sizeof buf,
                    "snr_db=%g scheme=%s policy=%s a1=%g throughput=%.4f time=%.6f erasure=%.4f "
                    "energy=%.6f",
                    r.snr_db, to_string(r.scheme).c_str(), to_string(r.policy).c_str(), r.a1,
                    r.throughput.mean, r.time.mean, r.erasure.mean, r.energy.mean);
      result.summary.emplace_back(buf);
    }
    rows.insert(rows.end(), part.begin(), part.end());
  }
  {
    auto os = open_output(out_path);
    write_comment_lines(os, comments);
    write_sweep_csv(os, rows);
    close_output(os, out_path);
    result.files.push_back(out_path);
  }
  if (!spec.analytic) return result;

  // Analytic companions for every distinct channel correlation in the series.
  std::vector<double> a1_values;
  for (const auto& cfg : series) {
    if (std::find(a1_values.begin(), a1_values.end(), cfg.a1) == a1_values.end()) {
      a1_values.push_back(cfg.a1);
    }
  }
  const SimConfig& base = series.front();
  const CorrelationMatrix joint = CorrelationMatrix::equicorrelated(2, spec.rho);

  std::ostringstream analytic;
  analytic << kAnalyticCsvHeader << '\n';
  for (double a1 : a1_values) {
    const Ar1Params ar1 = Ar1Params::from_coefficient(a1, base.tp);
    const ChannelTrace trace =
        gen_ar1_trace(base.channel, ar1, spec.profile_slots, spec.profile_seed);
    for (double db : spec.snr_db) {
      const LinkBudget budget =
          LinkBudget::from_snr_db(db, base.policy.pt, base.budget.rate, base.budget.bits);
      const ErasureProfile profile =
          erasure_profile_from_trace(trace, budget, base.policy, base.channel, base.orientation);
      const DelayTable table = expected_time_uncoded(profile, base.n_data, base.tp);
      const CodedPlan plan =
          optimize_ni(profile, base.n_data, base.tp, base.ni_max, 0, base.policy.pt);

      // Q-argument gain at the median channel: h / SNR under fixed power,
      // h_out N0 R / Pt under inversion.
      double g = 0.0;
      if (base.policy.kind == PolicyKind::Fixed) {
        g = base.orientation == BerOrientation::Ratio ? std::exp(base.channel.m) / budget.snr
                                                      : std::exp(base.channel.m) * budget.snr;
      } else {
        g = base.policy.h_out * budget.n0 * budget.rate / base.policy.pt;
      }
      const std::vector<double> single{g};
      const std::vector<double> pair{g, g};
      const double pb_single =
          ber_correlated(single, CorrelationMatrix::identity(1), base.channel).value;
      const double pb_joint = ber_correlated(pair, joint, base.channel).value;

      char buf[512];
      std::snprintf(buf, sizeof buf, "%g,%g,%.11e,%.11e,%.11e,%zu,%.11e,%.11e\n", db, a1,
                    mean_erasure(base.policy, budget, base.channel, base.orientation),
                    table.at(base.n_data, 0), plan.minimum, plan.rows.back().ni_star, pb_single,
                    pb_joint);
      analytic << buf;

      const std::string tag = "_a" + short_num(a1) + "_snr" + short_num(db) + ".csv";
      const std::filesystem::path delay_path = stem.string() + "_delay" + tag;
      const std::filesystem::path coding_path = stem.string() + "_coding" + tag;
      auto ds = open_output(delay_path);
      write_comment_lines(ds, comments);
      table.write_csv(ds);
      close_output(ds, delay_path);
      auto cs = open_output(coding_path);
      write_comment_lines(cs, comments);
      plan.write_csv(cs);
      close_output(cs, coding_path);
      result.files.push_back(delay_path);
      result.files.push_back(coding_path);
    }
  }
  const std::filesystem::path analytic_path = stem.string() + "_analytic.csv";
  auto as = open_output(analytic_path);
  write_comment_lines(as, comments);
  as << analytic.str();
  close_output(as, analytic_path);
  result.files.push_back(analytic_path);
  return result;
}

}  // namespace lnfade

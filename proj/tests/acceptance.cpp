// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lnfade/coding.hpp"
#include "lnfade/delay.hpp"
#include "lnfade/experiment.hpp"
#include "lnfade/mcsim.hpp"
#include "lnfade/precode.hpp"
#include "oracles.hpp"

using namespace lnfade;
namespace fs = std::filesystem;

namespace {

constexpr double kTp = FigureParams::tp;
const LognormalParams kFig{FigureParams::m, FigureParams::sigma};

// Tolerances and sizes fixed by the acceptance criteria.
constexpr std::size_t kEpisodesSweep = 10'000;
constexpr std::size_t kEpisodesAnalytic = 100'000;
constexpr double kSe = 3.0;
constexpr double kSaturationLow = 147.0;
constexpr double kSaturationHigh = 150.0;
constexpr double kSaturationSeconds = 60.0;
constexpr double kMonotoneSeconds = 300.0;
constexpr double kKneeFactor = 2.0;
constexpr double kClosedFormTol = 1e-9;
constexpr double kPathTol = 1e-8;
constexpr double kPatternTol = 1e-12;
constexpr double kOrthantTol = 1e-5;
constexpr double kFactorTol = 1e-6;
constexpr double kA1Tol = 0.02;
constexpr double kMeanSe = 4.0;
constexpr double kPdfTol = 1e-6;
constexpr double kOutageTol = 1e-9;
constexpr double kPrecodeTol = 1e-8;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
  void note(const std::string& text) {
    if (pass) detail += (detail.empty() ? "" : "; ") + text;
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SimConfig figure_config(double a1, Scheme scheme, const PowerPolicy& policy, std::size_t episodes) {
  SimConfig c;
  c.n_data = FigureParams::n_data;
  c.tp = kTp;
  c.channel = kFig;
  c.budget.bits = FigureParams::bits;
  c.a1 = a1;
  c.scheme = scheme;
  c.policy = policy;
  c.episodes = episodes;
  c.seed = 2024;
  return c;
}

// 1 -----------------------------------------------------------------------
Outcome throughput_saturation() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (double a1 : {0.0, 0.9}) {
    const auto c = figure_config(a1, Scheme::Uncoded, PowerPolicy::fixed(FigureParams::pt),
                                 kEpisodesSweep);
    const std::vector<double> grid{60.0};
    const auto row = sweep(c, grid).front();
    o.require(row.throughput.mean >= kSaturationLow && row.throughput.mean <= kSaturationHigh,
              fmt("a1=%g throughput %.4f outside [147, 150]", a1, row.throughput.mean));
    o.note(fmt("a1=%g throughput %.4f", a1, row.throughput.mean));
  }
  const double secs = seconds_since(t0);
  o.require(secs <= kSaturationSeconds, fmt("runtime %.1f s", secs));
  o.note(fmt("%.2f s", secs));
  return o;
}

// 2 -----------------------------------------------------------------------
Outcome monotone_snr() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> grid{0, 5, 10, 15, 20, 30};
  const std::vector<PowerPolicy> policies{PowerPolicy::fixed(FigureParams::pt),
                                          PowerPolicy::adaptive(FigureParams::pt, 10.0, 0.01, kFig)};
  int curves = 0;
  for (const auto& pol : policies) {
    for (double a1 : {0.0, 0.9}) {
      for (auto scheme : {Scheme::Uncoded, Scheme::Coded}) {
        const auto rows = sweep(figure_config(a1, scheme, pol, kEpisodesSweep), grid);
        ++curves;
        for (std::size_t k = 1; k < rows.size(); ++k) {
          const auto& a = rows[k - 1];
          const auto& b = rows[k];
          const double se_t = std::hypot(a.throughput.se, b.throughput.se);
          const double se_e = std::hypot(a.erasure.se, b.erasure.se);
          const std::string tag = to_string(pol.kind) + "/" + to_string(scheme) +
                                  fmt(" a1=%g %g->%g dB", a1, a.snr_db, b.snr_db);
          o.require(b.throughput.mean >= a.throughput.mean - kSe * se_t, tag + " throughput");
          o.require(b.erasure.mean <= a.erasure.mean + kSe * se_e, tag + " erasure");
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs <= kMonotoneSeconds, fmt("runtime %.1f s", secs));
  o.note(fmt("%g curves x 6 points, %.2f s", curves, secs));
  return o;
}

// 3 -----------------------------------------------------------------------
Outcome dependent_delay() {
  Outcome o;
  const auto pol = PowerPolicy::fixed(FigureParams::pt);
  auto ind = figure_config(0.0, Scheme::Uncoded, pol, kEpisodesSweep);
  auto dep = figure_config(0.9, Scheme::Uncoded, pol, kEpisodesSweep);
  ind.budget = dep.budget = LinkBudget::from_snr_db(5.0, FigureParams::pt, 1.0, FigureParams::bits);
  const Simulator si(ind);
  const Simulator sd(dep);
  std::vector<double> diff(kEpisodesSweep);
  double mi = 0.0, md = 0.0;
  for (std::size_t e = 0; e < kEpisodesSweep; ++e) {
    const double ti = si.run_episode(e).delivery_time;
    const double td = sd.run_episode(e).delivery_time;
    diff[e] = td - ti;
    mi += ti;
    md += td;
  }
  const auto s = summarize(diff);
  o.require(s.mean >= -kSe * s.se, fmt("dependent - independent = %.3g (se %.3g)", s.mean, s.se));
  o.note(fmt("independent %.5f s, dependent %.5f s, paired se %.2g", mi / kEpisodesSweep,
             md / kEpisodesSweep, s.se));
  return o;
}

// 4 -----------------------------------------------------------------------
Outcome knee() {
  Outcome o;
  const auto pol = PowerPolicy::fixed(FigureParams::pt);
  const auto b0 = LinkBudget::from_snr_db(0.0, FigureParams::pt, 1.0, FigureParams::bits);
  const auto b10 = LinkBudget::from_snr_db(10.0, FigureParams::pt, 1.0, FigureParams::bits);
  const double e0 = mean_erasure(pol, b0, kFig);
  const double e10 = mean_erasure(pol, b10, kFig);
  o.require(e0 >= kKneeFactor * e10, fmt("analytic erasure 0 dB %.4f vs 10 dB %.4f", e0, e10));
  const std::vector<double> grid{0.0, 10.0};
  const auto rows = sweep(figure_config(0.9, Scheme::Uncoded, pol, kEpisodesSweep), grid);
  const double m0 = rows[0].erasure.mean;
  const double m10 = rows[1].erasure.mean;
  o.require(m0 >= kKneeFactor * m10, fmt("simulated erasure 0 dB %.4f vs 10 dB %.4f", m0, m10));
  o.note(fmt("analytic %.4f -> %.4f (x%.2f)", e0, e10, e0 / e10));
  o.note(fmt("simulated %.4f -> %.4f (x%.2f)", m0, m10, m0 / m10));
  return o;
}

// 5 -----------------------------------------------------------------------
Outcome analytic_equivalence() {
  Outcome o;
  double worst_closed = 0.0;
  for (double pe : {0.0, 0.1, 0.5, 0.9}) {
    ErasureProfile p;
    p.pe.assign(5, pe);
    p.tail = pe;
    const auto t = expected_time_uncoded(p, 10, kTp);
    for (std::size_t i = 1; i <= 10; ++i) {
      worst_closed = std::max(worst_closed, std::abs(t.at(i, 0) - i * kTp / (1.0 - pe)));
    }
  }
  o.require(worst_closed <= kClosedFormTol, fmt("closed form error %.3g", worst_closed));

  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(0.0, 0.7);
  double worst_path = 0.0;
  double worst_cut = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int len = 1; len <= 5; ++len) {
      ErasureProfile p;
      p.pe.resize(len);
      for (double& v : p.pe) v = u(rng);
      p.tail = u(rng);
      double cut = 0.0;
      const double ref = oracle::uncoded_paths(p.pe, p.tail, n, 1.0, 100, &cut);
      worst_cut = std::max(worst_cut, cut);
      worst_path = std::max(worst_path, std::abs(expected_time_uncoded(p, n, 1.0).at(n, 0) - ref));
    }
  }
  o.require(worst_path <= kPathTol, fmt("path enumeration error %.3g", worst_path));

  double worst_pattern = 0.0;
  for (int ni = 1; ni <= 12; ++ni) {
    for (int i = 1; i <= ni; ++i) {
      std::vector<double> slice(ni);
      for (double& v : slice) v = u(rng);
      const auto got = round_success_distribution(slice, i);
      const auto want = oracle::dof_by_patterns(slice, i);
      for (int l = 0; l <= i; ++l) {
        worst_pattern = std::max(worst_pattern, std::abs(got.probs[l] - want[l]));
      }
    }
  }
  o.require(worst_pattern <= kPatternTol, fmt("pattern enumeration error %.3g", worst_pattern));

  // Monte Carlo: uncoded on a trace-aligned profile and coded on constants.
  const auto trace = gen_ar1_trace(kFig, Ar1Params::from_coefficient(0.9, kTp), 40, 3);
  const auto budget = LinkBudget::from_snr_db(5.0, 1.0, 1.0, FigureParams::bits);
  const auto profile = erasure_profile_from_trace(trace, budget, PowerPolicy::fixed(1.0), kFig);
  double worst_z = 0.0;
  auto compare = [&](SimConfig c, double analytic) {
    c.episodes = kEpisodesAnalytic;
    const Simulator sim(c);
    std::vector<double> t(kEpisodesAnalytic);
    for (std::size_t e = 0; e < kEpisodesAnalytic; ++e) t[e] = sim.run_episode(e).delivery_time;
    const auto s = summarize(t);
    worst_z = std::max(worst_z, std::abs(s.mean - analytic) / s.se);
  };
  for (std::size_t n : {1u, 3u, 5u}) {
    SimConfig c = figure_config(0.9, Scheme::Uncoded, PowerPolicy::fixed(1.0), 1);
    c.n_data = n;
    c.forced_erasure = profile;
    compare(c, expected_time_uncoded(profile, n, kTp).at(n, 0));
  }
  for (double pe : {0.1, 0.5}) {
    for (std::size_t n : {2u, 4u}) {
      SimConfig c = figure_config(0.9, Scheme::Coded, PowerPolicy::fixed(1.0), 1);
      c.n_data = n;
      c.ni = n + 1;
      c.ni_max = n + 1;
      c.forced_erasure = ErasureProfile::constant(pe);
      compare(c, expected_time_coded(ErasureProfile::constant(pe), CodedConfig{n, n + 1, kTp, n + 1}));
    }
  }
  o.require(worst_z <= kSe, fmt("Monte Carlo deviation %.2f se", worst_z));
  o.note(fmt("closed form %.2g, paths %.2g (cut mass %.1g)", worst_closed, worst_path, worst_cut));
  o.note(fmt("patterns %.2g, Monte Carlo worst %.2f se", worst_pattern, worst_z));
  return o;
}

// 6 -----------------------------------------------------------------------
Outcome q_suite() {
  Outcome o;
  o.require(q_function(0.0) == 0.5, "Q(0) != 0.5");
  double worst_orthant = 0.0;
  for (double rho : {-0.5, 0.0, 0.2, 0.5, 0.9}) {
    const double exact = 0.25 + std::asin(rho) / (2.0 * std::numbers::pi);
    worst_orthant = std::max(worst_orthant, std::abs(q2(0.0, 0.0, rho) - exact));
  }
  o.require(worst_orthant <= kOrthantTol, fmt("orthant error %.3g", worst_orthant));
  double worst_factor = 0.0;
  for (double x1 = -2.0; x1 <= 2.0; x1 += 1.0) {
    for (double x2 = -2.0; x2 <= 2.0; x2 += 1.0) {
      worst_factor =
          std::max(worst_factor, std::abs(q2(x1, x2, 0.0) - q_function(x1) * q_function(x2)));
    }
  }
  o.require(worst_factor <= kFactorTol, fmt("factorization error %.3g", worst_factor));
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> ux(-1.5, 1.5);
  std::uniform_real_distribution<double> ur(-0.9, 0.9);
  double worst_z = 0.0;
  for (int k = 0; k < 10; ++k) {
    const std::vector<double> x{ux(rng), ux(rng)};
    const double rho = ur(rng);
    const auto e = qn(x, CorrelationMatrix::equicorrelated(2, rho), 300 + k, 1'000'000);
    worst_z = std::max(worst_z, std::abs(e.value - q2(x[0], x[1], rho)) / e.std_error);
  }
  o.require(worst_z <= kSe, fmt("qn vs q2 worst %.2f se", worst_z));
  o.note(fmt("orthant %.2g, factorization %.2g, qn worst %.2f se", worst_orthant, worst_factor,
             worst_z));
  return o;
}

// 7 -----------------------------------------------------------------------
Outcome channel_statistics() {
  Outcome o;
  std::string seen;
  for (double a1 : {0.0, 0.3679, 0.9}) {
    const auto t = gen_ar1_trace(kFig, Ar1Params::from_coefficient(a1, kTp), 100'000, 77);
    const double est = estimate_a1(t);
    o.require(std::abs(est - a1) <= kA1Tol, fmt("a1 %g estimated %.4f", a1, est));
    double mean = 0.0;
    for (double h : t.gains) mean += std::log(h);
    mean /= t.gains.size();
    double var = 0.0;
    for (double h : t.gains) var += (std::log(h) - mean) * (std::log(h) - mean);
    var /= t.gains.size() - 1;
    const double se = std::sqrt(var / t.gains.size() * (1.0 + a1) / (1.0 - a1));
    o.require(std::abs(mean - kFig.m) <= kMeanSe * se,
              fmt("a1 %g log mean %.4f (se %.4f)", a1, mean, se));
    seen += fmt(" %.4f", est);
  }
  const int n = 200'000;
  const double a = std::log(1e-6);
  const double du = (std::log(1e3) - a) / n;
  double mass = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double h = std::exp(a + k * du);
    mass += (k == 0 || k == n ? 0.5 : 1.0) * lognormal_pdf(h, kFig) * h;
  }
  mass *= du;
  o.require(std::abs(mass - 1.0) <= kPdfTol, fmt("pdf mass %.9f", mass));
  o.note("a1 estimates" + seen + fmt("; pdf mass - 1 = %.2g", mass - 1.0));
  return o;
}

// 8 -----------------------------------------------------------------------
Outcome outage_contracts() {
  Outcome o;
  double worst = 0.0;
  for (double p : {0.01, 0.1, 0.5}) {
    const double h = outage_threshold(p, kFig);
    worst = std::max(worst, std::abs(q_function((kFig.m - std::log(h)) / kFig.sigma) - p));
  }
  o.require(worst <= kOutageTol, fmt("outage round trip %.3g", worst));
  const auto pol = PowerPolicy::adaptive(1.0, 10.0, 0.05, kFig);
  const double cutoff = pol.pt * pol.h_out / pol.pt_max;
  o.require(effective_power(pol.h_out, pol) == pol.pt, "power at h_out differs from pt");
  o.require(effective_power(cutoff * (1.0 - 1e-12), pol) == 0.0, "power beyond cutoff not 0");
  o.require(effective_power(pol.h_out / 1000.0, pol) == 0.0, "power deep in outage not 0");
  o.require(effective_power(cutoff, pol) > 0.0, "boundary gain is silent");
  const auto b = LinkBudget::from_snr_db(5.0, 1.0, 1.0, FigureParams::bits);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> g(cutoff, 100.0);
  const double ref = slot_link(pol.h_out, pol, b, kFig).erasure;
  const double ber = ber_adaptive(pol, b, kFig);
  bool same = true;
  for (int k = 0; k < 100; ++k) {
    const double h = g(rng);
    same = same && slot_link(h, pol, b, kFig).erasure == ref && ber_adaptive(pol, b, kFig) == ber;
  }
  o.require(same, "adaptive BER varies with the channel");
  o.note(fmt("round trip %.2g; cutoff h = %.4g", worst, cutoff));
  return o;
}

// 9 -----------------------------------------------------------------------
Outcome optimizers() {
  Outcome o;
  int cases = 0;
  for (double pe : {0.05, 0.3, 0.6, 0.85}) {
    for (std::size_t n : {1u, 2u}) {
      const std::size_t ni_max = n == 1 ? 8 : 4;
      const auto profile = ErasureProfile::constant(pe);
      RoundSchedule s;
      s.ni_by_dof.assign(n + 1, 0);
      double best = std::numeric_limits<double>::infinity();
      std::vector<std::size_t> arg;
      std::size_t count = 0;
      std::function<void(std::size_t)> rec = [&](std::size_t dof) {
        if (dof > n) {
          ++count;
          const double t = expected_time_coded(profile, s, n, kTp);
          if (t < best) {
            best = t;
            arg = s.ni_by_dof;
          }
          return;
        }
        for (std::size_t ni = dof; ni <= ni_max; ++ni) {
          s.ni_by_dof[dof] = ni;
          rec(dof + 1);
        }
      };
      rec(1);
      const auto plan = optimize_ni(profile, n, kTp, ni_max);
      bool match = count <= 16 && plan.minimum == best;
      for (const auto& r : plan.rows) match = match && r.ni_star == arg[r.dof];
      o.require(match, fmt("optimize_ni pe=%g n=%g", pe, static_cast<double>(n)));
      ++cases;
    }
  }

  const std::vector<double> grid{1.0, 3.0};
  for (double snr0 : {3.0, 5.0, 20.0}) {
    const auto gen = [=](double power) {
      LinkBudget b;
      b.snr = snr0 * power;
      b.n0 = 1.0 / b.snr;
      b.bits = FigureParams::bits;
      return ErasureProfile::constant(packet_erasure(ber_fixed(1.0, b, kFig), b.bits));
    };
    // N = 2, ni_max = 2: dof 2 has 2 options, dof 1 has 4, 8 plans in all.
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_ni1 = 0;
    double best_p1 = 0.0, best_p2 = 0.0;
    for (double p2 : grid) {
      for (std::size_t ni1 = 1; ni1 <= 2; ++ni1) {
        for (double p1 : grid) {
          const double e = oracle::coded_tree_energy(
              [&](int dof) { return gen(dof == 2 ? p2 : p1).tail; },
              [&](int dof) { return dof == 2 ? 2 : static_cast<int>(ni1); },
              [&](int dof) { return dof == 2 ? p2 : p1; }, 2, kTp, 600);
          if (e < best * (1.0 - 1e-9)) {
            best = e;
            best_ni1 = ni1;
            best_p1 = p1;
            best_p2 = p2;
          }
        }
      }
    }
    const auto plan = optimize_energy(gen, 2, kTp, grid, 2);
    const bool match = std::abs(plan.minimum / best - 1.0) <= 1e-9 &&
                       plan.rows[0].ni_star == best_ni1 && plan.rows[0].power == best_p1 &&
                       plan.rows[1].ni_star == 2 && plan.rows[1].power == best_p2;
    o.require(match, fmt("optimize_energy snr0=%g", snr0));
    ++cases;
  }
  o.note(fmt("%g brute-force comparisons", cases));
  return o;
}

// 10 ----------------------------------------------------------------------
Outcome precoder() {
  Outcome o;
  std::mt19937_64 rng(314);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> power(0.0, 3.0);
  double worst_rec = 0.0;
  double worst_off = 0.0;
  for (Eigen::Index k : {2, 3, 4, 8}) {
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::MatrixXd g(k, k + 2);
      for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = z(rng);
      }
      Eigen::MatrixXd s = g * g.transpose();
      const Eigen::VectorXd d = s.diagonal().cwiseSqrt().cwiseInverse();
      Eigen::MatrixXd cm = d.asDiagonal() * s * d.asDiagonal();
      cm = 0.5 * (cm + cm.transpose());
      cm.diagonal().setOnes();
      const CorrelationMatrix c(cm);
      const auto dec = decompose_correlation(c);
      const Eigen::MatrixXcd chain = dec.u.cast<std::complex<double>>() * dec.f * dec.sigma_h *
                                     dec.f.adjoint() * dec.u.transpose().cast<std::complex<double>>();
      worst_rec = std::max(worst_rec, (chain - cm.cast<std::complex<double>>()).cwiseAbs().maxCoeff());
      worst_rec = std::max(worst_rec, (dec.u * dec.sigma_c * dec.u.transpose() - cm).cwiseAbs().maxCoeff());
      Eigen::VectorXd pt(k);
      for (Eigen::Index q = 0; q < k; ++q) pt(q) = power(rng);
      worst_off = std::max(worst_off, max_off_diagonal(transformed_covariance(build_precoder(dec, pt), c)));
    }
  }
  o.require(worst_rec <= kPrecodeTol, fmt("reconstruction %.3g", worst_rec));
  o.require(worst_off <= kPrecodeTol, fmt("off-diagonal %.3g", worst_off));
  o.note(fmt("reconstruction %.2g, off-diagonal %.2g", worst_rec, worst_off));
  return o;
}

// 11 ----------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "lnfade_acceptance";
  fs::remove_all(root);
  int compared = 0;
  for (const char* name : {"fig2", "fig3", "fig4"}) {
    std::ifstream in(fs::path(LNFADE_CONFIGS) / (std::string(name) + ".json"));
    auto doc = nlohmann::json::parse(in);
    doc["simulation"]["episodes"] = 300;
    std::vector<std::string> first;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path dir = root / (std::string(name) + "_" + std::to_string(rep));
      fs::create_directories(dir);
      doc["output"] = (dir / (std::string(name) + ".csv")).string();
      const fs::path spec = dir / "spec.json";
      std::ofstream(spec) << doc.dump(2);
      const std::string cmd =
          std::string(LNFADE_CLI) + " run " + spec.string() + " > " + (dir / "log.txt").string();
      o.require(std::system(cmd.c_str()) == 0, std::string(name) + " run failed");
      std::vector<std::string> files;
      for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".csv") files.push_back(e.path().filename().string());
      }
      std::sort(files.begin(), files.end());
      std::vector<std::string> contents;
      for (const auto& f : files) contents.push_back(f + "\n" + slurp(dir / f));
      if (rep == 0) {
        first = contents;
      } else {
        o.require(first == contents, std::string(name) + " outputs differ");
        compared += static_cast<int>(contents.size());
      }
    }
  }
  fs::remove_all(root);
  o.note(fmt("%g CSV files byte-identical across repeated runs", compared));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"throughput saturation at 60 dB", throughput_saturation},
      {"monotone SNR response", monotone_snr},
      {"dependent channel delay ordering", dependent_delay},
      {"10 dB erasure knee", knee},
      {"analytic vs oracle equivalence", analytic_equivalence},
      {"Q-function suite", q_suite},
      {"channel statistics", channel_statistics},
      {"outage and policy contracts", outage_contracts},
      {"optimizers vs brute force", optimizers},
      {"precoder reconstruction and decorrelation", precoder},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s [%2d] %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}

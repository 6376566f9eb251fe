// Command-line front end: run, validate, sweep, plot.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lnfade/csv.hpp"
#include "lnfade/errors.hpp"
#include "lnfade/experiment.hpp"
#include "lnfade/svg.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kConvergence = 3;
constexpr int kIo = 4;

void report(const std::vector<lnfade::Violation>& violations) {
  for (const auto& v : violations) std::cerr << v.field << ": " << v.message << '\n';
}

int execute(const lnfade::ExperimentSpec& spec) {
  const auto out = lnfade::run_experiment(spec);
  for (const auto& line : out.summary) std::cout << line << '\n';
  for (const auto& f : out.files) std::cout << "wrote " << f.string() << '\n';
  return kOk;
}

// Maps library exceptions onto the documented exit codes.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const lnfade::ValidationError& e) {
    report(e.violations);
    return kValidation;
  } catch (const lnfade::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const lnfade::UsageError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const lnfade::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return kConvergence;
  } catch (const lnfade::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << '\n';
    return kConvergence;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o failure: " << e.what() << '\n';
    return kIo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packet delay and energy over correlated log-normal fading links"};
  app.require_subcommand(1);

  std::string spec_path;
  auto* run = app.add_subcommand("run", "Run an experiment spec and write CSV results");
  run->add_option("spec", spec_path, "JSON experiment spec")->required();

  auto* validate = app.add_subcommand("validate", "Check a spec and list every violation");
  validate->add_option("spec", spec_path, "JSON experiment spec")->required();

  std::vector<double> snr_db{0, 5, 10, 15, 20, 25, 30};
  std::size_t episodes = 1000;
  std::uint64_t seed = 1;
  std::string scheme = "uncoded";
  std::string policy = "fixed";
  double a1 = 0.0;
  std::string out = "sweep.csv";
  double p_out = 0.01;
  double pt_max = 10.0;
  std::size_t n_data = lnfade::FigureParams::n_data;
  int bits = lnfade::FigureParams::bits;
  std::size_t ni = 0;
  std::size_t ni_max = 8;
  bool analytic = false;
  auto* sweep = app.add_subcommand("sweep", "Custom sweep from inline flags");
  sweep->add_option("--snr-db", snr_db, "SNR grid in dB")->delimiter(',');
  sweep->add_option("--episodes", episodes, "Episodes per grid point");
  sweep->add_option("--seed", seed, "Base seed");
  sweep->add_option("--scheme", scheme)->check(CLI::IsMember({"uncoded", "coded"}));
  sweep->add_option("--policy", policy)->check(CLI::IsMember({"fixed", "adaptive"}));
  sweep->add_option("--a1", a1, "One-step log-gain correlation")->required();
  sweep->add_option("--out", out, "Output CSV path");
  sweep->add_option("--p-out", p_out, "Outage target (adaptive)");
  sweep->add_option("--pt-max", pt_max, "Power ceiling (adaptive)");
  sweep->add_option("--n-data", n_data, "Data packets per episode");
  sweep->add_option("--bits", bits, "Bits per packet");
  sweep->add_option("--ni", ni, "Coded packets per round (0 = optimized)");
  sweep->add_option("--ni-max", ni_max, "Largest round size considered");
  sweep->add_flag("--analytic", analytic, "Also write analytic companion CSVs");

  std::string csv_path;
  std::string x_col;
  std::string y_col;
  std::string svg_path;
  auto* plot = app.add_subcommand("plot", "Render one CSV column against another as SVG");
  plot->add_option("csv", csv_path, "Input CSV")->required();
  plot->add_option("--x", x_col, "x column")->required();
  plot->add_option("--y", y_col, "y column")->required();
  plot->add_option("--out", svg_path, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  if (run->parsed() || validate->parsed()) {
    const bool run_it = run->parsed();
    return guarded([&] {
      lnfade::ExperimentSpec spec;
      const auto violations = lnfade::validate_file(spec_path, &spec);
      if (!violations.empty()) {
        report(violations);
        return kValidation;
      }
      if (!run_it) {
        std::cout << spec_path << ": ok\n";
        return kOk;
      }
      return execute(spec);
    });
  }

  if (sweep->parsed()) {
    return guarded([&] {
      nlohmann::json doc = {
          {"experiment", "custom"},
          {"channel", {{"a1", a1}}},
          {"link", {{"bits", bits}}},
          {"policy", {{"type", policy}}},
          {"scheme", {{"type", scheme}, {"ni", ni}, {"ni_max", ni_max}}},
          {"simulation", {{"n_data", n_data}, {"episodes", episodes}, {"seed", seed}, {"snr_db", snr_db}}},
          {"analytic", {{"enabled", analytic}}},
          {"output", out},
      };
      if (policy == "adaptive") {
        doc["policy"]["p_out"] = p_out;
        doc["policy"]["pt_max"] = pt_max;
      }
      std::vector<lnfade::Violation> violations;
      const auto spec = lnfade::parse_spec(doc, violations);
      const auto more = lnfade::validate_spec(spec);
      violations.insert(violations.end(), more.begin(), more.end());
      if (!violations.empty()) {
        report(violations);
        return kValidation;
      }
      return execute(spec);
    });
  }

  return guarded([&] {
    std::ifstream in(csv_path);
    if (!in) throw std::ios_base::failure("cannot read " + csv_path);
    const auto table = lnfade::read_csv(in);
    std::ofstream os(svg_path, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot write " + svg_path);
    lnfade::write_svg_plot(os, table, x_col, y_col);
    os.close();
    if (!os) throw std::ios_base::failure("failed writing " + svg_path);
    return kOk;
  });
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "loglip/cauchy.hpp"
#include "loglip/io.hpp"

namespace loglip::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kConfigError = 2, kNumericalError = 3 };

struct GlobalOptions {
  std::string config_path;
  std::string out_dir;
  std::size_t threads = 1;
  std::optional<std::uint64_t> seed;
  bool dump_modes = false;
  bool json_output = false;
};

/// Parsed experiment configuration; sections not needed by a command may be absent.
struct ExperimentConfig {
  io::json raw;
  std::optional<CoefficientSpec> coefficient;
  std::optional<Spectrum> spectrum;
  std::string mollifier_name = "poly_bump";
  std::optional<double> b0;
  double s = 0.0;
  double T = 1.0;
  double delta_margin = 0.05;
  std::optional<double> delta;
  SobolevConvention convention = SobolevConvention::inhomogeneous;
  Setting setting = Setting::compact;
  IntegratorConfig integrator;
  double data_decay = 2.0;
  /// "sobolev": random data divided by the square root of its data-space weight.
  bool sobolev_normalize = false;
  std::uint64_t seed = 1;
  std::optional<std::string> state_csv;
  std::string out_dir = "out";
};

ExperimentConfig parse_config(const io::json& j);

/// delta from the config, or (1 + delta_margin) delta_min.
double chosen_delta(const ExperimentConfig& cfg, const EnergyConstants& c);

int cmd_constants(const ExperimentConfig& cfg, const GlobalOptions& g, std::ostream& out);
int cmd_solve(const ExperimentConfig& cfg, const GlobalOptions& g, std::ostream& out);
int cmd_verify(const ExperimentConfig& cfg, const std::string& suite, const GlobalOptions& g, std::ostream& out);
int cmd_sweep(const ExperimentConfig& cfg, const std::string& over, const GlobalOptions& g, std::ostream& out);

/// Full command line entry point; never throws, returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loglip::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "loglip/cauchy.hpp"
#include "loglip/coefficients.hpp"
#include "loglip/energy.hpp"
#include "loglip/mode_solver.hpp"
#include "loglip/spectrum.hpp"

namespace loglip::io {

using nlohmann::json;

// JSON <-> domain types. Parsing errors surface as ConfigError.

/// {"family": ..., "params": {...}, "T": ..., "a_inf": ..., "b0": ..., "a_sup": ...}
json to_json(const CoefficientSpec& spec);
CoefficientSpec coefficient_from_json(const json& j);

/// {"name": "poly_bump"} or the bare name.
Mollifier mollifier_from_json(const json& j);

/// {"kind": ..., "nu": ..., "modes": [{"label", "lambda", "weight"}]}; a
/// generator object {"generator": "torus"|"su2"|"abstract", ...} is also accepted.
json to_json(const Spectrum& spec);
Spectrum spectrum_from_json(const json& j);

json to_json(const EnergyConstants& c);

/// Columns label, re_u, im_u, re_ut, im_ut.
void write_state_csv(std::ostream& os, const SpectralState& state, const Spectrum& spec);
/// Rows are matched to the spectrum by label; every mode must appear exactly once.
SpectralState read_state_csv(std::istream& is, const Spectrum& spec);

/// Columns t, re_V1, im_V1, re_V2, im_V2.
void write_trajectory_csv(std::ostream& os, const ModeTrajectory& traj);

/// Columns t, norm_u, norm_ut, rhs_u0, rhs_u1, C_t.
void write_report_csv(std::ostream& os, const SolutionReport& rep);

/// Sidecar with constants, delta, fitted exponent and the per-mode table.
json report_sidecar(const SolutionReport& rep, const CauchyProblem& p);

/// Shortest round-trip decimal form used by every CSV writer.
std::string format_double(double x);

/// Splits one CSV line on commas (no quoting).
std::vector<std::string> split_csv_line(const std::string& line);

json read_json_file(const std::string& path);

}  // namespace loglip::io

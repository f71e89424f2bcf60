#include "loglip/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "loglip/errors.hpp"

namespace loglip::io {

namespace {

template <typename T>
T required(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError(std::string(where) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(where) + ": field '" + key + "': " + e.what());
  }
}

template <typename T>
T optional_field(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

json params_to_json(const FamilyParams& params) {
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ConstantParams>) {
          return {{"a", p.a}};
        } else if constexpr (std::is_same_v<P, PiecewiseLinearParams>) {
          return {{"t", p.t}, {"a", p.a}};
        } else if constexpr (std::is_same_v<P, LogLipCuspParams>) {
          return {{"a_c", p.a_c}, {"kappa", p.kappa}, {"t0", p.t0}};
        } else if constexpr (std::is_same_v<P, HoelderCuspParams>) {
          return {{"a_c", p.a_c}, {"kappa", p.kappa}, {"alpha", p.alpha}, {"beta", p.beta}, {"t0", p.t0}};
        } else {
          return {{"values", p.values}};
        }
      },
      params);
}

FamilyParams params_from_json(Family f, const json& p) {
  const char* w = "coefficient params";
  switch (f) {
    case Family::constant: return ConstantParams{required<double>(p, "a", w)};
    case Family::piecewise_linear:
      return PiecewiseLinearParams{required<std::vector<double>>(p, "t", w), required<std::vector<double>>(p, "a", w)};
    case Family::loglip_cusp:
      return LogLipCuspParams{required<double>(p, "a_c", w), required<double>(p, "kappa", w),
                              optional_field<double>(p, "t0", 0.0)};
    case Family::hoelder_cusp:
      return HoelderCuspParams{required<double>(p, "a_c", w), required<double>(p, "kappa", w),
                               required<double>(p, "alpha", w), optional_field<double>(p, "beta", 0.0),
                               optional_field<double>(p, "t0", 0.0)};
    case Family::custom_sampled: return CustomSampledParams{required<std::vector<double>>(p, "values", w)};
  }
  throw ConfigError("unknown family");
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && *b == ' ') ++b;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || ptr == b) throw ConfigError("CSV: not a number: '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

json to_json(const CoefficientSpec& spec) {
  return {{"family", to_string(spec.family())},
          {"params", params_to_json(spec.params())},
          {"T", spec.T()},
          {"a_inf", spec.a_inf()},
          {"b0", spec.b0()},
          {"a_sup", spec.a_sup()}};
}

CoefficientSpec coefficient_from_json(const json& j) {
  const char* w = "coefficient";
  const Family f = family_from_string(required<std::string>(j, "family", w));
  if (!j.contains("params") || !j.at("params").is_object()) throw ConfigError("coefficient: missing 'params' object");
  return CoefficientSpec(params_from_json(f, j.at("params")), required<double>(j, "T", w),
                         required<double>(j, "a_inf", w), required<double>(j, "b0", w),
                         required<double>(j, "a_sup", w));
}

Mollifier mollifier_from_json(const json& j) {
  if (j.is_string()) return mollifier_by_name(j.get<std::string>());
  return mollifier_by_name(required<std::string>(j, "name", "mollifier"));
}

json to_json(const Spectrum& spec) {
  json modes = json::array();
  for (const auto& m : spec.modes()) modes.push_back({{"label", m.label}, {"lambda", m.lambda}, {"weight", m.weight}});
  json j = {{"kind", to_string(spec.kind())}, {"modes", modes}};
  j["nu"] = spec.homogeneity_nu() ? json(*spec.homogeneity_nu()) : json(nullptr);
  return j;
}

Spectrum spectrum_from_json(const json& j) {
  const char* w = "spectrum";
  if (!j.is_object()) throw ConfigError("spectrum: expected an object");
  std::optional<double> nu;
  if (j.contains("nu") && !j.at("nu").is_null()) nu = required<double>(j, "nu", w);
  if (j.contains("generator")) {
    const auto gen = required<std::string>(j, "generator", w);
    if (gen == "torus") return torus_spectrum(required<int>(j, "dim", w), required<int>(j, "K", w));
    if (gen == "su2") return su2_spectrum(required<int>(j, "Lmax", w));
    if (gen == "abstract") {
      std::vector<std::pair<double, double>> entries;
      for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 2) throw ConfigError("spectrum: abstract entries are [lambda, weight] pairs");
        entries.emplace_back(e[0].get<double>(), e[1].get<double>());
      }
      return abstract_spectrum(entries, nu);
    }
    throw ConfigError("spectrum: unknown generator '" + gen + "'");
  }
  const auto kind = spectrum_kind_from_string(required<std::string>(j, "kind", w));
  if (!j.contains("modes") || !j.at("modes").is_array()) throw ConfigError("spectrum: missing 'modes' array");
  std::vector<ModeDescriptor> modes;
  for (const auto& m : j.at("modes"))
    modes.push_back({required<std::string>(m, "label", w), required<double>(m, "lambda", w),
                     optional_field<double>(m, "weight", 1.0)});
  return Spectrum(std::move(modes), kind, nu);
}

json to_json(const EnergyConstants& c) {
  json j = {{"M1", c.M1}, {"M2", c.M2}, {"M3", c.M3}, {"delta_min", c.delta_min}};
  if (c.M4_bound) j["M4_bound"] = *c.M4_bound;
  return j;
}

void write_state_csv(std::ostream& os, const SpectralState& state, const Spectrum& spec) {
  if (state.size() != spec.size()) throw ContractViolation("write_state_csv: state not aligned with spectrum");
  os << "label,re_u,im_u,re_ut,im_ut\n";
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    os << spec[j].label << ',' << format_double(state.u_hat[i].real()) << ',' << format_double(state.u_hat[i].imag())
       << ',' << format_double(state.ut_hat[i].real()) << ',' << format_double(state.ut_hat[i].imag()) << '\n';
  }
}

SpectralState read_state_csv(std::istream& is, const Spectrum& spec) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("state CSV: empty input");
  const auto header = split_csv_line(line);
  if (header != std::vector<std::string>{"label", "re_u", "im_u", "re_ut", "im_ut"})
    throw ConfigError("state CSV: header must be label,re_u,im_u,re_ut,im_ut");
  std::map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < spec.size(); ++j) index[spec[j].label] = j;
  SpectralState st(spec.size());
  std::vector<bool> seen(spec.size(), false);
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 5) throw ConfigError("state CSV: expected 5 columns in '" + line + "'");
    const auto it = index.find(cells[0]);
    if (it == index.end()) throw ConfigError("state CSV: unknown mode label '" + cells[0] + "'");
    if (seen[it->second]) throw ConfigError("state CSV: duplicate mode label '" + cells[0] + "'");
    seen[it->second] = true;
    const auto i = static_cast<Eigen::Index>(it->second);
    st.u_hat[i] = {parse_double(cells[1]), parse_double(cells[2])};
    st.ut_hat[i] = {parse_double(cells[3]), parse_double(cells[4])};
  }
  for (std::size_t j = 0; j < seen.size(); ++j)
    if (!seen[j]) throw ConfigError("state CSV: missing mode '" + spec[j].label + "'");
  return st;
}

void write_trajectory_csv(std::ostream& os, const ModeTrajectory& traj) {
  os << "t,re_V1,im_V1,re_V2,im_V2\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& V = traj.states[k];
    os << format_double(traj.times[k]) << ',' << format_double(V[0].real()) << ',' << format_double(V[0].imag())
       << ',' << format_double(V[1].real()) << ',' << format_double(V[1].imag()) << '\n';
  }
}

void write_report_csv(std::ostream& os, const SolutionReport& rep) {
  os << "t,norm_u,norm_ut,rhs_u0,rhs_u1,C_t\n";
  for (std::size_t k = 0; k < rep.times.size(); ++k)
    os << format_double(rep.times[k]) << ',' << format_double(rep.norm_u[k]) << ',' << format_double(rep.norm_ut[k])
       << ',' << format_double(rep.rhs_u0) << ',' << format_double(rep.rhs_u1) << ',' << format_double(rep.C_t[k])
       << '\n';
}

json report_sidecar(const SolutionReport& rep, const CauchyProblem& p) {
  json per_mode = json::array();
  for (const auto& m : rep.per_mode_amplification)
    per_mode.push_back({{"label", m.label}, {"lambda", m.lambda}, {"amplification", m.amplification}});
  json j = {{"constants", to_json(rep.constants)},
            {"delta", rep.delta},
            {"empirical_C", rep.empirical_C},
            {"setting", to_string(p.setting)},
            {"convention", to_string(p.convention)},
            {"s", p.s},
            {"T", p.T},
            {"position_index", rep.position_index},
            {"velocity_index", rep.velocity_index},
            {"per_mode", per_mode},
            {"units",
             {{"t", "time"},
              {"norm_u", "Sobolev norm at position_index (dimensionless)"},
              {"norm_ut", "Sobolev norm at velocity_index (1/time)"},
              {"rhs_u0", "Sobolev norm of u0 at s"},
              {"rhs_u1", "Sobolev norm of u1 at s - velocity order (1/time)"},
              {"C_t", "dimensionless ratio"},
              {"delta", "1/time"}}}};
  j["fitted_exponent"] = rep.fitted_exponent ? json(*rep.fitted_exponent) : json(nullptr);
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace loglip::io

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "asymcav/cavity_model.hpp"
#include "asymcav/noise_spectra.hpp"

namespace asymcav::cli {

using Value = std::variant<double, long long, bool, std::string, std::vector<double>>;

// Transmissions and losses are given in ppm.
struct CavityConfig {
  double L = 0.1;
  double L1 = 0.09;
  double wavelength = kDefaultWavelength;
  double tm_sq = 1e4;
  double t1_sq = 400.0;
  double t2_sq = 0.0;
  double T1 = 1.0;
  double T2 = 1.0;
};

struct MechConfig {
  double Omega_m = 2.0 * kPi * 240e3;
  std::optional<double> mass;
  std::optional<double> x_zpf;
  long long n = 0;
};

struct DriveSection {
  std::string detuning_mode = "plus";
  double detuning = 0.0;
  long long port = 1;
  std::optional<double> photon_number;
  std::optional<double> input_flux;
};

struct SweepConfig {
  std::string parameter;
  std::string scale = "linear";
  double start = 0.0;
  double stop = 1.0;
  long long points = 2;
};

struct OutputConfig {
  std::string path;  // empty: stdout
  std::string format = "csv";
  long long precision = 17;
  bool per_hz = false;
};

struct FigureConfig {
  std::vector<double> t1_sq_list;  // ppm
  // fig2 inset: log-spaced t1_sq sweep
  double inset_start = 100.0;
  double inset_stop = 1e4;
  long long inset_points = 41;
};

struct MapConfig {
  double delta_min_over_J = -4.0;
  double delta_max_over_J = 4.0;
  long long delta_points = 201;
};

struct SimulateConfig {
  double duration = 1.1e-7;
  double dt = 8e-12;
  long long sample_every = 1;
  double dx = 0.0;
  double alpha1_re = 1.0;
  double alpha1_im = 0.0;
  double alpha2_re = 0.0;
  double alpha2_im = 0.0;
  bool fit = true;
  double timescale_margin = 5.0;
};

struct RunConfig {
  CavityConfig cavity;
  MechConfig mech;
  DriveSection drive;
  SweepConfig sweep;
  OutputConfig output;
  FigureConfig figure;
  MapConfig map;
  SimulateConfig simulate;
};

// Defaults used as the base before any config file or override.
RunConfig default_config(const std::string& command);

// Sections a command reads; only these are echoed in provenance headers.
std::vector<std::string> relevant_sections(const std::string& command);

// Flat "section.key" -> value view of a config source.
using Assignments = std::vector<std::pair<std::string, Value>>;

Assignments parse_toml(std::istream& in, const std::string& origin);
Assignments parse_json(const nlohmann::json& j);
// Reads `# config:` provenance lines from a file written by this tool.
Assignments parse_provenance(std::istream& in, const std::string& origin);
Assignments load_config_file(const std::string& path);
// "section.key=value"; unquoted values that are not numbers/bools/arrays are strings.
std::pair<std::string, Value> parse_override(const std::string& text);

// Applies one source. Unknown keys and type mismatches throw ValidationError.
// Setting one of a mutually exclusive pair (mech.mass/mech.x_zpf,
// drive.photon_number/drive.input_flux) clears the other.
void apply(RunConfig& cfg, const Assignments& source);

// Fills implied defaults and checks ranges; throws ValidationError with the field path.
void resolve(RunConfig& cfg, const std::string& command);

std::string serialize_toml(const RunConfig& cfg, const std::vector<std::string>& sections);
nlohmann::json to_json(const RunConfig& cfg, const std::vector<std::string>& sections);

CavitySpec to_cavity_spec(const CavityConfig& c);
MechanicalMode to_mechanical_mode(const MechConfig& m);
DriveConfig to_drive_config(const DriveSection& d);

std::string format_double(double v, int precision = 17);

}  // namespace asymcav::cli

#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "asymcav/errors.hpp"

namespace asymcav::cli {
namespace {

using nlohmann::json;

template <class T>
T convert(const Value& v, const std::string& path);

template <>
double convert<double>(const Value& v, const std::string& path) {
  if (auto d = std::get_if<double>(&v)) return *d;
  if (auto i = std::get_if<long long>(&v)) return static_cast<double>(*i);
  throw ValidationError(path, "expected a number");
}

template <>
long long convert<long long>(const Value& v, const std::string& path) {
  if (auto i = std::get_if<long long>(&v)) return *i;
  if (auto d = std::get_if<double>(&v)) {
    if (std::isfinite(*d) && std::floor(*d) == *d && std::abs(*d) < 9e15) return static_cast<long long>(*d);
  }
  throw ValidationError(path, "expected an integer");
}

template <>
bool convert<bool>(const Value& v, const std::string& path) {
  if (auto b = std::get_if<bool>(&v)) return *b;
  throw ValidationError(path, "expected true or false");
}

template <>
std::string convert<std::string>(const Value& v, const std::string& path) {
  if (auto s = std::get_if<std::string>(&v)) return *s;
  throw ValidationError(path, "expected a string");
}

template <>
std::vector<double> convert<std::vector<double>>(const Value& v, const std::string& path) {
  if (auto l = std::get_if<std::vector<double>>(&v)) return *l;
  throw ValidationError(path, "expected an array of numbers");
}

struct Field {
  std::string section;
  std::string key;
  std::function<void(RunConfig&, const Value&, const std::string&)> set;
  std::function<std::optional<Value>(const RunConfig&)> get;
  std::function<void(RunConfig&)> clear;  // optionals only

  std::string path() const { return section + "." + key; }
};

template <class S, class T>
Field field(const char* section, const char* key, S RunConfig::*sec, T S::*mem) {
  Field f;
  f.section = section;
  f.key = key;
  f.set = [sec, mem](RunConfig& c, const Value& v, const std::string& p) { (c.*sec).*mem = convert<T>(v, p); };
  f.get = [sec, mem](const RunConfig& c) -> std::optional<Value> { return Value((c.*sec).*mem); };
  return f;
}

template <class S>
Field optional_field(const char* section, const char* key, S RunConfig::*sec, std::optional<double> S::*mem) {
  Field f;
  f.section = section;
  f.key = key;
  f.set = [sec, mem](RunConfig& c, const Value& v, const std::string& p) { (c.*sec).*mem = convert<double>(v, p); };
  f.get = [sec, mem](const RunConfig& c) -> std::optional<Value> {
    const auto& o = (c.*sec).*mem;
    if (!o) return std::nullopt;
    return Value(*o);
  };
  f.clear = [sec, mem](RunConfig& c) { ((c.*sec).*mem).reset(); };
  return f;
}

const std::vector<Field>& registry() {
  static const std::vector<Field> fields = [] {
    std::vector<Field> f;
    f.push_back(field("cavity", "L", &RunConfig::cavity, &CavityConfig::L));
    f.push_back(field("cavity", "L1", &RunConfig::cavity, &CavityConfig::L1));
    f.push_back(field("cavity", "wavelength", &RunConfig::cavity, &CavityConfig::wavelength));
    f.push_back(field("cavity", "tm_sq", &RunConfig::cavity, &CavityConfig::tm_sq));
    f.push_back(field("cavity", "t1_sq", &RunConfig::cavity, &CavityConfig::t1_sq));
    f.push_back(field("cavity", "t2_sq", &RunConfig::cavity, &CavityConfig::t2_sq));
    f.push_back(field("cavity", "T1", &RunConfig::cavity, &CavityConfig::T1));
    f.push_back(field("cavity", "T2", &RunConfig::cavity, &CavityConfig::T2));

    f.push_back(field("mech", "Omega_m", &RunConfig::mech, &MechConfig::Omega_m));
    f.push_back(optional_field("mech", "mass", &RunConfig::mech, &MechConfig::mass));
    f.push_back(optional_field("mech", "x_zpf", &RunConfig::mech, &MechConfig::x_zpf));
    f.push_back(field("mech", "n", &RunConfig::mech, &MechConfig::n));

    f.push_back(field("drive", "detuning_mode", &RunConfig::drive, &DriveSection::detuning_mode));
    f.push_back(field("drive", "detuning", &RunConfig::drive, &DriveSection::detuning));
    f.push_back(field("drive", "port", &RunConfig::drive, &DriveSection::port));
    f.push_back(optional_field("drive", "photon_number", &RunConfig::drive, &DriveSection::photon_number));
    f.push_back(optional_field("drive", "input_flux", &RunConfig::drive, &DriveSection::input_flux));

    f.push_back(field("sweep", "parameter", &RunConfig::sweep, &SweepConfig::parameter));
    f.push_back(field("sweep", "scale", &RunConfig::sweep, &SweepConfig::scale));
    f.push_back(field("sweep", "start", &RunConfig::sweep, &SweepConfig::start));
    f.push_back(field("sweep", "stop", &RunConfig::sweep, &SweepConfig::stop));
    f.push_back(field("sweep", "points", &RunConfig::sweep, &SweepConfig::points));

    f.push_back(field("output", "path", &RunConfig::output, &OutputConfig::path));
    f.push_back(field("output", "format", &RunConfig::output, &OutputConfig::format));
    f.push_back(field("output", "precision", &RunConfig::output, &OutputConfig::precision));
    f.push_back(field("output", "per_hz", &RunConfig::output, &OutputConfig::per_hz));

    f.push_back(field("figure", "t1_sq_list", &RunConfig::figure, &FigureConfig::t1_sq_list));
    f.push_back(field("figure", "inset_start", &RunConfig::figure, &FigureConfig::inset_start));
    f.push_back(field("figure", "inset_stop", &RunConfig::figure, &FigureConfig::inset_stop));
    f.push_back(field("figure", "inset_points", &RunConfig::figure, &FigureConfig::inset_points));

    f.push_back(field("map", "delta_min_over_J", &RunConfig::map, &MapConfig::delta_min_over_J));
    f.push_back(field("map", "delta_max_over_J", &RunConfig::map, &MapConfig::delta_max_over_J));
    f.push_back(field("map", "delta_points", &RunConfig::map, &MapConfig::delta_points));

    f.push_back(field("simulate", "duration", &RunConfig::simulate, &SimulateConfig::duration));
    f.push_back(field("simulate", "dt", &RunConfig::simulate, &SimulateConfig::dt));
    f.push_back(field("simulate", "sample_every", &RunConfig::simulate, &SimulateConfig::sample_every));
    f.push_back(field("simulate", "dx", &RunConfig::simulate, &SimulateConfig::dx));
    f.push_back(field("simulate", "alpha1_re", &RunConfig::simulate, &SimulateConfig::alpha1_re));
    f.push_back(field("simulate", "alpha1_im", &RunConfig::simulate, &SimulateConfig::alpha1_im));
    f.push_back(field("simulate", "alpha2_re", &RunConfig::simulate, &SimulateConfig::alpha2_re));
    f.push_back(field("simulate", "alpha2_im", &RunConfig::simulate, &SimulateConfig::alpha2_im));
    f.push_back(field("simulate", "fit", &RunConfig::simulate, &SimulateConfig::fit));
    f.push_back(field("simulate", "timescale_margin", &RunConfig::simulate, &SimulateConfig::timescale_margin));
    return f;
  }();
  return fields;
}

const Field* find_field(const std::string& path) {
  for (const Field& f : registry())
    if (f.path() == path) return &f;
  return nullptr;
}

const std::vector<std::pair<std::string, std::string>> kExclusive = {
    {"mech.mass", "mech.x_zpf"},
    {"drive.photon_number", "drive.input_flux"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& text, Value& out) {
  if (text.empty()) return false;
  const bool integral = text.find_first_not_of("+-0123456789") == std::string::npos &&
                        text.find_first_of("0123456789") != std::string::npos;
  char* end = nullptr;
  if (integral) {
    errno = 0;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (errno == 0 && end && *end == '\0') {
      out = v;
      return true;
    }
  }
  const double d = std::strtod(text.c_str(), &end);
  if (end && *end == '\0' && end != text.c_str()) {
    out = d;
    return true;
  }
  return false;
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (ch == '\\' && in_str) {
      ++i;
      continue;
    }
    if (ch == '"') in_str = !in_str;
    if (ch == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

std::string unquote(const std::string& s, const std::string& where) {
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '\\') {
      if (i + 2 >= s.size()) throw ValidationError(where, "dangling escape in string");
      const char n = s[++i];
      if (n == 'n') out += '\n';
      else if (n == 't') out += '\t';
      else out += n;
    } else {
      out += s[i];
    }
  }
  return out;
}

Value parse_value(const std::string& raw, const std::string& where, bool allow_bare) {
  const std::string t = trim(raw);
  if (t.empty()) throw ValidationError(where, "missing value");
  if (t.size() >= 2 && t.front() == '"' && t.back() == '"') return unquote(t, where);
  if (t == "true") return true;
  if (t == "false") return false;
  if (t.front() == '[') {
    if (t.back() != ']') throw ValidationError(where, "unterminated array");
    std::vector<double> list;
    std::stringstream ss(t.substr(1, t.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      Value v;
      if (!parse_number(item, v)) throw ValidationError(where, "array items must be numbers");
      list.push_back(convert<double>(v, where));
    }
    return list;
  }
  Value v;
  if (parse_number(t, v)) return v;
  if (allow_bare) return t;
  throw ValidationError(where, "cannot parse value '" + t + "' (quote strings)");
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    if (ch == '\n') {
      out += "\\n";
      continue;
    }
    out += ch;
  }
  return out + "\"";
}

std::string render(const Value& v) {
  struct Visitor {
    std::string operator()(double d) const {
      std::string s = format_double(d, 17);
      // Keep doubles recognisable as doubles when re-read.
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      return s;
    }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return quote(s); }
    std::string operator()(const std::vector<double>& l) const {
      std::string out = "[";
      for (std::size_t i = 0; i < l.size(); ++i) {
        if (i) out += ", ";
        out += (*this)(l[i]);
      }
      return out + "]";
    }
  };
  return std::visit(Visitor{}, v);
}

json to_json_value(const Value& v) {
  struct Visitor {
    json operator()(double d) const { return d; }
    json operator()(long long i) const { return i; }
    json operator()(bool b) const { return b; }
    json operator()(const std::string& s) const { return s; }
    json operator()(const std::vector<double>& l) const { return l; }
  };
  return std::visit(Visitor{}, v);
}

void require(bool ok, const std::string& path, const std::string& msg) {
  if (!ok) throw ValidationError(path, msg);
}

void check_finite(double v, const std::string& path) { require(std::isfinite(v), path, "must be finite"); }

void check_ppm(double v, const std::string& path) {
  check_finite(v, path);
  require(v >= 0.0 && v < 1e6, path, "must lie in [0, 1e6) ppm");
}

struct SweepRule {
  std::string parameter;
  double lo, hi;  // open interval of allowed values
};

std::vector<SweepRule> sweep_rules(const std::string& command) {
  const double inf = HUGE_VAL;
  if (command == "eigen" || command == "transmission-map")
    return {{"dx_over_dx_plus", -inf, inf}, {"dx", -inf, inf}};
  if (command == "noise") return {{"omega_over_kappa_plus", -inf, inf}, {"omega", -inf, inf}};
  if (command == "fig2" || command == "fig3") return {{"L1_over_L", 0.0, 1.0}};
  return {};
}

}  // namespace

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

RunConfig default_config(const std::string& command) {
  RunConfig c;
  if (command == "eigen" || command == "transmission-map") {
    // Avoided-crossing reproduction: L = 10 cm split 100:1.
    c.cavity.L = 0.1;
    c.cavity.L1 = 0.1 * 100.0 / 101.0;
    c.cavity.tm_sq = 7e4;
    c.cavity.t1_sq = 6e4;
    c.cavity.t2_sq = 4e4;
    c.cavity.T1 = 0.0;
    c.cavity.T2 = 0.0;
    c.sweep = {"dx_over_dx_plus", "linear", -5.0, 5.0, command == "eigen" ? 201 : 101};
  } else if (command == "noise") {
    c.sweep = {"omega_over_kappa_plus", "log", 0.01, 100.0, 101};
  } else if (command == "fig2") {
    c.sweep = {"L1_over_L", "linear", 0.5, 0.99995, 2001};
    c.figure.t1_sq_list = {100.0, 400.0, 1600.0, 6400.0};
  } else if (command == "fig3") {
    c.sweep = {"L1_over_L", "linear", 0.3, 0.9999, 1001};
    c.figure.t1_sq_list = {100.0, 1000.0};
  } else if (command == "simulate") {
    c.cavity.L = 0.1;
    c.cavity.L1 = 0.05;
    c.cavity.tm_sq = 1e4;
    c.cavity.t1_sq = 0.0;
    c.cavity.t2_sq = 0.0;
    c.cavity.T1 = 0.0;
    c.cavity.T2 = 0.0;
  }
  return c;
}

std::vector<std::string> relevant_sections(const std::string& command) {
  if (command == "eigen") return {"cavity", "sweep", "output"};
  if (command == "transmission-map") return {"cavity", "sweep", "map", "output"};
  if (command == "noise") return {"cavity", "drive", "sweep", "output"};
  if (command == "fig2") return {"cavity", "mech", "drive", "sweep", "figure", "output"};
  if (command == "fig3") return {"cavity", "mech", "drive", "sweep", "figure", "output"};
  if (command == "trap") return {"cavity", "mech", "drive", "output"};
  if (command == "qnd") return {"cavity", "mech", "drive", "output"};
  if (command == "optimize") return {"cavity", "mech", "drive", "output"};
  if (command == "simulate") return {"cavity", "simulate", "output"};
  return {"cavity", "mech", "drive", "sweep", "output", "figure", "map", "simulate"};
}

Assignments parse_toml(std::istream& in, const std::string& origin) {
  Assignments out;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    const std::string t = trim(strip_comment(line));
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ValidationError(where, "malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ValidationError(where, "expected key = value");
    const std::string key = trim(t.substr(0, eq));
    if (section.empty()) throw ValidationError(where, "key '" + key + "' outside any [section]");
    const std::string path = section + "." + key;
    out.emplace_back(path, parse_value(t.substr(eq + 1), path, false));
  }
  return out;
}

Assignments parse_json(const json& j) {
  const json* root = &j;
  if (j.contains("provenance") && j["provenance"].contains("config")) root = &j["provenance"]["config"];
  if (!root->is_object()) throw ValidationError("config", "JSON config must be an object of sections");
  Assignments out;
  for (const auto& [section, body] : root->items()) {
    if (!body.is_object()) throw ValidationError(section, "section must be an object");
    for (const auto& [key, v] : body.items()) {
      const std::string path = section + "." + key;
      if (v.is_boolean()) out.emplace_back(path, v.get<bool>());
      else if (v.is_number_integer()) out.emplace_back(path, v.get<long long>());
      else if (v.is_number()) out.emplace_back(path, v.get<double>());
      else if (v.is_string()) out.emplace_back(path, v.get<std::string>());
      else if (v.is_array()) {
        std::vector<double> list;
        for (const auto& x : v) {
          if (!x.is_number()) throw ValidationError(path, "array items must be numbers");
          list.push_back(x.get<double>());
        }
        out.emplace_back(path, list);
      } else {
        throw ValidationError(path, "unsupported JSON value");
      }
    }
  }
  return out;
}

Assignments parse_provenance(std::istream& in, const std::string& origin) {
  static const std::string prefix = "# config: ";
  std::stringstream body;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) body << line.substr(prefix.size()) << '\n';
    else if (!line.empty() && line[0] != '#') break;
  }
  return parse_toml(body, origin);
}

Assignments load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open '" + path + "'");
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "json") {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ValidationError("config", path + ": " + e.what());
    }
    return parse_json(j);
  }
  if (ext == "csv") return parse_provenance(in, path);
  return parse_toml(in, path);
}

std::pair<std::string, Value> parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ValidationError("--set", "expected section.key=value, got '" + text + "'");
  const std::string path = trim(text.substr(0, eq));
  return {path, parse_value(text.substr(eq + 1), path, true)};
}

void apply(RunConfig& cfg, const Assignments& source) {
  std::set<std::string> touched;
  for (const auto& [path, value] : source) {
    const Field* f = find_field(path);
    if (!f) throw ValidationError(path, "unknown configuration key");
    f->set(cfg, value, path);
    touched.insert(path);
  }
  for (const auto& [a, b] : kExclusive) {
    const bool ta = touched.count(a) > 0, tb = touched.count(b) > 0;
    if (ta && tb) throw ValidationError(a, "cannot be given together with " + b);
    if (ta) find_field(b)->clear(cfg);
    if (tb) find_field(a)->clear(cfg);
  }
}

void resolve(RunConfig& cfg, const std::string& command) {
  CavityConfig& c = cfg.cavity;
  check_ppm(c.tm_sq, "cavity.tm_sq");
  check_ppm(c.t1_sq, "cavity.t1_sq");
  check_ppm(c.t2_sq, "cavity.t2_sq");
  check_ppm(c.T1, "cavity.T1");
  check_ppm(c.T2, "cavity.T2");
  validate(to_cavity_spec(c), "cavity");

  MechConfig& m = cfg.mech;
  if (!m.mass && !m.x_zpf) m.mass = 1e-11;
  check_finite(m.Omega_m, "mech.Omega_m");
  require(m.Omega_m > 0.0, "mech.Omega_m", "must be positive");
  if (m.mass) {
    check_finite(*m.mass, "mech.mass");
    require(*m.mass > 0.0, "mech.mass", "must be positive");
  }
  if (m.x_zpf) {
    check_finite(*m.x_zpf, "mech.x_zpf");
    require(*m.x_zpf > 0.0, "mech.x_zpf", "must be positive");
  }
  require(m.n >= 0, "mech.n", "must be non-negative");

  DriveSection& d = cfg.drive;
  if (!d.photon_number && !d.input_flux) d.photon_number = 1.0;
  validate(to_drive_config(d), "drive");

  SweepConfig& s = cfg.sweep;
  const auto rules = sweep_rules(command);
  if (!rules.empty()) {
    const auto rule = std::find_if(rules.begin(), rules.end(),
                                   [&](const SweepRule& r) { return r.parameter == s.parameter; });
    if (rule == rules.end()) {
      std::string allowed;
      for (const auto& r : rules) allowed += (allowed.empty() ? "" : ", ") + r.parameter;
      throw ValidationError("sweep.parameter", "'" + s.parameter + "' not sweepable here; expected " + allowed);
    }
    require(s.scale == "linear" || s.scale == "log", "sweep.scale", "must be linear or log");
    check_finite(s.start, "sweep.start");
    check_finite(s.stop, "sweep.stop");
    require(s.points >= 2 && s.points <= 10000000, "sweep.points", "must be in [2, 1e7]");
    if (s.scale == "log") {
      require(s.start > 0.0, "sweep.start", "log sweep needs a positive start");
      require(s.stop > 0.0, "sweep.stop", "log sweep needs a positive stop");
    }
    require(s.start > rule->lo && s.start < rule->hi, "sweep.start", "outside the parameter's valid range");
    require(s.stop > rule->lo && s.stop < rule->hi, "sweep.stop", "outside the parameter's valid range");
  }

  OutputConfig& o = cfg.output;
  require(o.format == "csv" || o.format == "json", "output.format", "must be csv or json");
  require(o.precision >= 1 && o.precision <= 17, "output.precision", "must be in [1, 17]");

  if (command == "fig2" || command == "fig3") {
    require(!cfg.figure.t1_sq_list.empty(), "figure.t1_sq_list", "must not be empty");
    for (double v : cfg.figure.t1_sq_list) {
      check_finite(v, "figure.t1_sq_list");
      require(v > 0.0 && v < 1e6, "figure.t1_sq_list", "entries must lie in (0, 1e6) ppm");
    }
  }
  if (command == "fig2") {
    require(cfg.figure.inset_start > 0.0 && cfg.figure.inset_start < 1e6, "figure.inset_start",
            "must lie in (0, 1e6) ppm");
    require(cfg.figure.inset_stop > 0.0 && cfg.figure.inset_stop < 1e6, "figure.inset_stop",
            "must lie in (0, 1e6) ppm");
    require(cfg.figure.inset_points >= 2, "figure.inset_points", "must be at least 2");
  }
  if (command == "transmission-map") {
    check_finite(cfg.map.delta_min_over_J, "map.delta_min_over_J");
    check_finite(cfg.map.delta_max_over_J, "map.delta_max_over_J");
    require(cfg.map.delta_min_over_J < cfg.map.delta_max_over_J, "map.delta_max_over_J",
            "must exceed delta_min_over_J");
    require(cfg.map.delta_points >= 2, "map.delta_points", "must be at least 2");
  }
  if (command == "simulate") {
    const SimulateConfig& sim = cfg.simulate;
    check_finite(sim.duration, "simulate.duration");
    check_finite(sim.dt, "simulate.dt");
    check_finite(sim.dx, "simulate.dx");
    require(sim.duration > 0.0, "simulate.duration", "must be positive");
    require(sim.dt > 0.0, "simulate.dt", "must be positive");
    require(sim.sample_every >= 1, "simulate.sample_every", "must be at least 1");
    require(sim.duration / sim.dt <= 5e7, "simulate.dt", "more than 5e7 steps requested");
    for (double v : {sim.alpha1_re, sim.alpha1_im, sim.alpha2_re, sim.alpha2_im}) check_finite(v, "simulate.alpha");
  }
}

std::string serialize_toml(const RunConfig& cfg, const std::vector<std::string>& sections) {
  std::string out;
  for (const std::string& sec : sections) {
    out += "[" + sec + "]\n";
    for (const Field& f : registry()) {
      if (f.section != sec || f.path() == "output.path") continue;
      const auto v = f.get(cfg);
      if (v) out += f.key + " = " + render(*v) + "\n";
    }
  }
  return out;
}

json to_json(const RunConfig& cfg, const std::vector<std::string>& sections) {
  json j = json::object();
  for (const std::string& sec : sections) {
    json body = json::object();
    for (const Field& f : registry()) {
      if (f.section != sec || f.path() == "output.path") continue;
      const auto v = f.get(cfg);
      if (v) body[f.key] = to_json_value(*v);
    }
    j[sec] = body;
  }
  return j;
}

CavitySpec to_cavity_spec(const CavityConfig& c) {
  CavitySpec s;
  s.L = c.L;
  s.L1 = c.L1;
  s.wavelength = c.wavelength;
  s.tm_sq = c.tm_sq * kPpm;
  s.t1_sq = c.t1_sq * kPpm;
  s.t2_sq = c.t2_sq * kPpm;
  s.T1 = c.T1 * kPpm;
  s.T2 = c.T2 * kPpm;
  return s;
}

MechanicalMode to_mechanical_mode(const MechConfig& m) {
  const int n = static_cast<int>(m.n);
  if (m.x_zpf) return MechanicalMode::from_x_zpf(m.Omega_m, *m.x_zpf, n);
  return MechanicalMode::from_mass(m.Omega_m, m.mass.value_or(1e-11), n);
}

DriveConfig to_drive_config(const DriveSection& d) {
  DriveConfig out;
  out.detuning_mode = detuning_mode_from_string(d.detuning_mode);
  out.detuning = d.detuning;
  out.port = static_cast<int>(d.port);
  out.photon_number = d.photon_number;
  out.input_flux = d.input_flux;
  return out;
}

}  // namespace asymcav::cli

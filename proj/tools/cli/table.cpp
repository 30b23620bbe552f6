#include "table.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "config.hpp"

namespace asymcav::cli {
namespace {

constexpr double kTwoPi = 2.0 * kPi;

double scaled(const Column& c, double v, const OutputFormat& fmt) {
  return c.spectral_density && fmt.per_hz ? v * kTwoPi : v;
}

std::string column_label(const Column& c, const OutputFormat& fmt) {
  return c.spectral_density && fmt.per_hz ? c.name + "_per_Hz" : c.name;
}

void write_header(std::ostream& os, const SweepResult& table, const Provenance& prov, const OutputFormat& fmt) {
  os << "# tool: asymcav " << prov.tool_version << '\n';
  os << "# command: " << prov.command << '\n';
  if (!table.name.empty()) os << "# table: " << table.name << '\n';
  std::istringstream cfg(prov.config_toml);
  std::string line;
  while (std::getline(cfg, line)) os << "# config: " << line << '\n';
  for (const Column& c : table.columns)
    if (!c.formula.empty()) os << "# formula: " << column_label(c, fmt) << " = " << c.formula << '\n';
  for (const std::string& n : prov.notes) os << "# note: " << n << '\n';
}

}  // namespace

std::size_t SweepResult::rows() const {
  if (columns.empty()) return 0;
  return std::visit([](const auto& v) { return v.size(); }, columns.front().data);
}

Column& SweepResult::add_numeric(const std::string& n, const std::string& formula, bool spectral) {
  columns.push_back({n, std::vector<double>{}, formula, spectral});
  return columns.back();
}

Column& SweepResult::add_text(const std::string& n, const std::string& formula) {
  columns.push_back({n, std::vector<std::string>{}, formula, false});
  return columns.back();
}

std::vector<double>& SweepResult::numeric(const std::string& n) {
  for (Column& c : columns)
    if (c.name == n) return std::get<std::vector<double>>(c.data);
  throw std::out_of_range("no numeric column '" + n + "'");
}

const std::vector<double>& SweepResult::numeric(const std::string& n) const {
  for (const Column& c : columns)
    if (c.name == n) return std::get<std::vector<double>>(c.data);
  throw std::out_of_range("no numeric column '" + n + "'");
}

const std::vector<std::string>& SweepResult::text(const std::string& n) const {
  for (const Column& c : columns)
    if (c.name == n) return std::get<std::vector<std::string>>(c.data);
  throw std::out_of_range("no text column '" + n + "'");
}

void write_csv(std::ostream& os, const SweepResult& table, const Provenance& prov, const OutputFormat& fmt) {
  write_header(os, table, prov, fmt);
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << column_label(table.columns[i], fmt);
  os << '\n';
  const std::size_t n = table.rows();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      const Column& c = table.columns[i];
      if (i) os << ',';
      if (const auto* d = std::get_if<std::vector<double>>(&c.data)) os << format_double(scaled(c, (*d)[r], fmt), fmt.precision);
      else os << std::get<std::vector<std::string>>(c.data)[r];
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const SweepResult& table, const Provenance& prov, const OutputFormat& fmt) {
  nlohmann::json j;
  j["provenance"]["tool"] = "asymcav " + prov.tool_version;
  j["provenance"]["command"] = prov.command;
  if (!table.name.empty()) j["provenance"]["table"] = table.name;
  j["provenance"]["config"] = prov.config_json;
  nlohmann::json formulas = nlohmann::json::object();
  for (const Column& c : table.columns)
    if (!c.formula.empty()) formulas[column_label(c, fmt)] = c.formula;
  j["provenance"]["formulas"] = formulas;
  j["provenance"]["notes"] = prov.notes;
  nlohmann::json cols = nlohmann::json::object();
  nlohmann::json order = nlohmann::json::array();
  for (const Column& c : table.columns) {
    const std::string label = column_label(c, fmt);
    order.push_back(label);
    if (const auto* d = std::get_if<std::vector<double>>(&c.data)) {
      nlohmann::json arr = nlohmann::json::array();
      for (double v : *d) {
        const double s = scaled(c, v, fmt);
        if (std::isfinite(s)) arr.push_back(s);
        else arr.push_back(format_double(s));
      }
      cols[label] = arr;
    } else {
      cols[label] = std::get<std::vector<std::string>>(c.data);
    }
  }
  j["columns"] = order;
  j["data"] = cols;
  os << j.dump(1) << '\n';
}

SweepResult read_csv(std::istream& is) {
  SweepResult t;
  std::string line;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> cells;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> parts;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (names.empty()) {
      names = parts;
      cells.resize(names.size());
      continue;
    }
    if (parts.size() != names.size()) throw std::runtime_error("ragged CSV row");
    for (std::size_t i = 0; i < parts.size(); ++i) cells[i].push_back(parts[i]);
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::vector<double> nums;
    bool numeric = true;
    for (const std::string& s : cells[i]) {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (s.empty() || *end != '\0') {
        numeric = false;
        break;
      }
      nums.push_back(v);
    }
    if (numeric) t.columns.push_back({names[i], nums, "", false});
    else t.columns.push_back({names[i], cells[i], "", false});
  }
  return t;
}

}  // namespace asymcav::cli

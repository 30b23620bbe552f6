#pragma once

#include <deque>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace asymcav::cli {

struct Column {
  std::string name;
  std::variant<std::vector<double>, std::vector<std::string>> data;
  std::string formula;             // provenance tag, empty for plain inputs
  bool spectral_density = false;   // rescaled by 2 pi when per-Hz output is requested
};

// Tabular result of one command plus everything needed to regenerate it.
struct SweepResult {
  std::string name;  // "" for the main table, otherwise a file suffix such as "inset"
  std::deque<Column> columns;  // deque: add_* references stay valid

  std::size_t rows() const;
  Column& add_numeric(const std::string& name, const std::string& formula = "", bool spectral = false);
  Column& add_text(const std::string& name, const std::string& formula = "");
  std::vector<double>& numeric(const std::string& name);
  const std::vector<double>& numeric(const std::string& name) const;
  const std::vector<std::string>& text(const std::string& name) const;
};

struct Provenance {
  std::string tool_version;
  std::string command;
  std::string config_toml;      // serialized resolved config
  nlohmann::json config_json;
  std::vector<std::string> notes;  // extra "# key: value" lines
};

struct OutputFormat {
  int precision = 17;
  bool per_hz = false;
};

void write_csv(std::ostream& os, const SweepResult& table, const Provenance& prov, const OutputFormat& fmt);
void write_json(std::ostream& os, const SweepResult& table, const Provenance& prov, const OutputFormat& fmt);

// Reads a CSV written by write_csv back into columns (numeric where every
// cell parses as a number). Comment lines are skipped.
SweepResult read_csv(std::istream& is);

}  // namespace asymcav::cli

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asymcav/errors.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "table.hpp"

#ifndef ASYMCAV_VERSION
#define ASYMCAV_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace asymcav;
using namespace asymcav::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string config;
  std::string output;
  std::string format;
  std::vector<std::string> sets;
};

std::string companion_path(const std::string& main, const std::string& name) {
  const fs::path p(main);
  return (p.parent_path() / (p.stem().string() + "_" + name + p.extension().string())).string();
}

void write_table(std::ostream& os, const SweepResult& t, const Provenance& prov, const RunConfig& cfg) {
  const OutputFormat fmt{static_cast<int>(cfg.output.precision), cfg.output.per_hz};
  if (cfg.output.format == "json") write_json(os, t, prov, fmt);
  else write_csv(os, t, prov, fmt);
}

int run(const std::string& command, const Options& opt) {
  RunConfig cfg = default_config(command);
  if (!opt.config.empty()) cli::apply(cfg, load_config_file(opt.config));
  for (const std::string& s : opt.sets) cli::apply(cfg, Assignments{parse_override(s)});
  if (!opt.output.empty()) {
    cfg.output.path = opt.output;
    if (opt.format.empty() && fs::path(opt.output).extension() == ".json") cfg.output.format = "json";
  }
  if (!opt.format.empty()) cfg.output.format = opt.format;
  resolve(cfg, command);

  const CommandOutput result = run_command(command, cfg);

  const std::vector<std::string> sections = relevant_sections(command);
  Provenance prov;
  prov.tool_version = ASYMCAV_VERSION;
  prov.command = command;
  prov.config_toml = serialize_toml(cfg, sections);
  prov.config_json = to_json(cfg, sections);
  prov.notes = result.notes;
  for (const std::string& n : result.notes)
    if (n.rfind("warning: ", 0) == 0) std::cerr << "asymcav: " << n << '\n';

  for (std::size_t i = 0; i < result.tables.size(); ++i) {
    const SweepResult& t = result.tables[i];
    if (cfg.output.path.empty()) {
      if (i) std::cout << '\n';
      write_table(std::cout, t, prov, cfg);
      continue;
    }
    const std::string path = t.name.empty() ? cfg.output.path : companion_path(cfg.output.path, t.name);
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_table(os, t, prov, cfg);
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymcav: asymmetric membrane-split cavity toolkit"};
  app.set_version_flag("--version", std::string(ASYMCAV_VERSION));
  app.require_subcommand(1);

  Options opt;
  std::string chosen;
  for (const std::string& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config, "TOML, JSON or a CSV/JSON output of this tool");
    sub->add_option("--output", opt.output, "output path (default stdout)");
    sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--set", opt.sets, "section.key=value override (repeatable)");
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    return run(chosen, opt);
  } catch (const ValidationError& e) {
    std::cerr << "asymcav: config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericError& e) {
    std::cerr << "asymcav: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "asymcav: " << e.what() << '\n';
    return kExitOther;
  }
}

// bohmsim: run one scenario file and write its datasets.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "bohm/cli/config.hpp"
#include "bohm/cli/scenario.hpp"

int main(int argc, char **argv) {
  CLI::App app{"Entangled pair decay simulations"};
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  bool svg = false;
  app.add_option("--config", config_path, "scenario file")->required();
  app.add_option("--out", out_dir, "output directory (default ./out)");
  app.add_option("--seed", seed, "RNG seed, overrides the scenario");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--svg", svg, "also write SVG figures");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : bohm::exit_code::config;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "config_error: cannot read " << config_path << '\n';
    return bohm::exit_code::config;
  }
  std::ostringstream text;
  text << in.rdbuf();

  bohm::cli::ScenarioConfig cfg;
  try {
    cfg = bohm::cli::parse_config(text.str());
  } catch (const bohm::Error &e) {
    std::cerr << e.name() << ": " << e.what() << '\n';
    return bohm::exit_code_for(e);
  }
  if (out_dir) cfg.out_dir = *out_dir;
  else if (cfg.out_dir.empty()) cfg.out_dir = "out";
  if (seed) cfg.seed = *seed;
  if (format) cfg.format = *format == "json" ? bohm::cli::Format::Json : bohm::cli::Format::Csv;
  if (svg) cfg.emit_svg = true;

  const auto rep = bohm::cli::run_scenario(cfg);
  if (rep.exit_code != bohm::exit_code::ok) {
    std::cerr << rep.error_name << ": " << rep.message << '\n';
    return rep.exit_code;
  }
  for (const auto &f : rep.files_written) std::cout << f << '\n';
  return 0;
}

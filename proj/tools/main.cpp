#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "motslab/config.hpp"
#include "motslab/errors.hpp"
#include "motslab/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"motslab: MOTS formation pipeline for short-pulse characteristic data"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  app.add_option("-c,--config", config_path, "INI config file (defaults built in when omitted)");
  app.add_option("-o,--out", out_dir, "output directory (overrides MOTSLAB_OUTPUT_DIR and [output] dir)");
  app.add_option("-s,--set", overrides, "override, e.g. --set regime.y=8")->take_all();

  std::vector<CLI::App*> stages;
  for (const auto& s : motslab::subcommands()) stages.push_back(app.add_subcommand(s, "run the " + s + " stage"));
  auto* all = app.add_subcommand("all", "run every stage in order");
  auto* defaults = app.add_subcommand("default-config", "print the built-in config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (defaults->parsed()) {
    std::cout << motslab::default_config_text();
    return 0;
  }
  motslab::RunConfig cfg;
  try {
    cfg = config_path.empty() ? motslab::parse_config(motslab::default_config_text(), overrides)
                              : motslab::load_config(config_path, overrides);
  } catch (const motslab::Error& e) {
    std::cerr << "config: " << e.what() << '\n';
    return 2;
  }
  const auto out = motslab::resolve_output_dir(cfg, out_dir);
  std::cerr << "config_hash " << motslab::config_hash(cfg) << " -> " << out.string() << '\n';
  if (all->parsed()) return motslab::run_all(cfg, out, std::cerr);
  for (auto* s : stages)
    if (s->parsed()) return motslab::run(s->get_name(), cfg, out, std::cerr);
  return 2;
}

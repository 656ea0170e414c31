#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tci/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Troubled-cell limiting for 2D Euler finite volumes", "tci"};
  app.require_subcommand(1);

  tci::CommandOptions options;
  std::string config;
  std::string out;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--config", config, "key = value run configuration")->required();
    sub->add_option("--out", out, "output directory (created if absent)")->required();
    sub->add_flag("--force", options.force, "overwrite existing artifacts");
  };
  CLI::App* run = app.add_subcommand("run", "solve a case and write history, field, mask and report");
  CLI::App* flag = app.add_subcommand("flag", "first-order solve, one mask per threshold in k_list");
  CLI::App* compare = app.add_subcommand("compare", "compare the limiting settings in 'compare'");
  CLI::App* list = app.add_subcommand("cases-list", "list the built-in cases");
  add_io(run);
  add_io(flag);
  add_io(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? tci::kExitOk : tci::kExitConfigError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  options.command = *tci::parse_command(chosen->get_name());
  (void)list;
  options.config = config;
  options.out = out;
  return tci::execute(options, std::cout, std::cerr);
}

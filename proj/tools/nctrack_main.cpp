#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nctrack/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nctrack: nonclassical front-tracking simulator"};
  app.require_subcommand(1);

  nctrack::CommonOptions options;
  std::string case_name;

  auto add_common = [&options](CLI::App* cmd, bool config_required = true) {
    cmd->add_option("--config", options.config_path, "scenario config (JSON)")
        ->required(config_required);
    cmd->add_option("--out", options.out_dir, "output directory");
    cmd->add_option("--seed", options.seed, "seed recorded in outputs");
    cmd->add_option("--eps", options.eps, "front-strength threshold override");
    cmd->add_option("--t-end", options.t_end, "final time override");
    cmd->add_option("--c-star", options.c_star, "Q_pos weight constant or \"auto\"");
    cmd->add_option("--snapshots", options.snapshot_times,
                    "snapshot times t1,t2,...")
        ->delimiter(',');
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run a scenario and write logs");
  add_common(run_cmd);
  CLI::App* verify_cmd =
      app.add_subcommand("verify-kinetic", "check the kinetic axioms");
  add_common(verify_cmd);
  CLI::App* search_cmd = app.add_subcommand(
      "search", "search an exceptional case for a V + C0 Q_weak increase");
  search_cmd->add_option("case", case_name, "RC-3, CR-4, CC-3 or CN-3")->required();
  add_common(search_cmd);

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) {
    return nctrack::cmd_run(options, std::cout, std::cerr);
  }
  if (verify_cmd->parsed()) {
    return nctrack::cmd_verify_kinetic(options, std::cout, std::cerr);
  }
  return nctrack::cmd_search(case_name, options, std::cout, std::cerr);
}

// brk: command-line front end.
#include <brp/cli.hpp>
#include <brp/error.hpp>
#include <brp/suite/acceptance.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"Riemann and boundary Riemann solver, viscous-limit experiments"};
  app.require_subcommand(1);
  std::string config;
  std::vector<std::string> sets;
  bool quiet = false;
  for (const std::string& name : brp::cli::problem_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " problem");
    sub->add_option("-c,--config", config, "config file (key = value, [sections])")->check(CLI::ExistingFile);
    sub->add_option("-s,--set", sets, "override, section.key=value (repeatable)");
    sub->add_flag("-q,--quiet", quiet, "only print the summary path");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string problem = app.get_subcommands().front()->get_name();

  brp::cli::set_suite_runner([](const brp::cli::RunConfig& cfg, std::ostream& log, std::string& summary) {
    brp::suite::SuiteOptions opt;
    opt.seed = cfg.seed;
    opt.only = cfg.criteria;
    opt.log = &log;
    const auto results = brp::suite::run_acceptance(opt);
    summary = brp::suite::results_json(results);
    return brp::suite::all_pass(results) ? 0 : 1;
  });

  try {
    std::vector<std::string> overrides = sets;
    overrides.push_back("problem=" + problem);
    const brp::cli::RunConfig cfg = config.empty() ? brp::cli::parse_config("", overrides)
                                                   : brp::cli::parse_config_file(config, overrides);
    std::ostringstream sink;
    const brp::cli::RunResult res = brp::cli::run(cfg, quiet ? static_cast<std::ostream&>(sink) : std::cout);
    std::cout << res.output_dir << "/summary.json\n";
    return res.exit_code;
  } catch (const brp::Error& e) {
    std::cerr << "brk: " << e.what() << '\n';
    return 2;
  }
}

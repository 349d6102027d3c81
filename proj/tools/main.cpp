#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"koszulcheck: PBW and Koszul criteria for N-homogeneous and filtered algebras"};
  app.require_subcommand(0, 1);
  koszul::cli::RunConfig cfg;
  std::string checks = "all";
  app.add_option("--input", cfg.input, "JSON presentation");
  app.add_option("--degree-bound", cfg.degree_bound, "degree bound D")->check(CLI::PositiveNumber);
  app.add_option("--checks", checks, "comma separated checks, or all");
  app.add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed, "seed for the right basis order");
  app.add_option("--out", cfg.out, "write the report here instead of stdout");
  auto* ex = app.add_subcommand("explain", "print the statement a check verifies");
  std::string name;
  ex->add_option("check", name, "check name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (ex->parsed()) {
    try {
      std::cout << koszul::cli::explain(name) << "\n";
      return 0;
    } catch (const koszul::cli::UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return 2;
    }
  }
  if (cfg.input.empty()) {
    std::cerr << "usage error: --input is required\n";
    return 2;
  }
  cfg.checks.clear();
  std::stringstream ss(checks);
  for (std::string c; std::getline(ss, c, ',');)
    if (!c.empty()) cfg.checks.push_back(c);
  return koszul::cli::run_main(cfg, std::cout, std::cerr);
}

#include <CLI11.hpp>

#include <iostream>
#include <utility>

#include "convexsmooth/cli.hpp"
#include "convexsmooth/io.hpp"

namespace cs = convexsmooth;

int main(int argc, char** argv) {
  CLI::App app{"Strongly convex bodies: certify, smooth, measure, probe"};
  app.require_subcommand(1);

  cs::cli::RunConfig cfg;
  std::string order = "c2";

  const std::pair<const char*, const char*> commands[] = {
      {"certify", "check the strong-convexity characterizations"},
      {"smooth", "extract a C2 (or C11) strongly convex approximation"},
      {"measure", "mesh the boundary and report its measure"},
      {"probe", "check that outward normal rays of inner reach the outer boundary"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input", cfg.input, "body JSON (probe: {\"inner\", \"outer\"})")->required();
    sub->add_option("--output", cfg.output, "existing directory for report.json and meshes");
    sub->add_option("--epsilon", cfg.epsilon, "relative symmetric-difference budget, in (0, 1/4)");
    sub->add_option("--delta", cfg.delta, "blend width; 0 selects 1e-3 R^2");
    sub->add_option("--order", order, "blend smoothness")->check(CLI::IsMember({"c11", "c2"}));
    sub->add_option("--resolution", cfg.resolution, "mesh resolution (certify: sample count)");
    sub->add_option("--seed", cfg.seed, "seed for all sampling");
    sub->add_option("--scan", cfg.scan, "number of candidate levels");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cs::cli::kExitInput;
  }

  cfg.command = cs::cli::parse_command(app.get_subcommands().front()->get_name());
  cfg.order = cs::io::parse_order(order);
  return cs::cli::run(cfg);
}

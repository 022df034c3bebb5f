#include <iostream>

#include <CLI11.hpp>

#include "curlinv/cli.hpp"

int main(int argc, char** argv) {
  curlinv::CommandConfig cfg;
  CLI::App app{"curlinv: discrete vector potentials by acyclic matchings"};
  app.require_subcommand(1);

  std::string knot;
  auto add_mesh = [&](CLI::App* sub) {
    sub->add_option("--mesh", cfg.mesh, "mesh file");
    sub->add_option("--grid", cfg.grid, "cube grid with N cells per axis");
    sub->add_option("--furch", cfg.furch, "knotted ball on an N grid");
    sub->add_option("--knot", knot, "none | straight | trefoil-K | file:PATH");
    sub->add_option("--seed", cfg.seed, "seed for fields and matchings");
    sub->add_option("--magnitude", cfg.magnitude, "bound of the random edge values");
  };

  auto* gen = app.add_subcommand("gen", "write a generated mesh");
  add_mesh(gen);
  gen->add_option("--out", cfg.out, "mesh output file");
  gen->add_option("--field", cfg.field, "also write a random solenoidal field here");

  auto* solve = app.add_subcommand("solve", "find h with C h = i");
  add_mesh(solve);
  solve->add_option("--field", cfg.field, "face cochain (default: random solenoidal)");
  solve->add_option("--out", cfg.out, "edge cochain output file");
  solve->add_flag("--timings", cfg.timings, "include wall times in the report");

  auto* stt = app.add_subcommand("stt", "spanning tree technique");
  add_mesh(stt);
  stt->add_option("--field", cfg.field, "face cochain (default: random solenoidal)");
  stt->add_option("--out", cfg.out, "edge cochain output file");
  stt->add_option("--tree", cfg.tree, "bfs | file:PATH | from-matching");

  auto* bench = app.add_subcommand("bench", "timing sweep over grid sizes");
  bench->add_option("--sizes", cfg.sizes, "grid sizes")->delimiter(',');
  bench->add_option("--runs", cfg.runs, "seeded solves per size");
  bench->add_option("--seed", cfg.seed, "base seed");
  bench->add_option("--magnitude", cfg.magnitude, "bound of the random edge values");
  bench->add_option("--knot", knot, "bench knotted balls instead of plain grids");
  bench->add_option("--out", cfg.out, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : curlinv::kExitFailure;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (!knot.empty()) cfg.knot = knot;
  return curlinv::run_command(cfg, std::cout, std::cerr);
}

#include <CLI11.hpp>
#include <iostream>

#include "fermatcount/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"point counts, local densities, and divisor sums for the "
               "Fermat cubic surface and its conic fibration"};
  app.require_subcommand(1);

  fermat::RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--out", cfg.out_path, "write the table to this file");
    sub->add_option("--workers", cfg.workers, "worker threads");
    sub->add_option("--seed", cfg.seed, "seed for sampled suites");
    return sub;
  };

  auto* count = add_common(app.add_subcommand(
      "count", "rational points of bounded height on the Fermat cubic"));
  count->add_option("--bound", cfg.bound, "height bound")->required();

  auto* countx = add_common(app.add_subcommand(
      "countx", "rational points of bounded height on the fibred model"));
  countx->add_option("--bound", cfg.bound, "height bound")->required();

  auto* fibration = add_common(app.add_subcommand(
      "fibration", "the same count split into per-fibre conic counts"));
  fibration->add_option("--bound", cfg.bound, "height bound")->required();

  auto* density = add_common(app.add_subcommand(
      "density", "local densities of one conic fibre"));
  density->add_option("--s", cfg.s, "fibre parameter s")->required();
  density->add_option("--t", cfg.t, "fibre parameter t")->required();
  density->add_option("--p", cfg.p, "a single prime");
  density->add_option("--pmax", cfg.pmax, "all primes up to this bound");

  auto* dsum = add_common(app.add_subcommand(
      "dsum", "dyadic divisor sums and the density aggregate lower bound"));
  dsum->add_option("--x", cfg.x, "range (power of two recommended)")->required();

  auto* progsum = add_common(app.add_subcommand(
      "progsum", "divisor convolution sums over arithmetic progressions"));
  progsum->add_option("--x", cfg.x, "summation range")->required();
  progsum->add_option("--modulus", cfg.modulus, "progression modulus");
  progsum->add_option("--residue", cfg.residue, "progression residue");

  auto* pairsum = add_common(app.add_subcommand(
      "pairsum", "bilinear sums over coprime squarefree pairs"));
  pairsum->add_option("--x", cfg.x, "box side")->required();
  pairsum->add_option("--modulus", cfg.modulus, "congruence modulus");
  pairsum->add_option("--s", cfg.s, "residue of the first variable");
  pairsum->add_option("--t", cfg.t, "residue of the second variable");

  auto* bt = add_common(app.add_subcommand(
      "bt", "counts on the biprojective cubic bundle and its twists"));
  bt->add_option("--bound", cfg.bound, "height bound")->required();
  bt->add_option("--twist", cfg.twist, "twist coordinates t0,t1,t2,t3")
      ->delimiter(',');

  auto* fit = add_common(app.add_subcommand(
      "fit", "least-squares log-power fit over a table of counts"));
  fit->add_option("--in", cfg.in_path, "input csv of bound,count rows")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // 0 covers --help
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return fermat::run(cfg, std::cout, std::cerr);
}

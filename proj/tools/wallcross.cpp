#include "wallcross/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

void add_common(CLI::App* sub, wallcross::RunConfig& c) {
  sub->add_option("--seed", c.seed, "random seed (required)");
  sub->add_option("--format", c.format, "report format: json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", c.output, "write the report to this file instead of stdout");
  sub->add_option("--starts", c.starts, "Newton starts per fibre (0 = automatic)");
  sub->add_option("--targets", c.targets, "regular targets per degree");
  sub->add_option("--wall-tol", c.tolerances.wall_tol);
  sub->add_option("--newton-tol", c.tolerances.newton_tol);
  sub->add_option("--dedup-radius", c.tolerances.dedup_radius);
  sub->add_option("--regular-cond", c.tolerances.regular_cond);
}

}  // namespace

int main(int argc, char** argv) {
  wallcross::RunConfig c;
  CLI::App app{"Degrees and wall crossings of real central projections"};
  app.require_subcommand(1);
  app.set_version_flag("--version", wallcross::kToolVersion);

  auto* degree = app.add_subcommand("degree", "degree of [f]_X with its certificate");
  auto* wall = app.add_subcommand("wall", "locate and classify a wall point of f");
  auto* track = app.add_subcommand("track", "wall crossings along the straight path from --from to --to");
  auto* brockett = app.add_subcommand("brockett", "Brockett degrees of rational functions");
  auto* wronski = app.add_subcommand("wronski", "Wronski operator, I(p,q) and the real degree");
  auto* poleplace = app.add_subcommand("poleplace", "pole placement against QPl on random subspaces");
  auto* subspace = app.add_subcommand("subspace", "signed solutions of the real subspace problem");

  for (auto* sub : {degree, wall, track}) {
    add_common(sub, c);
    sub->add_option("--manifold", c.manifold, "hyperquadric:n | veronese:n | plucker:p,q | custom:file")->required();
  }
  for (auto* sub : {degree, wall}) sub->add_option("--map", c.map, "inline matrix, @file, or f0/f1")->required();
  track->add_option("--from", c.from, "start map")->required();
  track->add_option("--to", c.to, "end map")->required();
  track->add_option("--emit-plot", c.emit_plot, "write degree-vs-t CSV to this file");
  track->add_option("--h-min", c.tolerances.h_min, "smallest subdivision step in t");
  track->add_option("--perturb-delta", c.tolerances.perturb_delta, "relative size of path perturbations");

  add_common(brockett, c);
  brockett->add_option("--n", c.n, "degree n (0 = scan n = 1..4)");
  brockett->add_option("--pairs", c.pairs, "random pairs per n");
  brockett->add_option("--p", c.p_coeffs, "coefficients a0,...,a_{n-1} of monic p");
  brockett->add_option("--q", c.q_coeffs, "coefficients b0,...,b_{n-1} of monic q");
  brockett->add_flag("--pipeline", c.pipeline, "also compare with the Veronese projection degree");

  for (auto* sub : {wronski, poleplace, subspace}) {
    add_common(sub, c);
    sub->add_option("--p", c.p)->required();
    sub->add_option("--q", c.q)->required();
  }
  wronski->add_option("--real-degree", c.real_degree, "compute the real degree (pq <= 6)");
  for (auto* sub : {poleplace, subspace})
    sub->add_option("--datum", c.datum, "wronski | random | @file.json | inline JSON");
  poleplace->add_option("--samples", c.samples, "random subspaces");
  subspace->add_option("--points", c.points, "pq affine points y (or inf), comma separated");
  subspace->add_option("--configs", c.configs, "random configurations when --points is absent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  c.command = app.get_subcommands().front()->get_name();

  const auto result = wallcross::run(c);
  if (c.output.empty()) {
    std::cout << result.report;
  } else {
    std::ofstream out(c.output);
    if (!out) {
      std::cerr << "cannot write " << c.output << "\n";
      return 1;
    }
    out << result.report;
  }
  if (!c.emit_plot.empty() && !result.plot.empty()) {
    std::ofstream plot(c.emit_plot);
    plot << result.plot;
  }
  if (result.exit_code != 0 && !c.output.empty()) std::cerr << "wallcross: exit " << result.exit_code << "\n";
  return result.exit_code;
}

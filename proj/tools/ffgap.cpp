#include <iostream>

#include "CLI11.hpp"
#include "ffgap/cli.hpp"

namespace {

void common_options(CLI::App* sub, ffgap::RunConfig& c) {
  sub->add_option("--model", c.model, "xxz, aklt or custom:<path>");
  sub->add_option("--xi", c.xi, "XXZ anisotropy");
  sub->add_option("--tol-ker", c.tol_ker, "kernel threshold (default 1e-10 (1 + |H|))");
  sub->add_option("--cap-dense", c.cap_dense, "largest dimension handled densely");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--solver", c.solver, "gap solver: auto, dense, sector-lanczos, lanczos");
  sub->add_option("--output", c.output, "output file (default: standard output)");
  sub->add_option("--format", c.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--timestamp", c.timestamp, "timestamp recorded in certificates");
}

}  // namespace

int main(int argc, char** argv) {
  ffgap::RunConfig c;
  CLI::App app{"Certified spectral gap lower bounds for frustration-free spin chains"};
  app.require_subcommand(1);

  auto* eps = app.add_subcommand("epsilon", "epsilon(m,n) from the overlap operator K");
  auto* gap = app.add_subcommand("gap", "gap table gamma(1,n), n <= N");
  auto* bound = app.add_subcommand("bound", "gap lower bound certificate");
  auto* verify = app.add_subcommand("verify", "run verification suites or re-check a certificate");
  auto* sweep = app.add_subcommand("sweep", "CSV sweeps over xi or (m,n)");

  for (auto* sub : {eps, gap, bound, verify, sweep}) common_options(sub, c);
  for (auto* sub : {eps, bound, verify, sweep}) {
    sub->add_option("-m", c.m, "left interval length");
    sub->add_option("-n", c.n, "right interval length");
  }
  for (auto* sub : {bound, verify, sweep}) {
    sub->add_option("--m-max", c.m_max, "largest m' scanned for the epsilon supremum");
  }
  gap->add_option("-N", c.N, "largest interval length")->required();
  verify->add_option("-N", c.N, "chain length for the theorem suite");

  verify->add_option("--suite", c.suite, "lemmas, theorem, aklt-closed-form, xxz-closed-form, all");
  verify->add_option("--trials", c.trials, "random trials per dimension (lemmas)");
  verify->add_option("--certificate", c.certificate, "certificate file to re-verify");

  sweep->add_option("--xi-min", c.xi_min);
  sweep->add_option("--xi-max", c.xi_max);
  sweep->add_option("--xi-step", c.xi_step);
  sweep->add_option("--grid-m-max", c.grid_m_max, "AKLT grid: largest m");
  sweep->add_option("--grid-n-max", c.grid_n_max, "AKLT grid: largest n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ffgap::exit_validation;
  }

  c.command = app.get_subcommands().front()->get_name();
  return ffgap::run(c, std::cout, std::cerr);
}

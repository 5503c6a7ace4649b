#include <string>

#include <CLI11.hpp>

#include "rlp/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"retarded layer potentials: symbols, convolutions, bound checks"};
  app.require_subcommand(1);

  rlp::RunOptions opt;
  const struct {
    const char* name;
    const char* blurb;
  } subs[] = {
      {"symbols", "tabulate operator symbols on an s-grid"},
      {"cq-run", "convolution quadrature history of one operator"},
      {"direct-run", "classical retarded integrals at an observation point"},
      {"wave-run", "forced wave equation on a disk or annulus"},
      {"verify-bounds", "check trace/flux/field inequalities against data"},
      {"transfer", "Laplace-route time-domain bounds"},
      {"table1", "print the operator bound table"},
      {"propagation", "pre-arrival decay study under step refinement"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.blurb);
    sub->add_option("--config", opt.config_path, "JSON scenario file");
    sub->add_option("--out", opt.out_dir, "output directory (default '.')");
    sub->add_option("--seed", opt.seed, "override the scenario seed");
    sub->add_option("--threads", opt.threads, "worker threads for the bound checks");
    sub->add_option("--tolerance", opt.tolerance, "override the scenario tolerance");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2; // --help exits 0; bad flags are config errors
  }

  for (const auto& s : subs)
    if (app.got_subcommand(s.name)) return rlp::run_scenario(s.name, opt);
  return 2;
}

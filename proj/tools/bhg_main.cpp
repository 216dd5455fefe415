// bhg: bounds, certification, and search for B_h[g]-sets in {1..N}.

#include <iostream>

#include <CLI11.hpp>

#include "bhg/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "bhg: certified upper bounds, exact search, and cross-checks for "
      "B_h[g]-sets in {1..N}"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // --h is a domain flag

  bhg::cli::RunConfig cfg;

  auto make_sub = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print help");
    return sub;
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option(
           "--format", cfg.format,
           "output format: table|csv|json; csv columns are "
           "method,h,g,N,constant,cardinality_bound,asymptotic for bounds "
           "and j,lo,hi,lower,upper,witness for certify")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    sub->add_option("--tol", cfg.tol, "certification / root tolerance");
    sub->add_option("--seed", cfg.seed, "seed for randomized sweeps");
  };

  auto* bounds =
      make_sub("bounds", "closed-form and certified cardinality bounds");
  bounds->add_option("--h", cfg.h, "number of summands h")->required();
  bounds->add_option("--g", cfg.g, "representation cap g");
  bounds->add_option("--N", cfg.n_raw, "interval length N (accepts 1e6)")
      ->required();
  bounds->add_option(
      "--method", cfg.method,
      "trivial|crt|cju|thm11|b3refined|all (crt = 1/(1+cos^h) formula, "
      "cju = sqrt(3h)h! formula)");
  bounds->add_option("--delta-den", cfg.delta_den,
                     "cap grid denominator for b3refined");
  add_common(bounds);

  auto* verify =
      make_sub("verify", "verify the B_h[g] property of a set file");
  verify->add_option("--file", cfg.file, "set file (ints, optional N= header)")
      ->required();
  verify->add_option("--h", cfg.h)->required();
  verify->add_option("--g", cfg.g)->required();
  verify->add_flag("--expsum", cfg.do_expsum,
                   "sweep the finite-N exponential-sum bound over all j");
  verify->add_flag("--lemma22", cfg.do_lemma22,
                   "check the edge-mass cube bound (needs --delta, --k)");
  verify->add_flag("--mass", cfg.do_mass, "report the edge-mass profile");
  verify->add_option("--delta", cfg.delta, "slab width fraction in (0, 1/4)");
  verify->add_option("--k", cfg.k, "slab pair index");
  add_common(verify);

  auto* search = make_sub(
      "search", "maximum B_h[g]-set search (exact branch-and-bound or greedy)");
  search->add_option("--N", cfg.n_raw)->required();
  search->add_option("--h", cfg.h)->required();
  search->add_option("--g", cfg.g)->required();
  search->add_option("--budget", cfg.budget, "node budget for exact search");
  search->add_option("--algo", cfg.algo, "exact|greedy")
      ->check(CLI::IsMember({"exact", "greedy"}));
  add_common(search);

  auto* psi = make_sub(
      "psi", "certified lower bounds for the min-max weight psi");
  psi->add_flag("--canonical", cfg.canonical,
                "use the built-in five-member h=3, K=6 family");
  psi->add_option("--family", cfg.family_file,
                  "family file: header 'h=<int> K=<int>', one member per line");
  psi->add_option("--m", cfg.m, "partition size");
  psi->add_flag("--optimize", cfg.optimize,
                "coordinate-descent search for a better family");
  psi->add_option("--steps", cfg.steps, "comma list of coefficient steps");
  psi->add_option("--budget", cfg.budget, "candidate evaluations for --optimize");
  add_common(psi);

  auto* certify = make_sub(
      "certify", "certified minimum of a cosine polynomial");
  certify->add_option("--poly", cfg.poly, "coefficients c1,c2,...,cK")
      ->required();
  certify->add_option("--interval", cfg.interval,
                      "closed interval \"lo,hi\"; accepts pi literals");
  certify->add_option("--h", cfg.h, "with --m: certify over the partition");
  certify->add_option("--m", cfg.m, "partition size");
  add_common(certify);

  auto* window =
      make_sub("window", "windowed representation-count sums");
  window->add_option("--file", cfg.file)->required();
  window->add_option("--h", cfg.h)->required();
  window->add_option("--window", cfg.window, "window length H");
  window->add_option("--mu", cfg.mu, "offset mu");
  window->add_option("--psi-value", cfg.psi_value,
                     "psi lower bound for the weighted comparison");
  add_common(window);

  auto* reproduce = make_sub(
      "reproduce", "regenerate every published constant and cross-check");
  reproduce->add_option("--delta-den", cfg.delta_den);
  add_common(reproduce);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits 0; any parse failure is input error
  }

  for (auto* sub : {bounds, verify, search, psi, certify, window, reproduce})
    if (sub->parsed()) cfg.subcommand = sub->get_name();

  return bhg::cli::run(cfg, std::cout, std::cerr);
}

#pragma once
// Command-line front end: validated run configuration and the dispatcher
// behind the single `bhg` binary.  Kept as a library so tests can drive the
// exact code path the executable uses.

#include <cstdint>
#include <iosfwd>
#include <string>

namespace bhg::cli {

struct RunConfig {
  std::string subcommand;  // bounds|verify|search|psi|certify|window|reproduce

  int h = 0;
  int g = 1;
  double n_raw = 0.0;  // N; accepts scientific notation like 1e6
  std::string method = "all";
  std::string file;
  std::string family_file;
  bool canonical = false;
  int m = 12;
  double tol = 1e-8;
  int delta_den = 128;
  double delta = 0.0;
  int k = 1;
  long long budget = 200'000'000;
  std::string format = "table";  // json|csv|table
  std::uint64_t seed = 0;        // reserved for randomized sweeps
  std::string poly;
  std::string interval;
  long long window = 1;
  double mu = 0.0;
  double psi_value = 0.0;
  bool do_expsum = false;
  bool do_lemma22 = false;
  bool do_mass = false;
  bool optimize = false;
  std::string steps = "0.1,-0.1,0.01,-0.01";
  std::string algo = "exact";  // exact|greedy
};

// Exit codes: 0 success, 1 reproduction mismatch, 2 invalid input,
// 3 certification/budget exhaustion.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace bhg::cli

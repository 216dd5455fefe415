#pragma once
// Closed-form cardinality bounds for B_h[g]-sets in {1..N}, the
// weight-function pipeline (G construction -> certified minimum -> sinc
// root -> leading constant), and the two-case B_3[g] refinement that
// tightens the h=3 constant to ~14.295.

#include <cstdint>
#include <string>
#include <vector>

#include "bhg/trig.hpp"

namespace bhg::bounds {

struct BhgInstance {
  int h = 2;          // summands
  int g = 1;          // representation cap
  std::int64_t n = 1; // ambient interval length N
  void validate() const;
};

enum class Method { trivial, crt, cju, thm11, b3refined };
std::string method_name(Method m);

struct BoundReport {
  Method method;
  BhgInstance inst;
  double constant;          // C in |A| <= (C g N)^{1/h}
  double cardinality_bound; // (C g N)^{1/h}
  bool asymptotic;          // carries a 1 + o_N(1) factor
};

struct SincRoot {
  double target;
  double root;
  double tol;
  bool degenerate;  // target == 1 forces root -> 0
};

BoundReport trivial_bound(const BhgInstance& inst);  // C = h! h; h <= 20
double crt_constant(int h);                          // h >= 3
double cju_constant(int h);                          // h >= 2

// Unique x in (0, pi] with sin(x)/x = target, by bisection (sinc is
// strictly decreasing on [0, pi]).  target must lie in [0, 1].
SincRoot solve_sinc(double target, double tol);

// Right side of the defining equation of x_h: (4/(3 - cos(pi/h)) - 1)^h.
double g_lhs(int h);

// The two-frequency weight: coefficient (2/(3-cos(pi/h)))/cos(pi/h) at j=1
// and -(1 - 2/(3-cos(pi/h)))/cos(pi/h) at j=h; ell1 norm = 1/cos(pi/h).
trig::CosinePoly build_G(int h);

// Closed-form minimum of build_G(h) on [-pi/h, pi/h].
double g_min_closed_form(int h);

double thm11_constant(int h, double tol);

struct ImprovementCheck {
  int h;
  double lhs;    // sinc(pi sqrt(3/h))
  double rhs;    // g_lhs(h)
  bool holds;    // lhs < rhs
  double root;   // x_h
  double limit;  // pi sqrt(3/h)
  bool root_below_limit;
};
ImprovementCheck check_improvement_inequality(int h, double tol = 1e-12);

struct Prop31Report {
  BoundReport report;
  SincRoot root;
};
Prop31Report prop31_bound(double psi_value, const BhgInstance& inst, double tol);

// ---- B_3[g] two-case refinement ----------------------------------------

struct B3Options {
  int delta_grid_den = 128;  // cap grid: delta = j / den
  int m = 128;               // partition size for the v_j of H
  int capped_prefixes = 5;   // prefixes j = 1..P carry mass caps
  double tol = 1e-9;         // certification gap for the v_j
  double bracket_lo = 10.0;
  double bracket_hi = 16.0;
  double c_tol = 1e-6;       // bisection width on the constant
};

struct B3CaseEval {
  double c;                  // candidate constant
  std::vector<double> caps;  // prefix caps (72 (j/den) / c)^{1/3}
  std::vector<double> mass;  // optimal mass per symmetric pair
  double weighted_sum;       // capped LP minimum of sum mass_j v_j
  double implied_constant;   // 18/pi * sinc_root((w/2)^3)
};

struct B3Result {
  double constant;          // least c with implied(c) <= c
  double theorem_rounded;   // constant rounded up at one decimal
  B3CaseEval at_constant;
  std::vector<double> pair_values;  // certified lower bounds, 64 pairs
  int bisection_iters;
  std::string transcript;
};

// Certifies the pair minima of H(x) = 1.6cos x - 0.3cos 3x + 0.1cos 6x once,
// then answers capped-minimization queries; reusable by tests and the CLI.
class B3Engine {
 public:
  explicit B3Engine(const B3Options& opt = {});
  const B3Options& options() const { return opt_; }
  const std::vector<double>& pair_values() const { return pair_values_; }
  std::vector<double> caps(double c) const;
  // Exact LP minimum of sum mass_j v_j over the simplex under prefix caps;
  // with zero capped prefixes this is just min_j v_j.
  double weighted_min(double c, std::vector<double>* mass = nullptr) const;
  double implied_constant(double weighted_sum) const;
  B3CaseEval evaluate(double c) const;

 private:
  B3Options opt_;
  std::vector<double> pair_values_;
};

B3Result b3_refined_constant(const B3Options& opt = {});
B3Result b3_refined_with(const B3Engine& engine);  // reuse certified values

// Round x up at the given number of decimal digits (bounds stay valid).
double round_up_decimals(double x, int digits);

}  // namespace bhg::bounds

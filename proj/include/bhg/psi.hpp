#pragma once
// Lower bounds for the min-max quantity psi(N, K, h): certify value matrices
// v_{m,j}(F_k) for a finite family of ell1-normalized cosine polynomials,
// then solve min over the mass simplex of max over family members as an
// exact-rational linear program.  The LP relaxation is N-free; its value is
// a certified lower bound on psi for every N.

#include <iosfwd>
#include <string>
#include <vector>

#include "bhg/trig.hpp"

namespace bhg::psi {

struct FunctionFamily {
  int h = 2;
  int k_max = 1;  // frequency budget K
  std::vector<trig::CosinePoly> members;

  double target_ell1() const;  // 1/cos(pi/h)
  // Membership: every member has degree <= K and ell1 norm equal to
  // 1/cos(pi/h) within 1e-12.
  void validate() const;
};

struct ValueMatrix {
  int m = 0;
  double tol = 0.0;
  std::vector<std::vector<double>> rows;  // one row per member, m certified lower bounds
};

struct PsiEstimate {
  double value;  // certified lower bound (rounded toward -inf from the exact LP value)
  std::vector<double> alpha;        // worst-case mass distribution
  std::vector<int> active_members;  // rows attaining the max at the optimum
};

// Entry (k, j) = certified_min(member_k, I_j^m, tol).lower.  Honors the
// BHG_THREADS environment variable for cell-level parallelism; results do
// not depend on the thread count.
ValueMatrix value_matrix(const FunctionFamily& family, int m, double tol);

// Exact optimum of: minimize t s.t. t >= row_k . alpha for all k, alpha in
// the m-simplex.  Solved as a positive matrix game via single-phase simplex.
PsiEstimate minmax_lower_bound(const ValueMatrix& matrix);

// The canonical five-member family for h=3, K=6.
FunctionFamily theorem32_family();

PsiEstimate psi_lower_bound(const FunctionFamily& family, int m, double tol);

struct SearchResult {
  FunctionFamily family;
  PsiEstimate estimate;
  long evaluations;
};

// Coordinate descent over member coefficients; each candidate is
// renormalized to the family ell1 target before evaluation, and a move is
// accepted only if the certified LP value strictly improves.  budget counts
// candidate evaluations; exhausting it returns the best family so far.
SearchResult family_search(const FunctionFamily& seed, int m,
                           const std::vector<double>& steps, long budget,
                           double tol);

// Family files: header "h=<int> K=<int>", then one member per line as
// comma-separated coefficients.
FunctionFamily parse_family(std::istream& in);
std::string format_family(const FunctionFamily& family);

}  // namespace bhg::psi

#pragma once
// Ground truth for B_h[g]-sets: exact representation counting, verification,
// exhaustive and greedy extremal search, torus projection, edge-mass
// profiles, the exponential-sum cross-check, and windowed representation
// sums.
//
// Two counting conventions coexist on purpose: the B_h[g] property is
// defined through multisets, while the analytic machinery (exponential sums,
// windowed sums) uses ordered tuples.  RepProfile carries both.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bhg::sets {

struct IntSet {
  std::vector<std::int64_t> elements;  // strictly increasing, inside [1, N]
  std::int64_t n = 0;                  // ambient interval length N
  void validate() const;
  std::size_t size() const { return elements.size(); }
};

IntSet make_set(std::vector<std::int64_t> elements, std::int64_t n);

// Default guard on the h*N sum range of the counting tables.
inline constexpr std::int64_t kDefaultSumCap = 10'000'000;

struct RepProfile {
  int h = 0;
  std::int64_t max_sum = 0;
  std::vector<std::uint64_t> multiset;  // index n in [0, max_sum]
  std::vector<std::uint64_t> ordered;

  std::uint64_t multiset_count(std::int64_t n) const;
  std::uint64_t ordered_count(std::int64_t n) const;
  std::uint64_t multiset_total() const;
  std::uint64_t ordered_total() const;
  // Largest multiset count and the smallest n attaining it.
  std::pair<std::uint64_t, std::int64_t> max_multiset() const;
};

RepProfile rep_profile(const IntSet& a, int h,
                       std::int64_t sum_cap = kDefaultSumCap);

struct BhgVerdict {
  bool is_bhg;
  std::uint64_t max_count;
  std::int64_t witness;  // smallest n attaining max_count
};
BhgVerdict is_bhg(const IntSet& a, int h, int g);

struct SearchOutcome {
  IntSet best;
  bool optimal;  // search completed within the node budget
  std::uint64_t nodes;
};

// Branch and bound over candidates descending from N: include branch first,
// pruned by the incumbent, the remaining-candidate count, and the counting
// bound C(k+h-1, h) <= g h m for the part of the set below the current
// candidate m.  The incumbent is seeded with the greedy set.
SearchOutcome max_bhg_exact(std::int64_t n, int h, int g,
                            std::uint64_t budget = 2'000'000'000ULL);

// Scan 1..N, keeping each element iff the set stays B_h[g].
IntSet greedy_bhg(std::int64_t n, int h, int g);

// a -> (a - (N+1)/2) * 2 pi / (h N); lands strictly inside (-pi/h, pi/h).
std::vector<double> project_to_torus(const IntSet& a, int h);

struct MassProfile {
  double delta = 0.0;
  int l = 0;  // floor(1 / (2 delta))
  std::vector<double> alphas;
  double middle_mass = 0.0;
};

// Edge-mass profile: alpha_k = |C_k| / |A| where C_k is the k-th symmetric
// pair of width-delta*N edge slabs.  The right end of the k=1 slab is closed
// (N belongs to C_1) so the C_k plus the middle form a true partition of A.
MassProfile mass_profile(const IntSet& a, double delta);

struct Lemma22Report {
  int k = 0;
  double delta = 0.0;
  bool input_was_bhg = false;
  std::int64_t bhg_witness = 0;  // violating sum when input_was_bhg is false
  double alpha_k = 0.0;
  bool vacuous = false;  // alpha_k == 0: the inequality has no content
  double lhs = 0.0;      // |A|
  double rhs = 0.0;      // (72 g delta N / alpha_k^3)^{1/3}
  bool inequality_holds = false;
  bool sumset_contained = false;  // C_k+C_k+C_k inside the four 3*delta*N windows
  std::vector<std::int64_t> c_k;
};
Lemma22Report lemma22_check(const IntSet& a, int g, double delta, int k);

struct ExpSumReport {
  std::int64_t j = 0;
  double f_abs = 0.0;        // |sum_a e^{i a t_h j}|
  double q = 0.0;            // |A|^h / (h! h g N)
  double rhs_finite = 0.0;   // (h! g |sin(pi q - pi/(hN))| / sin(pi/(hN)))^{1/h}
  double margin = 0.0;       // rhs_finite - f_abs (reported, not asserted)
  double identity_gap = 0.0; // | |f|^h - |ghat(j)| |, ghat from rep counts
};
ExpSumReport expsum_check(const IntSet& a, int h, int g, std::int64_t j);

struct WindowCheck {
  int h = 0;
  std::int64_t h_window = 1;
  double mu = 0.0;
  double lhs = 0.0;          // sum over n of |R(n) - R(n-H) - mu|
  double rhs_classic = 0.0;  // L_h H |A|^h
  double rhs_psi = 0.0;      // psi^h L_h H |A|^h
  double ratio = 0.0;        // lhs / (H |A|^h)
  double best_mu = 0.0;      // exact L1 minimizer (a median of window counts)
  double best_mu_lhs = 0.0;
};
WindowCheck window_check(const IntSet& a, int h, std::int64_t h_window,
                         double mu, double psi_value);

// Set files: whitespace/newline-separated positive integers, optional
// "N=<int>" header line; N defaults to the maximum element.
IntSet parse_set(std::istream& in);
std::string format_set(const IntSet& a);

}  // namespace bhg::sets

#include "bhg/sets.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bhg/kernels.hpp"

namespace bhg::sets {

namespace {
constexpr double kPi = std::numbers::pi;

double factorial_d(int h) {
  double f = 1.0;
  for (int i = 2; i <= h; ++i) f *= i;
  return f;
}
}  // namespace

void IntSet::validate() const {
  if (n < 1) throw std::invalid_argument("IntSet: N must be >= 1");
  std::int64_t prev = 0;
  for (std::int64_t a : elements) {
    if (a < 1 || a > n)
      throw std::invalid_argument("IntSet: element outside [1, N]");
    if (a <= prev)
      throw std::invalid_argument("IntSet: elements must be strictly increasing");
    prev = a;
  }
}

IntSet make_set(std::vector<std::int64_t> elements, std::int64_t n) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  IntSet s{std::move(elements), n};
  s.validate();
  return s;
}

std::uint64_t RepProfile::multiset_count(std::int64_t n) const {
  return (n >= 0 && n <= max_sum) ? multiset[static_cast<std::size_t>(n)] : 0;
}

std::uint64_t RepProfile::ordered_count(std::int64_t n) const {
  return (n >= 0 && n <= max_sum) ? ordered[static_cast<std::size_t>(n)] : 0;
}

std::uint64_t RepProfile::multiset_total() const {
  std::uint64_t s = 0;
  for (std::uint64_t v : multiset) s += v;
  return s;
}

std::uint64_t RepProfile::ordered_total() const {
  std::uint64_t s = 0;
  for (std::uint64_t v : ordered) s += v;
  return s;
}

std::pair<std::uint64_t, std::int64_t> RepProfile::max_multiset() const {
  std::uint64_t best = 0;
  std::int64_t witness = 0;
  for (std::size_t n = 0; n < multiset.size(); ++n)
    if (multiset[n] > best) {
      best = multiset[n];
      witness = static_cast<std::int64_t>(n);
    }
  return {best, witness};
}

namespace {

// Incremental representation counter: multiset DP tables for sizes 0..h with
// O(h * max_sum) insert/erase of one element.  Used by the verifier, the
// greedy scan, and the branch-and-bound search.
class RepCounter {
 public:
  RepCounter(int h, std::int64_t max_sum, int g)
      : h_(h), g_(g), max_sum_(max_sum),
        dp_(static_cast<std::size_t>(h + 1) * (max_sum + 1), 0) {
    at(0, 0) = 1;
  }

  // Returns false (and still applies the update) if some size-h multiset
  // count exceeds g.
  bool add(std::int64_t a) {
    bool ok = true;
    for (int c = 1; c <= h_; ++c) {
      const std::uint64_t* below = level(c - 1);
      std::uint64_t* cur = level(c);
      for (std::int64_t s = a; s <= max_sum_; ++s) {
        cur[s] += below[s - a];
        if (c == h_ && cur[s] > static_cast<std::uint64_t>(g_)) ok = false;
      }
    }
    return ok;
  }

  void remove(std::int64_t a) {
    for (int c = h_; c >= 1; --c) {
      const std::uint64_t* below = level(c - 1);
      std::uint64_t* cur = level(c);
      for (std::int64_t s = a; s <= max_sum_; ++s) cur[s] -= below[s - a];
    }
  }

  const std::uint64_t* counts() const { return level(h_); }
  std::int64_t max_sum() const { return max_sum_; }

 private:
  std::uint64_t* level(int c) {
    return dp_.data() + static_cast<std::size_t>(c) * (max_sum_ + 1);
  }
  const std::uint64_t* level(int c) const {
    return dp_.data() + static_cast<std::size_t>(c) * (max_sum_ + 1);
  }
  std::uint64_t& at(int c, std::int64_t s) { return level(c)[s]; }

  int h_;
  int g_;
  std::int64_t max_sum_;
  std::vector<std::uint64_t> dp_;
};

void check_profile_pre(const IntSet& a, int h, std::int64_t sum_cap) {
  a.validate();
  if (h < 2) throw std::invalid_argument("rep_profile: h must be >= 2");
  if (a.elements.empty())
    throw std::invalid_argument("rep_profile: set must be nonempty");
  if (h * a.n > sum_cap)
    throw std::invalid_argument(
        "rep_profile: h*N exceeds the configured sum-range cap");
}

}  // namespace

RepProfile rep_profile(const IntSet& a, int h, std::int64_t sum_cap) {
  check_profile_pre(a, h, sum_cap);
  const std::int64_t max_sum = h * a.elements.back();

  RepProfile out;
  out.h = h;
  out.max_sum = max_sum;

  {  // multisets: nondecreasing tuples, one pass per element
    RepCounter counter(h, max_sum, std::numeric_limits<int>::max());
    for (std::int64_t e : a.elements) counter.add(e);
    out.multiset.assign(counter.counts(), counter.counts() + max_sum + 1);
  }

  {  // ordered tuples: h-fold convolution, two rolling levels
    std::vector<std::uint64_t> prev(static_cast<std::size_t>(max_sum) + 1, 0),
        cur(static_cast<std::size_t>(max_sum) + 1, 0);
    prev[0] = 1;
    for (int c = 1; c <= h; ++c) {
      std::fill(cur.begin(), cur.end(), 0);
      for (std::int64_t e : a.elements)
        for (std::int64_t s = e; s <= max_sum; ++s) cur[s] += prev[s - e];
      std::swap(prev, cur);
    }
    out.ordered = std::move(prev);
  }
  return out;
}

BhgVerdict is_bhg(const IntSet& a, int h, int g) {
  if (g < 1) throw std::invalid_argument("is_bhg: g must be >= 1");
  const RepProfile p = rep_profile(a, h);
  const auto [count, witness] = p.max_multiset();
  return {count <= static_cast<std::uint64_t>(g), count, witness};
}

IntSet greedy_bhg(std::int64_t n, int h, int g) {
  if (n < 1) throw std::invalid_argument("greedy_bhg: N must be >= 1");
  if (h < 2 || g < 1) throw std::invalid_argument("greedy_bhg: bad h or g");
  if (h * n > kDefaultSumCap)
    throw std::invalid_argument("greedy_bhg: h*N exceeds the sum-range cap");
  RepCounter counter(h, h * n, g);
  IntSet out{{}, n};
  for (std::int64_t a = 1; a <= n; ++a) {
    if (counter.add(a))
      out.elements.push_back(a);
    else
      counter.remove(a);
  }
  return out;
}

namespace {

struct Search {
  int h, g;
  std::int64_t n;
  std::uint64_t budget, nodes = 0;
  bool truncated = false;
  RepCounter counter;
  std::vector<std::int64_t> current, best;
  std::vector<std::int64_t> ub_count;  // by candidate ceiling m

  Search(int h_, int g_, std::int64_t n_, std::uint64_t budget_)
      : h(h_), g(g_), n(n_), budget(budget_), counter(h_, h_ * n_, g_) {
    // ub_count[m]: largest k with C(k+h-1, h) <= g h m; monotone in m.
    ub_count.assign(static_cast<std::size_t>(n) + 1, 0);
    std::int64_t k = 0;
    for (std::int64_t m = 1; m <= n; ++m) {
      const double limit = static_cast<double>(g) * h * m;
      while (true) {
        // C(k+h, h) for the next k
        double c = 1.0;
        for (int i = 1; i <= h; ++i) c = c * (k + i) / i;
        if (c <= limit)
          ++k;
        else
          break;
      }
      ub_count[static_cast<std::size_t>(m)] = k;
    }
  }

  void dfs(std::int64_t a) {
    if (truncated) return;
    if (++nodes > budget) {
      truncated = true;
      return;
    }
    if (static_cast<std::int64_t>(current.size()) >
        static_cast<std::int64_t>(best.size()))
      best = current;
    if (a == 0) return;
    const std::int64_t sz = static_cast<std::int64_t>(current.size());
    const std::int64_t incumbent = static_cast<std::int64_t>(best.size());
    if (sz + a <= incumbent) return;
    if (sz + ub_count[static_cast<std::size_t>(a)] <= incumbent) return;
    if (counter.add(a)) {
      current.push_back(a);
      dfs(a - 1);
      current.pop_back();
    }
    counter.remove(a);
    dfs(a - 1);
  }
};

}  // namespace

SearchOutcome max_bhg_exact(std::int64_t n, int h, int g, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("max_bhg_exact: N must be >= 1");
  if (h < 2 || g < 1) throw std::invalid_argument("max_bhg_exact: bad h or g");
  if (h * n > kDefaultSumCap)
    throw std::invalid_argument("max_bhg_exact: h*N exceeds the sum-range cap");

  Search search(h, g, n, budget);
  search.best = greedy_bhg(n, h, g).elements;  // warm incumbent
  search.dfs(n);

  std::sort(search.best.begin(), search.best.end());
  return {IntSet{std::move(search.best), n}, !search.truncated, search.nodes};
}

std::vector<double> project_to_torus(const IntSet& a, int h) {
  a.validate();
  if (h < 2) throw std::invalid_argument("project_to_torus: h must be >= 2");
  const double center = (static_cast<double>(a.n) + 1.0) / 2.0;
  const double scale = 2.0 * kPi / (static_cast<double>(h) * a.n);
  std::vector<double> out;
  out.reserve(a.elements.size());
  for (std::int64_t e : a.elements)
    out.push_back((static_cast<double>(e) - center) * scale);
  return out;
}

namespace {

// Piece index for the edge-slab partition: k in [1, l] for the k-th
// symmetric pair, 0 for the middle.  Left slab k covers ((k-1)dN, k dN],
// right slab k covers [N - k dN, N - (k-1) dN); left slabs are checked
// first, and the k=1 right slab is closed at N, so the pieces partition
// [1, N] exactly.
int slab_of(std::int64_t a, std::int64_t n, double delta, int l) {
  const double dn = delta * static_cast<double>(n);
  const double av = static_cast<double>(a);
  if (av <= static_cast<double>(l) * dn) {
    const int k = static_cast<int>(std::ceil(av / dn));
    return std::clamp(k, 1, l);
  }
  if (a == n) return 1;
  const double gap = static_cast<double>(n) - av;
  if (gap <= static_cast<double>(l) * dn) {
    const int k = static_cast<int>(std::ceil(gap / dn));
    return std::clamp(k, 1, l);
  }
  return 0;
}

}  // namespace

MassProfile mass_profile(const IntSet& a, double delta) {
  a.validate();
  if (a.elements.empty())
    throw std::invalid_argument("mass_profile: set must be nonempty");
  // delta = 1/4 is admitted (l = 2, empty middle); the cube bound itself
  // needs delta strictly below 1/4 and checks that separately.
  if (!(delta > 0.0 && delta <= 0.25))
    throw std::invalid_argument("mass_profile: delta must lie in (0, 1/4]");
  const int l = static_cast<int>(std::floor(1.0 / (2.0 * delta)));
  MassProfile out;
  out.delta = delta;
  out.l = l;
  out.alphas.assign(static_cast<std::size_t>(l), 0.0);
  std::size_t middle = 0;
  for (std::int64_t e : a.elements) {
    const int k = slab_of(e, a.n, delta, l);
    if (k == 0)
      ++middle;
    else
      out.alphas[static_cast<std::size_t>(k - 1)] += 1.0;
  }
  const double inv = 1.0 / static_cast<double>(a.size());
  for (double& v : out.alphas) v *= inv;
  out.middle_mass = static_cast<double>(middle) * inv;
  return out;
}

Lemma22Report lemma22_check(const IntSet& a, int g, double delta, int k) {
  a.validate();
  if (!(delta > 0.0 && delta < 0.25))
    throw std::invalid_argument("lemma22_check: delta must lie in (0, 1/4)");
  if (static_cast<double>(a.n) <= 2.0 / delta)
    throw std::invalid_argument("lemma22_check: requires N > 2/delta");
  const int l = static_cast<int>(std::floor(1.0 / (2.0 * delta)));
  if (k < 1 || k > l)
    throw std::invalid_argument("lemma22_check: k out of [1, l]");

  Lemma22Report rep;
  rep.k = k;
  rep.delta = delta;
  const BhgVerdict verdict = is_bhg(a, 3, g);
  rep.input_was_bhg = verdict.is_bhg;
  rep.bhg_witness = verdict.witness;
  if (!verdict.is_bhg) return rep;

  for (std::int64_t e : a.elements)
    if (slab_of(e, a.n, delta, l) == k) rep.c_k.push_back(e);
  rep.alpha_k = static_cast<double>(rep.c_k.size()) / static_cast<double>(a.size());
  rep.lhs = static_cast<double>(a.size());

  if (rep.c_k.empty()) {
    rep.vacuous = true;
    rep.rhs = std::numeric_limits<double>::infinity();
    rep.inequality_holds = true;
    rep.sumset_contained = true;  // empty sumset
    return rep;
  }

  if (rep.c_k.size() > 512)
    throw std::invalid_argument(
        "lemma22_check: C_k too large for triple-sum enumeration");
  rep.rhs = std::cbrt(72.0 * g * delta * static_cast<double>(a.n) /
                      (rep.alpha_k * rep.alpha_k * rep.alpha_k));
  rep.inequality_holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);

  const double nn = static_cast<double>(a.n);
  const double lo1 = 3.0 * (k - 1) * delta * nn, hi1 = 3.0 * k * delta * nn;
  const double lo2 = (1.0 + (k - 2) * delta) * nn, hi2 = (1.0 + (k + 1) * delta) * nn;
  const double lo3 = (2.0 - (k + 1) * delta) * nn, hi3 = (2.0 - (k - 2) * delta) * nn;
  const double lo4 = (3.0 - 3.0 * k * delta) * nn, hi4 = (3.0 - 3.0 * (k - 1) * delta) * nn;
  rep.sumset_contained = true;
  for (std::int64_t x : rep.c_k)
    for (std::int64_t y : rep.c_k)
      for (std::int64_t z : rep.c_k) {
        const double s = static_cast<double>(x + y + z);
        const bool in = (s >= lo1 && s <= hi1) || (s >= lo2 && s <= hi2) ||
                        (s >= lo3 && s <= hi3) || (s >= lo4 && s <= hi4);
        if (!in) rep.sumset_contained = false;
      }
  return rep;
}

ExpSumReport expsum_check(const IntSet& a, int h, int g, std::int64_t j) {
  const BhgVerdict verdict = is_bhg(a, h, g);
  if (!verdict.is_bhg)
    throw std::invalid_argument(
        "expsum_check: set is not B_h[g]; witness sum n=" +
        std::to_string(verdict.witness) + " has " +
        std::to_string(verdict.max_count) + " representations");
  const std::int64_t hn = h * a.n;
  if (j < 1 || j >= hn)
    throw std::invalid_argument("expsum_check: j must lie in [1, hN-1]");

  ExpSumReport rep;
  rep.j = j;
  const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(hn);

  std::vector<double> elems(a.elements.begin(), a.elements.end());
  const kernels::Complex2 f = kernels::expsum(elems, t);
  rep.f_abs = std::hypot(f.re, f.im);

  const double size = static_cast<double>(a.size());
  const double hfact = factorial_d(h);
  rep.q = std::pow(size, h) / (hfact * h * g * static_cast<double>(a.n));
  const double rhs_h = hfact * g *
                       std::fabs(std::sin(kPi * rep.q - kPi / hn)) /
                       std::sin(kPi / hn);
  rep.rhs_finite = std::pow(rhs_h, 1.0 / h);
  rep.margin = rep.rhs_finite - rep.f_abs;

  // Independent route: ghat(j) = sum_n (h! g - r_h(n)) e^{2 pi i n j / hN}
  // from the ordered representation counts; |f|^h must equal |ghat(j)|.
  const RepProfile prof = rep_profile(a, h);
  std::vector<double> ns(static_cast<std::size_t>(hn));
  for (std::int64_t n = 1; n <= hn; ++n)
    ns[static_cast<std::size_t>(n - 1)] = static_cast<double>(n) * t;
  std::vector<double> sn(ns.size()), cn(ns.size());
  kernels::sincos_batch(ns, sn, cn);
  double gr = 0.0, gi = 0.0;
  for (std::int64_t n = 1; n <= hn; ++n) {
    const double w = hfact * g - static_cast<double>(prof.ordered_count(n));
    gr += w * cn[static_cast<std::size_t>(n - 1)];
    gi += w * sn[static_cast<std::size_t>(n - 1)];
  }
  rep.identity_gap =
      std::fabs(std::pow(rep.f_abs, h) - std::hypot(gr, gi));
  return rep;
}

WindowCheck window_check(const IntSet& a, int h, std::int64_t h_window,
                         double mu, double psi_value) {
  a.validate();
  if (h < 2) throw std::invalid_argument("window_check: h must be >= 2");
  if (h_window < 1)
    throw std::invalid_argument("window_check: window length must be >= 1");

  const RepProfile prof = rep_profile(a, h);
  const std::int64_t hn = h * a.n;
  // R(m) = sum_{n <= m} r_h(n); flat at |A|^h beyond hN.
  std::vector<double> cum(static_cast<std::size_t>(hn) + 1, 0.0);
  {
    std::uint64_t run = 0;
    for (std::int64_t n = 0; n <= hn; ++n) {
      run += prof.ordered_count(n);
      cum[static_cast<std::size_t>(n)] = static_cast<double>(run);
    }
  }
  auto big_r = [&](std::int64_t m) -> double {
    if (m < 0) return 0.0;
    if (m > hn) return cum[static_cast<std::size_t>(hn)];
    return cum[static_cast<std::size_t>(m)];
  };

  WindowCheck out;
  out.h = h;
  out.h_window = h_window;
  out.mu = mu;

  std::vector<double> windows;
  windows.reserve(static_cast<std::size_t>(hn + h_window - h + 1));
  double lhs = 0.0;
  for (std::int64_t n = h; n <= hn + h_window; ++n) {
    const double w = big_r(n) - big_r(n - h_window);
    windows.push_back(w);
    lhs += std::fabs(w - mu);
  }
  out.lhs = lhs;

  const double size_h = std::pow(static_cast<double>(a.size()), h);
  const double lh = (h == 2) ? 4.0 / ((kPi + 2.0) * (kPi + 2.0))
                             : std::pow(std::cos(kPi / h), h);
  out.rhs_classic = lh * static_cast<double>(h_window) * size_h;
  out.rhs_psi = std::pow(psi_value, h) * out.rhs_classic;
  out.ratio = lhs / (static_cast<double>(h_window) * size_h);

  // The L1-minimizing mu is a median of the window counts.
  std::vector<double> sorted = windows;
  std::sort(sorted.begin(), sorted.end());
  out.best_mu = sorted[sorted.size() / 2];
  double best_lhs = 0.0;
  for (double w : windows) best_lhs += std::fabs(w - out.best_mu);
  out.best_mu_lhs = best_lhs;
  return out;
}

IntSet parse_set(std::istream& in) {
  std::vector<std::int64_t> elems;
  std::int64_t n = 0;
  bool have_n = false;
  std::string tok;
  bool first = true;
  while (in >> tok) {
    if (first && tok.rfind("N=", 0) == 0) {
      n = std::stoll(tok.substr(2));
      have_n = true;
      first = false;
      continue;
    }
    first = false;
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(tok, &pos);
    if (pos != tok.size())
      throw std::invalid_argument("parse_set: bad token '" + tok + "'");
    elems.push_back(v);
  }
  if (elems.empty()) throw std::invalid_argument("parse_set: empty set");
  if (!have_n) n = *std::max_element(elems.begin(), elems.end());
  return make_set(std::move(elems), n);
}

std::string format_set(const IntSet& a) {
  std::ostringstream os;
  os << "N=" << a.n << "\n";
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    if (i) os << ' ';
    os << a.elements[i];
  }
  os << "\n";
  return os.str();
}

}  // namespace bhg::sets

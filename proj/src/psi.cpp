#include "bhg/psi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <istream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bhg/lp.hpp"

namespace bhg::psi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMembershipTol = 1e-12;

int thread_count() {
  if (const char* env = std::getenv("BHG_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return std::min(v, 64);
  }
  return 1;
}

}  // namespace

double FunctionFamily::target_ell1() const { return 1.0 / std::cos(kPi / h); }

void FunctionFamily::validate() const {
  if (h < 2) throw std::invalid_argument("FunctionFamily: h must be >= 2");
  if (k_max < 1) throw std::invalid_argument("FunctionFamily: K must be >= 1");
  if (members.empty())
    throw std::invalid_argument("FunctionFamily: need at least one member");
  const double target = target_ell1();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].degree() > k_max)
      throw std::invalid_argument("FunctionFamily: member " +
                                  std::to_string(i + 1) + " exceeds K");
    if (std::fabs(members[i].ell1_norm() - target) > kMembershipTol)
      throw std::invalid_argument(
          "FunctionFamily: member " + std::to_string(i + 1) +
          " has ell1 norm != 1/cos(pi/h)");
  }
}

ValueMatrix value_matrix(const FunctionFamily& family, int m, double tol) {
  family.validate();
  if (m < 1) throw std::invalid_argument("value_matrix: m must be >= 1");
  const auto cells = trig::partition(m, family.h);
  ValueMatrix out;
  out.m = m;
  out.tol = tol;
  out.rows.assign(family.members.size(), std::vector<double>(m, 0.0));

  auto compute_cell = [&](std::size_t k, int j) {
    try {
      out.rows[k][j] = trig::certified_min(family.members[k], cells[j], tol).lower;
    } catch (const trig::CertificationError& e) {
      throw trig::CertificationError("value_matrix cell (member " +
                                     std::to_string(k + 1) + ", interval " +
                                     std::to_string(j + 1) + "): " + e.what());
    }
  };

  const int threads = thread_count();
  const std::size_t total = family.members.size() * static_cast<std::size_t>(m);
  if (threads == 1 || total < 8) {
    for (std::size_t k = 0; k < family.members.size(); ++k)
      for (int j = 0; j < m; ++j) compute_cell(k, j);
    return out;
  }
  std::vector<std::future<void>> futs;
  for (int t = 0; t < threads; ++t) {
    futs.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t idx = static_cast<std::size_t>(t); idx < total;
           idx += threads)
        compute_cell(idx / m, static_cast<int>(idx % m));
    }));
  }
  for (auto& f : futs) f.get();
  return out;
}

PsiEstimate minmax_lower_bound(const ValueMatrix& matrix) {
  const std::size_t rows = matrix.rows.size();
  if (rows == 0 || matrix.m < 1)
    throw std::invalid_argument("minmax_lower_bound: empty matrix");
  const std::size_t m = static_cast<std::size_t>(matrix.m);
  for (const auto& r : matrix.rows)
    if (r.size() != m)
      throw std::invalid_argument("minmax_lower_bound: ragged matrix");

  // Shift to a positive matrix M' = M + sigma, then the game value is
  // 1 / max{ sum x : M' x <= 1, x >= 0 } and alpha = x / sum x.
  double lo = matrix.rows[0][0];
  for (const auto& r : matrix.rows)
    for (double v : r) lo = std::min(lo, v);
  const double sigma = 1.0 - lo;
  const lp::Rational rsigma = lp::rational_from_double(sigma);

  std::vector<std::vector<lp::Rational>> a(rows,
                                           std::vector<lp::Rational>(m));
  for (std::size_t k = 0; k < rows; ++k)
    for (std::size_t j = 0; j < m; ++j)
      a[k][j] = lp::rational_from_double(matrix.rows[k][j]) + rsigma;
  const std::vector<lp::Rational> b(rows, lp::Rational(1));
  const std::vector<lp::Rational> c(m, lp::Rational(1));

  const lp::Solution sol = lp::simplex_max(a, b, c);
  if (sol.value <= 0)
    throw std::runtime_error("minmax_lower_bound: degenerate game value");
  const lp::Rational value = lp::Rational(1) / sol.value - rsigma;

  PsiEstimate est;
  est.value = lp::to_double_floor(value);
  est.alpha.resize(m);
  for (std::size_t j = 0; j < m; ++j)
    est.alpha[j] = (sol.x[j] / sol.value).convert_to<double>();
  for (std::size_t k = 0; k < rows; ++k) {
    lp::Rational dot(0);
    for (std::size_t j = 0; j < m; ++j) dot += a[k][j] * sol.x[j];
    if (dot == 1) est.active_members.push_back(static_cast<int>(k));
  }
  return est;
}

FunctionFamily theorem32_family() {
  FunctionFamily fam;
  fam.h = 3;
  fam.k_max = 6;
  fam.members = {
      trig::CosinePoly({1.7, 0.0, -0.3}),
      trig::CosinePoly({1.6, 0.0, -0.3, 0.0, 0.0, 0.1}),
      trig::CosinePoly({1.5, 0.0, -0.4, 0.0, 0.0, 0.1}),
      trig::CosinePoly({1.2, 0.0, -0.6, 0.0, 0.0, 0.2}),
      trig::CosinePoly({0.0, 0.0, -2.0}),
  };
  return fam;
}

PsiEstimate psi_lower_bound(const FunctionFamily& family, int m, double tol) {
  return minmax_lower_bound(value_matrix(family, m, tol));
}

namespace {

// Renormalize coefficients to the family ell1 target; empty (all-zero)
// candidates are rejected by returning false.
bool renormalize(std::vector<double>& coeffs, double target) {
  double l1 = 0.0;
  for (double c : coeffs) l1 += std::fabs(c);
  if (l1 == 0.0 || !std::isfinite(l1)) return false;
  const double s = target / l1;
  for (double& c : coeffs) c *= s;
  return true;
}

std::vector<double> padded_coeffs(const trig::CosinePoly& p, int k_max) {
  std::vector<double> c = p.coeffs();
  c.resize(static_cast<std::size_t>(k_max), 0.0);
  return c;
}

}  // namespace

SearchResult family_search(const FunctionFamily& seed, int m,
                           const std::vector<double>& steps, long budget,
                           double tol) {
  seed.validate();
  if (steps.empty())
    throw std::invalid_argument("family_search: empty step grid");

  const auto cells = trig::partition(m, seed.h);
  const double target = seed.target_ell1();

  auto certify_row = [&](const trig::CosinePoly& p) {
    std::vector<double> row(m);
    for (int j = 0; j < m; ++j)
      row[j] = trig::certified_min(p, cells[j], tol).lower;
    return row;
  };

  FunctionFamily best = seed;
  ValueMatrix matrix;
  matrix.m = m;
  matrix.tol = tol;
  for (const auto& member : best.members)
    matrix.rows.push_back(certify_row(member));
  PsiEstimate best_est = minmax_lower_bound(matrix);

  long evals = 0;
  bool improved = true;
  while (improved && budget > 0) {
    improved = false;
    for (std::size_t k = 0; k < best.members.size(); ++k) {
      for (int i = 0; i < best.k_max; ++i) {
        for (double s : steps) {
          if (budget <= 0) break;
          std::vector<double> cand = padded_coeffs(best.members[k], best.k_max);
          cand[static_cast<std::size_t>(i)] += s;
          if (!renormalize(cand, target)) continue;
          --budget;
          ++evals;
          trig::CosinePoly candidate(cand);
          std::vector<double> row = certify_row(candidate);
          std::vector<double> saved = matrix.rows[k];
          matrix.rows[k] = row;
          const PsiEstimate est = minmax_lower_bound(matrix);
          if (est.value > best_est.value + 1e-12) {
            best.members[k] = std::move(candidate);
            best_est = est;
            improved = true;
          } else {
            matrix.rows[k] = std::move(saved);
          }
        }
      }
    }
  }
  return {std::move(best), std::move(best_est), evals};
}

FunctionFamily parse_family(std::istream& in) {
  FunctionFamily fam;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    if (!have_header) {
      int h = 0, k = 0;
      if (std::sscanf(line.c_str(), "h=%d K=%d", &h, &k) != 2)
        throw std::invalid_argument(
            "parse_family: expected header \"h=<int> K=<int>\"");
      fam.h = h;
      fam.k_max = k;
      have_header = true;
      continue;
    }
    fam.members.push_back(trig::parse_poly(line));
  }
  if (!have_header)
    throw std::invalid_argument("parse_family: missing header line");
  fam.validate();
  return fam;
}

std::string format_family(const FunctionFamily& family) {
  std::ostringstream os;
  os << "h=" << family.h << " K=" << family.k_max << "\n";
  for (const auto& member : family.members) os << member.to_string() << "\n";
  return os.str();
}

}  // namespace bhg::psi

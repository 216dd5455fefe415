#include "bhg/lp.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace bhg::lp {

using Int = boost::multiprecision::cpp_int;

Rational rational_from_double(double d) {
  if (!std::isfinite(d)) throw std::invalid_argument("rational_from_double: non-finite");
  if (d == 0.0) return Rational(0);
  int e = 0;
  const double m = std::frexp(d, &e);  // d = m * 2^e, |m| in [0.5, 1)
  const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  e -= 53;
  Rational r(mant);
  if (e >= 0)
    r *= Rational(Int(1) << e);
  else
    r /= Rational(Int(1) << -e);
  return r;
}

namespace {

double adjust_down(double d, const Rational& r) {
  while (rational_from_double(d) > r)
    d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

double adjust_up(double d, const Rational& r) {
  while (rational_from_double(d) < r)
    d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

}  // namespace

double to_double_floor(const Rational& r) {
  return adjust_down(r.convert_to<double>(), r);
}

double to_double_ceil(const Rational& r) {
  return adjust_up(r.convert_to<double>(), r);
}

Solution simplex_max(const std::vector<std::vector<Rational>>& A,
                     const std::vector<Rational>& b,
                     const std::vector<Rational>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw std::invalid_argument("simplex_max: |b| != rows(A)");
  for (const auto& row : A)
    if (row.size() != n) throw std::invalid_argument("simplex_max: ragged A");
  for (const auto& bi : b)
    if (bi < 0) throw std::invalid_argument("simplex_max: b must be >= 0");

  // Tableau: columns [structural n | slack m | rhs]; last row is the
  // objective in reduced-cost form (z_j - c_j), value in the rhs cell.
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(cols, 0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = A[i][j];
    t[i][n + i] = 1;
    t[i][cols - 1] = b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -c[j];

  for (;;) {
    // Bland: entering = lowest-index column with negative reduced cost.
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j)
      if (t[m][j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;  // optimal

    // Leaving: min ratio, ties by low basis index (Bland).
    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols - 1] / t[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw std::runtime_error("simplex_max: unbounded");

    // Pivot.
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const Rational f = t[i][enter];
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  Solution sol;
  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = t[i][cols - 1];
  sol.value = t[m][cols - 1];
  return sol;
}

}  // namespace bhg::lp

#include <doctest.h>

#include <random>

#include "bhg/lp.hpp"

using namespace bhg::lp;

namespace {
Rational rat(double d) { return rational_from_double(d); }
}  // namespace

TEST_CASE("rational_from_double is exact") {
  CHECK(rat(0.5) == Rational(1, 2));
  CHECK(rat(-0.75) == Rational(-3, 4));
  CHECK(rat(3.0) == Rational(3));
  CHECK(rat(0.0) == Rational(0));
  // 0.1 is not 1/10 in binary; round-trip through double must be identity.
  const Rational r = rat(0.1);
  CHECK(r != Rational(1, 10));
  CHECK(r.convert_to<double>() == 0.1);
}

TEST_CASE("floor/ceil double conversion brackets the rational") {
  const Rational r = Rational(1) / Rational(3);
  const double lo = to_double_floor(r);
  const double hi = to_double_ceil(r);
  CHECK(rat(lo) <= r);
  CHECK(rat(hi) >= r);
  CHECK(hi - lo <= 1e-16);
}

TEST_CASE("simplex: basic maximization") {
  // max x + y st x <= 1, y <= 2
  const auto sol = simplex_max({{Rational(1), Rational(0)},
                                {Rational(0), Rational(1)}},
                               {Rational(1), Rational(2)},
                               {Rational(1), Rational(1)});
  CHECK(sol.value == Rational(3));
  CHECK(sol.x[0] == Rational(1));
  CHECK(sol.x[1] == Rational(2));
}

TEST_CASE("simplex: binding mix") {
  // max 3x + 2y st x + y <= 4, x + 3y <= 6; vertices give max 12 at (4, 0)
  const auto sol = simplex_max({{Rational(1), Rational(1)},
                                {Rational(1), Rational(3)}},
                               {Rational(4), Rational(6)},
                               {Rational(3), Rational(2)});
  CHECK(sol.value == Rational(12));
  CHECK(sol.x[0] == Rational(4));
  CHECK(sol.x[1] == Rational(0));
}

TEST_CASE("simplex: interior-vertex optimum") {
  // max 2x + 3y st x + y <= 4, x + 3y <= 6: optimum 9 at (3, 1)
  const auto sol = simplex_max({{Rational(1), Rational(1)},
                                {Rational(1), Rational(3)}},
                               {Rational(4), Rational(6)},
                               {Rational(2), Rational(3)});
  CHECK(sol.value == Rational(9));
  CHECK(sol.x[0] == Rational(3));
  CHECK(sol.x[1] == Rational(1));
}

TEST_CASE("simplex: degenerate pivots terminate (Bland)") {
  // A classic cycling-prone instance; Bland's rule must terminate.
  const auto sol = simplex_max(
      {{Rational(1, 2), Rational(-11, 2), Rational(-5, 2), Rational(9)},
       {Rational(1, 2), Rational(-3, 2), Rational(-1, 2), Rational(1)},
       {Rational(1), Rational(0), Rational(0), Rational(0)}},
      {Rational(0), Rational(0), Rational(1)},
      {Rational(10), Rational(-57), Rational(-9), Rational(-24)});
  CHECK(sol.value == Rational(1));
}

TEST_CASE("simplex: unbounded detection") {
  CHECK_THROWS_AS(simplex_max({{Rational(-1)}}, {Rational(1)}, {Rational(1)}),
                  std::runtime_error);
}

TEST_CASE("simplex: shape validation") {
  CHECK_THROWS_AS(simplex_max({{Rational(1)}}, {Rational(-1)}, {Rational(1)}),
                  std::invalid_argument);
}

TEST_CASE("simplex: random instances respect feasibility and optimality") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-8, 12);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + trial % 4, n = 1 + (trial / 3) % 5;
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n));
    std::vector<Rational> b(m), c(n);
    for (auto& row : a)
      for (auto& v : row) v = Rational(num(rng));
    for (auto& v : b) v = Rational(std::abs(num(rng)));
    for (auto& v : c) v = Rational(num(rng));
    // Keep it bounded: add a box row sum x_j <= 20.
    a.emplace_back(n, Rational(1));
    b.emplace_back(20);

    const auto sol = simplex_max(a, b, c);
    // Feasibility of the reported point, exactly.
    for (std::size_t i = 0; i < a.size(); ++i) {
      Rational dot(0);
      for (std::size_t j = 0; j < n; ++j) dot += a[i][j] * sol.x[j];
      REQUIRE(dot <= b[i]);
    }
    Rational obj(0);
    for (std::size_t j = 0; j < n; ++j) obj += c[j] * sol.x[j];
    REQUIRE(obj == sol.value);
    // No random feasible point beats it.
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int probe = 0; probe < 200; ++probe) {
      std::vector<Rational> x(n);
      for (auto& v : x) v = rat(frac(rng) * 3.0);
      bool feasible = true;
      for (std::size_t i = 0; i < a.size() && feasible; ++i) {
        Rational dot(0);
        for (std::size_t j = 0; j < n; ++j) dot += a[i][j] * x[j];
        feasible = dot <= b[i];
      }
      if (!feasible) continue;
      Rational val(0);
      for (std::size_t j = 0; j < n; ++j) val += c[j] * x[j];
      REQUIRE(val <= sol.value);
    }
  }
}

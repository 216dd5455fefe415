#pragma once
// Small dense primal simplex over exact rationals.  Instances here are tiny
// (at most a few hundred columns), so exactness costs nothing and removes
// every tolerance question from the optimization layer: matrix entries are
// doubles, hence exactly representable rationals.

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bhg::lp {

using Rational = boost::multiprecision::cpp_rational;

Rational rational_from_double(double d);  // exact
double to_double_floor(const Rational& r);
double to_double_ceil(const Rational& r);

struct Solution {
  Rational value;
  std::vector<Rational> x;
};

// maximize c.x  subject to  A x <= b, x >= 0, with b >= 0 entrywise (slack
// basis feasible).  Bland's rule guarantees termination.  Throws
// std::invalid_argument on malformed input and std::runtime_error if the
// problem is unbounded.
Solution simplex_max(const std::vector<std::vector<Rational>>& A,
                     const std::vector<Rational>& b,
                     const std::vector<Rational>& c);

}  // namespace bhg::lp

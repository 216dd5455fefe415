#pragma once
// Certified one-sided evaluation and minimization of finite cosine series
// F(x) = sum_{j=1..K} c_j cos(jx) over closed intervals.
//
// The certificate is elementary: sample midpoints of a subdivision of width
// w, and use the global Lipschitz constant L = sum j|c_j| to push every
// sample down to a rigorous cell lower bound f(mid) - L w/2.  Cells that
// cannot be excluded against the incumbent are bisected; child midpoints are
// within w/4 of the parent's, so a child's bound never drops below its
// parent's and the certified lower bound is monotone in the refinement.
// Floating-point evaluation error is absorbed by subtracting twice the
// static kernel bound, which keeps both claims sound:
//   lower <= true minimum, and lower <= eval(x) for every x in the interval.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhg::trig {

class CosinePoly {
 public:
  CosinePoly() = default;
  explicit CosinePoly(std::vector<double> coeffs);

  // Coefficient of cos(j x); j in [1, degree()].
  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()); }

  double eval(double x) const;
  void eval_batch(std::span<const double> x, std::span<double> y) const;

  double ell1_norm() const;       // sum |c_j|
  double derivative_sup() const;  // sum j |c_j|, a sup of |F'| on R
  double eval_abs_error() const;  // static bound on |eval - exact|

  std::string to_string() const;  // "c1,c2,...,cK"

 private:
  std::vector<double> coeffs_;
};

struct Interval {
  double lo = 0.0, hi = 0.0;
  Interval() = default;
  Interval(double lo_, double hi_);
  double width() const { return hi - lo; }
};

struct CertifiedMin {
  double lower;    // rigorous lower bound on min over the interval
  double upper;    // eval at the best sampled point
  double witness;  // argmin candidate (the best sampled point)
  double tol;      // requested gap
};

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gap-closing budget: bisection rounds before giving up.  Running out means
// tol is below what double evaluation can certify; that is an error, never a
// silently loose bound.
inline constexpr int kMaxRefineRounds = 40;

CertifiedMin certified_min(const CosinePoly& poly, Interval iv, double tol);

// The m uniform subintervals of [-pi/h, pi/h]; consecutive intervals share
// endpoints exactly and the j-th right endpoint is pi*(2j/m - 1)/h.
std::vector<Interval> partition(int m, int h);

// Text forms: polynomials as "c1,c2,...,cK"; interval endpoints accept plain
// decimals and pi literals ("pi", "-pi/3", "2pi/3").
CosinePoly parse_poly(const std::string& text);
double parse_angle(const std::string& token);
Interval parse_interval(const std::string& text);

}  // namespace bhg::trig

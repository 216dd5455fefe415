#include "bhg/trig.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "bhg/kernels.hpp"

namespace bhg::trig {

namespace {
constexpr double kPi = std::numbers::pi;

// Guard against refinement queues degenerating (tol far below certifiable).
constexpr std::size_t kMaxCells = 1u << 22;
}  // namespace

CosinePoly::CosinePoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw std::invalid_argument("CosinePoly: need at least one coefficient");
  for (double c : coeffs_)
    if (!std::isfinite(c))
      throw std::invalid_argument("CosinePoly: non-finite coefficient");
}

double CosinePoly::eval(double x) const {
  double y;
  kernels::cospoly_eval_batch(coeffs_, std::span<const double>(&x, 1),
                              std::span<double>(&y, 1));
  return y;
}

void CosinePoly::eval_batch(std::span<const double> x,
                            std::span<double> y) const {
  kernels::cospoly_eval_batch(coeffs_, x, y);
}

double CosinePoly::ell1_norm() const {
  double s = 0.0;
  for (double c : coeffs_) s += std::fabs(c);
  return s;
}

double CosinePoly::derivative_sup() const {
  double s = 0.0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    s += static_cast<double>(j + 1) * std::fabs(coeffs_[j]);
  return s;
}

double CosinePoly::eval_abs_error() const {
  return kernels::cospoly_abs_error(coeffs_);
}

std::string CosinePoly::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (j) os << ',';
    os << coeffs_[j];
  }
  return os.str();
}

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi)
    throw std::invalid_argument("Interval: need finite lo <= hi");
}

namespace {

struct Cell {
  double lo, hi;
  double bound;  // f(mid) - L*(hi-lo)/2 - 2*abs_err
};

}  // namespace

CertifiedMin certified_min(const CosinePoly& poly, Interval iv, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("certified_min: tol must be > 0");
  const double lipschitz = poly.derivative_sup();
  const double abs_err = poly.eval_abs_error();

  double best_upper = std::numeric_limits<double>::infinity();
  double witness = iv.lo;
  auto consider = [&](double x, double v) {
    if (v < best_upper) {
      best_upper = v;
      witness = x;
    }
  };

  {  // endpoint samples sharpen the incumbent at boundary minima
    const double xs[2] = {iv.lo, iv.hi};
    double vs[2];
    poly.eval_batch(xs, vs);
    consider(iv.lo, vs[0]);
    if (iv.hi != iv.lo) consider(iv.hi, vs[1]);
  }

  if (iv.lo == iv.hi || lipschitz == 0.0) {
    const double lower = best_upper - 2.0 * abs_err;
    if (best_upper - lower > tol)
      throw CertificationError(
          "certified_min: tol below evaluation precision for this polynomial");
    return {lower, best_upper, witness, tol};
  }

  // Initial uniform subdivision; midpoints evaluated in one batch.
  const int n0 = 32;
  std::vector<Cell> cells;
  cells.reserve(n0);
  std::vector<double> mids(n0), vals(n0);
  const double w0 = iv.width() / n0;
  for (int i = 0; i < n0; ++i) {
    const double lo = iv.lo + w0 * i;
    const double hi = (i + 1 == n0) ? iv.hi : iv.lo + w0 * (i + 1);
    cells.push_back({lo, hi, 0.0});
    mids[i] = 0.5 * (lo + hi);
  }
  poly.eval_batch(mids, vals);
  for (int i = 0; i < n0; ++i) {
    consider(mids[i], vals[i]);
    cells[i].bound =
        vals[i] - 0.5 * lipschitz * (cells[i].hi - cells[i].lo) - 2.0 * abs_err;
  }

  std::vector<Cell> next;
  std::vector<std::size_t> fresh;
  for (int round = 0; round <= kMaxRefineRounds; ++round) {
    double lower = std::numeric_limits<double>::infinity();
    for (const Cell& c : cells) lower = std::min(lower, c.bound);
    if (best_upper - lower <= tol)
      return {lower, best_upper, witness, tol};
    if (round == kMaxRefineRounds) break;

    // Bisect every cell that cannot be excluded against the incumbent.  The
    // blocker rule uses no tol slack so the refinement trajectory, and hence
    // the certified lower bound, does not depend on tol.
    next.clear();
    mids.clear();
    fresh.clear();
    for (const Cell& c : cells) {
      if (c.bound >= best_upper) {
        next.push_back(c);
        continue;
      }
      const double mid = 0.5 * (c.lo + c.hi);
      fresh.push_back(next.size());
      next.push_back({c.lo, mid, c.bound});
      mids.push_back(0.5 * (c.lo + mid));
      fresh.push_back(next.size());
      next.push_back({mid, c.hi, c.bound});
      mids.push_back(0.5 * (mid + c.hi));
    }
    if (next.size() > kMaxCells)
      throw CertificationError(
          "certified_min: refinement exceeded cell budget; tol too small");
    vals.resize(mids.size());
    poly.eval_batch(mids, vals);
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      Cell& c = next[fresh[i]];
      consider(mids[i], vals[i]);
      const double b =
          vals[i] - 0.5 * lipschitz * (c.hi - c.lo) - 2.0 * abs_err;
      // A child's midpoint sits within w/4 of the parent's, so the parent
      // bound stays valid for the child; taking the max keeps the certified
      // lower bound exactly monotone under refinement.
      c.bound = std::max(b, c.bound);
    }
    cells.swap(next);
  }

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "certified_min: gap did not close to tol=%g within %d rounds "
                "(interval [%.17g, %.17g])",
                tol, kMaxRefineRounds, iv.lo, iv.hi);
  throw CertificationError(buf);
}

std::vector<Interval> partition(int m, int h) {
  if (m < 1) throw std::invalid_argument("partition: m must be >= 1");
  if (h < 2) throw std::invalid_argument("partition: h must be >= 2");
  std::vector<Interval> out;
  out.reserve(m);
  auto endpoint = [&](int j) {
    return kPi * (2.0 * j / m - 1.0) / h;
  };
  for (int j = 1; j <= m; ++j) out.emplace_back(endpoint(j - 1), endpoint(j));
  return out;
}

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

}  // namespace

CosinePoly parse_poly(const std::string& text) {
  std::vector<double> coeffs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = strip(tok);
    if (tok.empty()) throw std::invalid_argument("parse_poly: empty coefficient");
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size())
      throw std::invalid_argument("parse_poly: bad coefficient '" + tok + "'");
    coeffs.push_back(v);
  }
  if (coeffs.empty()) throw std::invalid_argument("parse_poly: no coefficients");
  return CosinePoly(std::move(coeffs));
}

double parse_angle(const std::string& token) {
  std::string t = strip(token);
  if (t.empty()) throw std::invalid_argument("parse_angle: empty token");
  const std::size_t pipos = t.find("pi");
  if (pipos == std::string::npos) {
    std::size_t pos = 0;
    double v = std::stod(t, &pos);
    if (pos != t.size())
      throw std::invalid_argument("parse_angle: bad token '" + token + "'");
    return v;
  }
  // [sign][num] pi [/den]
  double mult = 1.0;
  std::string head = strip(t.substr(0, pipos));
  if (head == "-") {
    mult = -1.0;
  } else if (!head.empty() && head != "+") {
    std::size_t pos = 0;
    mult = std::stod(head, &pos);
    if (pos != head.size())
      throw std::invalid_argument("parse_angle: bad token '" + token + "'");
  }
  double den = 1.0;
  std::string tail = strip(t.substr(pipos + 2));
  if (!tail.empty()) {
    if (tail[0] != '/')
      throw std::invalid_argument("parse_angle: bad token '" + token + "'");
    std::string d = strip(tail.substr(1));
    std::size_t pos = 0;
    den = std::stod(d, &pos);
    if (pos != d.size() || den == 0.0)
      throw std::invalid_argument("parse_angle: bad token '" + token + "'");
  }
  return mult * kPi / den;
}

Interval parse_interval(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("parse_interval: expected \"lo,hi\"");
  return Interval(parse_angle(text.substr(0, comma)),
                  parse_angle(text.substr(comma + 1)));
}

}  // namespace bhg::trig

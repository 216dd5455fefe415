#include "bhg/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bhg/lp.hpp"

namespace bhg::bounds {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial_d(int h) {
  if (h < 0 || h > 20)
    throw std::invalid_argument("factorial: h must be in [0, 20]");
  std::uint64_t f = 1;
  for (int i = 2; i <= h; ++i) f *= static_cast<std::uint64_t>(i);
  return static_cast<double>(f);
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

void BhgInstance::validate() const {
  if (h < 2) throw std::invalid_argument("BhgInstance: h must be >= 2");
  if (g < 1) throw std::invalid_argument("BhgInstance: g must be >= 1");
  if (n < 1) throw std::invalid_argument("BhgInstance: N must be >= 1");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::trivial: return "trivial";
    case Method::crt: return "crt";
    case Method::cju: return "cju";
    case Method::thm11: return "thm11";
    case Method::b3refined: return "b3refined";
  }
  return "?";
}

namespace {

BoundReport make_report(Method m, const BhgInstance& inst, double constant,
                        bool asymptotic) {
  const double gn = static_cast<double>(inst.g) * static_cast<double>(inst.n);
  return {m, inst, constant, std::pow(constant * gn, 1.0 / inst.h), asymptotic};
}

}  // namespace

BoundReport trivial_bound(const BhgInstance& inst) {
  inst.validate();
  if (inst.h > 20)
    throw std::invalid_argument("trivial_bound: h > 20 overflows h!");
  const double c = factorial_d(inst.h) * inst.h;
  return make_report(Method::trivial, inst, c, false);
}

double crt_constant(int h) {
  if (h < 3) throw std::invalid_argument("crt_constant: h must be >= 3");
  const double ch = std::pow(std::cos(kPi / h), h);
  return factorial_d(h) * h / (1.0 + ch);
}

double cju_constant(int h) {
  if (h < 2) throw std::invalid_argument("cju_constant: h must be >= 2");
  return std::sqrt(3.0 * h) * factorial_d(h);
}

SincRoot solve_sinc(double target, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_sinc: tol must be > 0");
  if (!(target >= 0.0 && target <= 1.0))
    throw std::invalid_argument("solve_sinc: target must lie in [0, 1]");
  if (target == 0.0) return {target, kPi, tol, false};
  if (target == 1.0) return {target, 0.0, tol, true};
  double lo = 0.0, hi = kPi;  // sinc decreasing: sinc(lo) -> 1, sinc(pi) = 0
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (sinc(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return {target, 0.5 * (lo + hi), tol, false};
}

double g_lhs(int h) {
  if (h < 3) throw std::invalid_argument("g_lhs: h must be >= 3");
  return std::pow(4.0 / (3.0 - std::cos(kPi / h)) - 1.0, h);
}

trig::CosinePoly build_G(int h) {
  if (h < 3) throw std::invalid_argument("build_G: h must be >= 3");
  const double a = 2.0 / (3.0 - std::cos(kPi / h));
  const double invcos = 1.0 / std::cos(kPi / h);
  std::vector<double> coeffs(static_cast<std::size_t>(h), 0.0);
  coeffs[0] = a * invcos;
  coeffs[static_cast<std::size_t>(h) - 1] = -(1.0 - a) * invcos;
  return trig::CosinePoly(std::move(coeffs));
}

double g_min_closed_form(int h) {
  return (4.0 / (3.0 - std::cos(kPi / h)) - 1.0) / std::cos(kPi / h);
}

double thm11_constant(int h, double tol) {
  if (h < 3) throw std::invalid_argument("thm11_constant: h must be >= 3");
  const SincRoot r = solve_sinc(g_lhs(h), tol);
  return r.root * factorial_d(h) * h / kPi;
}

ImprovementCheck check_improvement_inequality(int h, double tol) {
  if (h < 3)
    throw std::invalid_argument("check_improvement_inequality: h must be >= 3");
  ImprovementCheck out;
  out.h = h;
  out.limit = kPi * std::sqrt(3.0 / h);
  out.lhs = sinc(out.limit);
  out.rhs = g_lhs(h);
  out.holds = out.lhs < out.rhs;
  out.root = solve_sinc(out.rhs, tol).root;
  out.root_below_limit = out.root < out.limit;
  return out;
}

Prop31Report prop31_bound(double psi_value, const BhgInstance& inst,
                          double tol) {
  inst.validate();
  if (inst.h > 20)
    throw std::invalid_argument("prop31_bound: h > 20 overflows h!");
  double arg = std::pow(std::cos(kPi / inst.h) * psi_value, inst.h);
  if (arg > 1.0 && arg <= 1.0 + 1e-9) arg = 1.0;  // boundary up to fp rounding
  if (!(arg >= 0.0 && arg <= 1.0))
    throw std::invalid_argument(
        "prop31_bound: (cos(pi/h) psi)^h outside [0, 1]; psi too large");
  const SincRoot root = solve_sinc(arg, tol);
  const double c = root.root * factorial_d(inst.h) * inst.h / kPi;
  BoundReport rep = make_report(Method::thm11, inst, c, true);
  return {rep, root};
}

// ---- B_3[g] refinement ---------------------------------------------------

B3Engine::B3Engine(const B3Options& opt) : opt_(opt) {
  if (opt_.m < 2 || opt_.m % 2 != 0)
    throw std::invalid_argument("B3Engine: m must be even and >= 2");
  if (opt_.capped_prefixes < 0 || opt_.capped_prefixes >= opt_.m / 2)
    throw std::invalid_argument("B3Engine: capped_prefixes out of range");
  if (opt_.delta_grid_den < 4)
    throw std::invalid_argument("B3Engine: delta_grid_den too small");
  // delta = j/den must stay below 1/4 for the mass-cap lemma to apply.
  if (opt_.capped_prefixes * 4 >= opt_.delta_grid_den)
    throw std::invalid_argument("B3Engine: caps need j/den < 1/4");

  const trig::CosinePoly weight(std::vector<double>{1.6, 0.0, -0.3, 0.0, 0.0, 0.1});
  const auto cells = trig::partition(opt_.m, 3);
  const int pairs = opt_.m / 2;
  pair_values_.resize(pairs);
  std::vector<double> lows(opt_.m);
  for (int j = 0; j < opt_.m; ++j)
    lows[j] = trig::certified_min(weight, cells[j], opt_.tol).lower;
  for (int j = 0; j < pairs; ++j)
    pair_values_[j] = std::min(lows[j], lows[opt_.m - 1 - j]);
}

std::vector<double> B3Engine::caps(double c) const {
  std::vector<double> out(opt_.capped_prefixes);
  for (int j = 1; j <= opt_.capped_prefixes; ++j) {
    double b = std::cbrt(72.0 * (static_cast<double>(j) / opt_.delta_grid_den) / c);
    // Inflate a couple of ulp: looser caps can only lower the LP minimum,
    // which keeps the weighted sum a valid lower bound.
    b = std::nextafter(std::nextafter(b, 2.0), 2.0);
    out[j - 1] = b;
  }
  return out;
}

double B3Engine::weighted_min(double c, std::vector<double>* mass) const {
  const int pairs = static_cast<int>(pair_values_.size());
  const int nv = pairs - 1;  // last pair's mass eliminated via sum = 1
  const double vlast = pair_values_[pairs - 1];
  const auto cap = caps(c);

  std::vector<std::vector<lp::Rational>> a;
  std::vector<lp::Rational> b;
  for (int i = 0; i < opt_.capped_prefixes; ++i) {
    std::vector<lp::Rational> row(nv, lp::Rational(0));
    for (int j = 0; j <= i; ++j) row[j] = 1;
    a.push_back(std::move(row));
    b.push_back(lp::rational_from_double(cap[i]));
  }
  a.emplace_back(nv, lp::Rational(1));  // total mass of the first nv pairs
  b.emplace_back(1);

  std::vector<lp::Rational> obj(nv);
  const lp::Rational vl = lp::rational_from_double(vlast);
  for (int j = 0; j < nv; ++j)
    obj[j] = vl - lp::rational_from_double(pair_values_[j]);

  const lp::Solution sol = lp::simplex_max(a, b, obj);
  if (mass) {
    mass->assign(pairs, 0.0);
    lp::Rational used(0);
    for (int j = 0; j < nv; ++j) {
      (*mass)[j] = sol.x[j].convert_to<double>();
      used += sol.x[j];
    }
    (*mass)[pairs - 1] = (lp::Rational(1) - used).convert_to<double>();
  }
  return lp::to_double_floor(vl - sol.value);
}

double B3Engine::implied_constant(double weighted_sum) const {
  // cos(pi/3) = 1/2 exactly; the sinc root turns the weighted-sum bound into
  // the leading constant 3! * 3 * x / pi.
  const double target = std::pow(0.5 * weighted_sum, 3);
  if (target > 1.0)
    throw std::invalid_argument("B3Engine: weighted sum above 2 is impossible");
  const SincRoot r = solve_sinc(target, 1e-12);
  return r.root * 18.0 / kPi;
}

B3CaseEval B3Engine::evaluate(double c) const {
  B3CaseEval out;
  out.c = c;
  out.caps = caps(c);
  out.weighted_sum = weighted_min(c, &out.mass);
  out.implied_constant = implied_constant(out.weighted_sum);
  return out;
}

B3Result b3_refined_constant(const B3Options& opt) {
  return b3_refined_with(B3Engine(opt));
}

B3Result b3_refined_with(const B3Engine& engine) {
  const B3Options& opt = engine.options();

  double lo = opt.bracket_lo, hi = opt.bracket_hi;
  // Widen until the bracket straddles: implied(lo) > lo and implied(hi) <= hi.
  for (int guard = 0; engine.evaluate(hi).implied_constant > hi; ++guard) {
    hi *= 1.5;
    if (guard > 60)
      throw std::runtime_error("b3_refined_constant: no upper bracket");
  }
  for (int guard = 0; engine.evaluate(lo).implied_constant <= lo; ++guard) {
    lo *= 0.5;
    if (guard > 60)
      throw std::runtime_error("b3_refined_constant: no lower bracket");
  }

  int iters = 0;
  while (hi - lo > opt.c_tol) {
    const double mid = 0.5 * (lo + hi);
    ++iters;
    if (engine.evaluate(mid).implied_constant <= mid)
      hi = mid;
    else
      lo = mid;
  }

  B3Result res;
  res.constant = hi;  // least straddling point certified: implied(hi) <= hi
  res.theorem_rounded = round_up_decimals(hi, 1);
  res.at_constant = engine.evaluate(hi);
  res.pair_values = engine.pair_values();
  res.bisection_iters = iters;

  std::ostringstream os;
  char buf[256];
  const auto& ev = res.at_constant;
  os << "two-case refinement for B_3[g], m=" << opt.m
     << ", cap grid j/" << opt.delta_grid_den << " (j=1.."
     << opt.capped_prefixes << ")\n";
  std::snprintf(buf, sizeof(buf),
                "case 1: some edge-pair mass alpha exceeds its cap -> "
                "|A| <= (%.6f g N)^(1/3) directly\n", res.constant);
  os << buf;
  std::snprintf(buf, sizeof(buf),
                "case 2: all caps hold; capped minimization of the weighted "
                "sum gives w = %.8f\n", ev.weighted_sum);
  os << buf;
  os << "        caps:";
  for (double cpv : ev.caps) {
    std::snprintf(buf, sizeof(buf), " %.6f", cpv);
    os << buf;
  }
  os << "\n        optimal mass (first pairs):";
  for (int j = 0; j < opt.capped_prefixes + 1 && j < (int)ev.mass.size(); ++j) {
    std::snprintf(buf, sizeof(buf), " %.6f", ev.mass[j]);
    os << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "\n        implied constant c' = 18 x / pi = %.6f\n",
                ev.implied_constant);
  os << buf;
  std::snprintf(buf, sizeof(buf),
                "self-consistent constant: %.6f (bisection width %.1e, %d "
                "iterations); rounded up: %.1f\n",
                res.constant, opt.c_tol, iters, res.theorem_rounded);
  os << buf;
  res.transcript = os.str();
  return res;
}

double round_up_decimals(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::ceil(x * scale) / scale;
}

}  // namespace bhg::bounds

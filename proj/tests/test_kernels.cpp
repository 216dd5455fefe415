#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "bhg/kernels.hpp"

namespace k = bhg::kernels;

namespace {

std::vector<double> test_args(std::size_t n, std::uint64_t seed, double lo,
                              double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> xs(n);
  for (auto& x : xs) x = dist(rng);
  return xs;
}

}  // namespace

TEST_CASE("scalar sincos matches libm within the documented bound") {
  auto xs = test_args(200000, 1, -20.0, 20.0);
  // Quadrant boundaries and large in-range arguments are the risky spots.
  for (int q = -8; q <= 8; ++q) xs.push_back(q * 1.5707963267948966);
  auto wide = test_args(50000, 2, -k::kMaxFastArg, k::kMaxFastArg);
  xs.insert(xs.end(), wide.begin(), wide.end());
  xs.push_back(0.0);
  xs.push_back(-0.0);

  std::vector<double> s(xs.size()), c(xs.size());
  k::detail::sincos_batch_scalar(xs, s, c);
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    worst = std::max(worst, std::fabs(s[i] - std::sin(xs[i])));
    worst = std::max(worst, std::fabs(c[i] - std::cos(xs[i])));
  }
  // libm itself is good to ~0.5 ulp here, so this verifies kSinCosAbsErr
  // with real margin.
  CHECK(worst < k::kSinCosAbsErr / 2);
}

TEST_CASE("arguments beyond the fast range take the libm fallback exactly") {
  const std::vector<double> xs = {1e6,  -3.7e8, 5.5e12, -2.0e15,
                                  1e300, k::kMaxFastArg * 1.000001};
  std::vector<double> s(xs.size()), c(xs.size());
  k::detail::sincos_batch_scalar(xs, s, c);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(s[i] == std::sin(xs[i]));
    CHECK(c[i] == std::cos(xs[i]));
  }
}

TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
  if (!k::avx2_supported()) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  auto xs = test_args(100001, 3, -10.0, 10.0);  // odd length, exercises tails
  auto wide = test_args(9999, 4, -2e6, 2e6);    // mixes in fallback lanes
  xs.insert(xs.end(), wide.begin(), wide.end());

  std::vector<double> s1(xs.size()), c1(xs.size()), s2(xs.size()), c2(xs.size());
  k::detail::sincos_batch_scalar(xs, s1, c1);
  k::detail::sincos_batch_avx2(xs, s2, c2);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::memcmp(&s1[i], &s2[i], 8) != 0) ++mismatches;
    if (std::memcmp(&c1[i], &c2[i], 8) != 0) ++mismatches;
  }
  CHECK(mismatches == 0);

  const std::vector<double> coeffs = {1.6, 0.0, -0.3, 0.0, 0.0, 0.1};
  std::vector<double> y1(xs.size()), y2(xs.size());
  k::detail::cospoly_eval_batch_scalar(coeffs, xs, y1);
  k::detail::cospoly_eval_batch_avx2(coeffs, xs, y2);
  for (std::size_t i = 0; i < xs.size(); ++i) REQUIRE(y1[i] == y2[i]);

  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3},
                        std::size_t{4}, std::size_t{5}, std::size_t{17}}) {
    std::vector<double> elems(n);
    for (std::size_t i = 0; i < n; ++i) elems[i] = static_cast<double>(i + 1);
    const auto a = k::detail::expsum_scalar(elems, 0.7368421);
    const auto b = k::detail::expsum_avx2(elems, 0.7368421);
    CHECK(a.re == b.re);
    CHECK(a.im == b.im);
  }
}

TEST_CASE("cospoly batch matches the direct cosine sum") {
  const std::vector<double> coeffs = {1.7, 0.0, -0.3};
  auto xs = test_args(20000, 5, -3.2, 3.2);
  std::vector<double> y(xs.size());
  k::cospoly_eval_batch(coeffs, xs, y);
  const double bound = k::cospoly_abs_error(coeffs) + 1e-14;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double direct = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      direct += coeffs[j] * std::cos((j + 1) * xs[i]);
    REQUIRE(std::fabs(y[i] - direct) < bound);
  }
}

TEST_CASE("expsum agrees with direct complex summation") {
  std::vector<double> elems = {1, 2, 5, 11, 13, 18, 27};
  for (double t : {0.001, 0.5, 2.7, 6.28, 100.0}) {
    const auto f = k::expsum(elems, t);
    double re = 0.0, im = 0.0;
    for (double a : elems) {
      re += std::cos(a * t);
      im += std::sin(a * t);
    }
    CHECK(std::fabs(f.re - re) < 1e-12);
    CHECK(std::fabs(f.im - im) < 1e-12);
  }
}

TEST_CASE("dispatcher selects a valid ISA") {
  const k::Isa isa = k::active_isa();
  if (k::avx2_supported())
    CHECK((isa == k::Isa::avx2 || isa == k::Isa::scalar));
  else
    CHECK(isa == k::Isa::scalar);
  CHECK(k::isa_name(isa).size() > 0);
}

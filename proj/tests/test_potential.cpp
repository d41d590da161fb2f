#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ruelle/errors.hpp"
#include "ruelle/potential.hpp"

using namespace ruelle;

namespace {

// var_n of a depth-r table by comparing every pair of words sharing n symbols.
double var_pairs(const std::vector<double>& t, int d, std::size_t r, std::size_t n) {
  double v = 0.0;
  const std::size_t count = t.size();
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      const auto wi = word_at(i, r, d);
      const auto wj = word_at(j, r, d);
      const auto k = static_cast<long>(std::min(n, r));
      if (std::equal(wi.begin(), wi.begin() + k, wj.begin())) v = std::max(v, std::abs(t[i] - t[j]));
    }
  }
  return v;
}

}  // namespace

TEST_CASE("locally constant potentials read their table") {
  const auto f = make_locally_constant(Alphabet(2), 2, {1.0, 2.0, 3.0, 4.0});
  CHECK(f(Point({1, 0}, {1})).value == 3.0);
  CHECK(f(Point::constant(1)).value == 4.0);
  CHECK(f(Point::constant(1)).error == 0.0);
  CHECK(f.locally_constant_depth() == 2u);
  CHECK_THROWS(make_locally_constant(Alphabet(2), 2, {1.0, 2.0}));
  CHECK(make_constant(Alphabet(3), -0.5)(Point::periodic({2, 1})).value == -0.5);
  CHECK(scaled(f, 2.0)(Point::constant(1)).value == 8.0);
  CHECK(shifted(f, -1.0)(Point::constant(0)).value == 0.0);
}

TEST_CASE("Birkhoff sums match evaluation along the orbit") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const auto f = oracle::random_potential(rng, 3, 3);
    const auto x = oracle::random_point(rng, 3);
    for (std::size_t n : {1u, 2u, 5u, 9u}) {
      CHECK(birkhoff(f, x, n).value == doctest::Approx(oracle::birkhoff_direct(f, x, n)).epsilon(1e-14));
    }
  }
  CHECK_THROWS(birkhoff(make_constant(Alphabet(2), 0.0), Point::constant(0), 0));
}

TEST_CASE("var_n is exact for locally constant potentials") {
  std::mt19937_64 rng(4);
  for (int d : {2, 3}) {
    for (std::size_t r : {1u, 2u, 3u}) {
      const auto t = oracle::random_table(rng, d, r, 1.0);
      const auto f = make_locally_constant(Alphabet(d), r, t);
      for (std::size_t n = 0; n <= r + 1; ++n) {
        CHECK(var_n(f, n) == doctest::Approx(var_pairs(t, d, r, n)).epsilon(1e-15));
      }
      const auto bracket = var_bracket(f, 1);
      CHECK(bracket.lower == bracket.upper.value());
    }
  }
}

TEST_CASE("variation metadata drives var_n for Hoelder potentials") {
  // f(x) = sum_i x_i 2^-i has |f(x) - f(y)| <= 2 d(x,y) on {0,1}.
  const Potential f(Alphabet(2),
                    [](const Point& x) {
                      double s = 0.0;
                      for (std::size_t i = 1; i <= 60; ++i) s += x.at(i) * std::ldexp(1.0, -static_cast<int>(i));
                      return Evaluation{s, std::ldexp(1.0, -60)};
                    },
                    regularity::Hoelder{1.0, 2.0});
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto b = var_bracket(f, n);
    // The true var_n is 2^-n; the enumeration and the metadata must bracket it.
    CHECK(b.lower <= std::ldexp(1.0, -static_cast<int>(n)) + 1e-15);
    CHECK(*b.upper >= std::ldexp(1.0, -static_cast<int>(n)));
    CHECK(var_n(f, n) == *b.upper);
  }
  CHECK(*f.variation_tail(3) == doctest::Approx(2.0 * std::ldexp(1.0, -4) / 0.5));
}

TEST_CASE("potentials without metadata fall back to guarded enumeration") {
  const Potential f(Alphabet(2), [](const Point& x) { return Evaluation{static_cast<double>(x.at(3)), 0.0}; },
                    regularity::GenericContinuous{});
  CHECK(var_n(f, 2) == 1.0);
  CHECK(var_n(f, 3) == 0.0);
  CHECK_THROWS_AS(var_n(f, 30, 1 << 10), SizeGuardError);
}

TEST_CASE("Hofbauer-Walters potentials classify the leading run") {
  HofbauerWalters hw;
  hw.a_seq = [](std::size_t n) { return 1.0 + 1.0 / static_cast<double>(n); };
  hw.c_seq = [](std::size_t n) { return -1.0 / static_cast<double>(n); };
  hw.a = 1.0;
  hw.b = 5.0;
  hw.c = 0.0;
  const auto f = make_hofbauer_walters(hw);
  CHECK(f(Point({0, 0, 0, 1}, {0})).value == doctest::Approx(1.0 + 1.0 / 3.0));
  CHECK(f(Point({0, 1}, {1})).value == 1.0);                // L_1
  CHECK(f(Point({1, 0}, {0})).value == 5.0);                // R_1
  CHECK(f(Point({1, 1, 1, 1, 0}, {1})).value == doctest::Approx(-0.25));
  CHECK(f(Point::constant(0)).value == 1.0);
  CHECK(f(Point::constant(1)).value == 0.0);
  CHECK(leading_run(Point({1, 1, 0}, {1})) == 2u);
  CHECK_FALSE(leading_run(Point::constant(1)).has_value());
  // Run length read through the cycle.
  CHECK(leading_run(Point({0}, {0, 0, 1})) == 3u);
}

TEST_CASE("Walters estimate of locally constant potentials matches brute force") {
  std::mt19937_64 rng(17);
  const auto f = oracle::random_potential(rng, 2, 3);
  for (std::size_t p : {1u, 2u}) {
    double expected = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
      // Points agreeing on n + p coordinates; S_n f reads n + 2 of them.
      const std::size_t reach = n + 2;
      for (std::size_t i = 0; i < ipow(2, reach); ++i) {
        for (std::size_t j = 0; j < ipow(2, reach); ++j) {
          const auto wi = word_at(i, reach, 2);
          const auto wj = word_at(j, reach, 2);
          if (n + p < reach && std::equal(wi.begin(), wi.begin() + static_cast<long>(n + p), wj.begin())) {
            const double si = oracle::birkhoff_direct(f, Point::constant(0).prepend(wi), n);
            const double sj = oracle::birkhoff_direct(f, Point::constant(0).prepend(wj), n);
            expected = std::max(expected, std::abs(si - sj));
          }
        }
      }
    }
    CHECK(walters_estimate(f, p, 4) == doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK(walters_estimate(f, 2, 6) >= 0.0);
}

TEST_CASE("JOP series: factorial and zeta variation sequences") {
  const double eps = 0.1;
  // var_n = 2 log n / (1/2 + eps) gives terms (n!)^-2, summing to I_0(2) - 1.
  const auto fact = jop_series([&](std::size_t n) { return 2.0 * std::log(static_cast<double>(n)) / (0.5 + eps); },
                               eps, 40);
  CHECK(fact.partial_sum == doctest::Approx(1.2795853023360673).epsilon(1e-13));
  CHECK_FALSE(fact.diverging);

  // var_n = 2 log(n/(n-1)) / (1/2 + eps) telescopes to terms n^-2.
  auto zeta_var = [&](std::size_t n) {
    return n == 1 ? 0.0 : 2.0 * std::log(static_cast<double>(n) / static_cast<double>(n - 1)) / (0.5 + eps);
  };
  const auto z = jop_series(zeta_var, eps, 2000);
  double h2 = 0.0;
  for (int n = 2000; n >= 1; --n) h2 += 1.0 / (static_cast<double>(n) * n);
  CHECK(z.partial_sum == doctest::Approx(h2).epsilon(1e-12));
  CHECK(z.tail_exponent == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_FALSE(z.diverging);

  // Half as much variation: terms 1/n, harmonic divergence.
  const auto harm = jop_series([&](std::size_t n) { return 0.5 * zeta_var(n); }, eps, 2000);
  CHECK(harm.diverging);
  CHECK(harm.tail_exponent == doctest::Approx(1.0).epsilon(1e-9));

  // A normalized locally constant potential has zero variation from its depth on.
  const auto f = make_locally_constant(Alphabet(2), 1, {std::log(0.5), std::log(0.5)});
  const auto flat = jop_series(f, eps, 50);
  CHECK(flat.partial_sum == doctest::Approx(50.0));
  CHECK(flat.diverging);
}

#include <doctest.h>

#include "oracles.hpp"

#include <numbers>

using namespace latticeprop;

TEST_CASE("smirnov counts") {
  CHECK(smirnov_frequency_count({1, 1}) == 2);
  CHECK(smirnov_frequency_count({2}) == 0);
  CHECK(smirnov_frequency_count({2, 1}) == 1);
  CHECK(smirnov_frequency_count({0, 0, 0}) == 1);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 3; ++c) CHECK(smirnov_frequency_count({a, b, c}) == oracle::smirnov_by_listing({a, b, c}));
  CHECK(smirnov_frequency_count({2, 2, 2, 2}) == oracle::smirnov_by_listing({2, 2, 2, 2}));
}

TEST_CASE("zero argument gives zero") {
  CHECK(cont_multinomial({0.0, 1.0, 2.0}) == 0.0);
  CHECK(cont_multinomial({3.0, 0.0}) == 0.0);
  CHECK(cont_multinomial({1.0, 1.0, 1.0, 0.0}) == 0.0);
  CHECK(cont_binomial(3.0, 0.0) == 0.0);
  CHECK(cont_binomial(3.0, 3.0) == 0.0);
  CHECK(desitter_cont({0.0, 1.0}, 2.0) == 0.0);
  CHECK_THROWS_AS(cont_multinomial({-1.0, 1.0}), DimensionError);
  CHECK_THROWS_AS(cont_binomial(1.0, 2.0), DimensionError);
}

TEST_CASE("two letter routes agree") {
  CHECK(cont_binomial(2.0, 1.0) == doctest::Approx(5.05508416880316).epsilon(1e-12));
  for (double x : {0.3, 1.0, 2.0, 3.5, 6.0})
    for (double f : {0.1, 0.25, 0.5, 0.8}) {
      double s = f * x;
      double a = cont_multinomial({x - s, s});
      double b = cont_binomial(x, s);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, b));
    }
}

TEST_CASE("series and taylor routes agree") {
  auto tab = taylor_table(3, 80);
  std::vector<std::vector<double>> pts{{1, 1, 1}, {0.5, 1, 2}, {2, 2, 2}, {0.2, 0.3, 4}, {1, 2, 3}, {3, 1.5, 1.5}};
  for (const auto& x : pts) {
    double s = cont_multinomial(x);
    double t = tab.evaluate(x);
    CHECK(std::abs(s - t) <= 1e-8 * std::max(1.0, s));
  }
  CHECK(cont_multinomial({1, 1, 1}) == doctest::Approx(132.408738914).epsilon(1e-10));
  auto tab4 = taylor_table(4, 48);
  std::vector<double> x4{0.5, 1, 1, 1.5};
  CHECK(std::abs(cont_multinomial(x4) - tab4.evaluate(x4)) <= 1e-8 * cont_multinomial(x4));
}

TEST_CASE("continuous multinomial is permutation symmetric") {
  std::vector<double> x{0.4, 1.3, 2.2};
  double v = cont_multinomial(x);
  std::sort(x.begin(), x.end());
  do {
    CHECK(cont_multinomial(x) == doctest::Approx(v).epsilon(1e-12));
  } while (std::next_permutation(x.begin(), x.end()));
}

TEST_CASE("taylor table structure") {
  auto tab = taylor_table(3, 40);
  CHECK(tab.at({0, 0, 0}) == 1.0);
  CHECK(tab.at({1, 0, 0}) == 1.0);
  double printed = 1;
  bool differs = false;
  for (int i = 1; i <= 6; ++i) {
    printed *= -2.0 / 3.0 / i;
    if (std::abs(tab.at({i, 0, 0}) - printed) > 1e-12) differs = true;
    if (i >= 2) CHECK(tab.at({i, 0, 0}) == 0.0);
  }
  CHECK(differs);
  for (const auto& [nu, a] : tab.coeffs()) {
    auto p = nu;
    std::sort(p.begin(), p.end());
    do {
      CHECK(tab.at(p) == doctest::Approx(a).epsilon(1e-12));
    } while (std::next_permutation(p.begin(), p.end()));
  }
  CHECK(TaylorTable::bound_constant(3) == 27.0);
  CHECK(tab.bound_margin() <= 0.0);
  CHECK(taylor_table(4, 20).bound_margin() <= 0.0);
  CHECK_THROWS_AS(taylor_table(2, 10), DimensionError);
  CHECK_THROWS_AS(taylor_table(3, 161), CapacityError);
}

TEST_CASE("gaussian asymptotic against exact multinomials") {
  for (long k : {64, 100}) {
    double exact = oracle::multinomial({k, k}).get_d();
    double g = gaussian_asymptotic({double(k), double(k)});
    CHECK(std::abs(g / exact - 1) <= 0.01);
  }
  for (long k : {43, 60}) {
    double exact = oracle::multinomial({k, k, k}).get_d();
    double g = gaussian_asymptotic({double(k), double(k), double(k)});
    CHECK(std::abs(g / exact - 1) <= 0.01);
  }
  double S = 12;
  CHECK(gaussian_asymptotic({4, 4, 4}) == doctest::Approx(std::pow(3.0, S + 1.5) / (2 * std::numbers::pi * S)));
  // entropy form agrees in log scale to o(S)
  for (double S2 : {100.0, 200.0, 400.0}) {
    std::vector<double> x{0.2 * S2, 0.3 * S2, 0.5 * S2};
    double a = std::log(gaussian_entropy_form(x));
    long e = 0;
    double mant = mpz_get_d_2exp(&e, oracle::multinomial({long(x[0]), long(x[1]), long(x[2])}).get_mpz_t());
    double b = std::log(mant) + e * std::log(2.0);
    CHECK(std::abs(a - b) / S2 < 0.05);
  }
}

TEST_CASE("discrete to continuous ratios") {
  for (int m : {10, 50}) CHECK(disc_to_cont_check({1, 1, 1}, m).deviation < 1e-12);
  auto a = disc_to_cont_check({1, 1, 2}, 100);
  auto b = disc_to_cont_check({1, 1, 2}, 400);
  CHECK(b.deviation <= a.deviation);
  CHECK(a.continuous_ratio > 0);
  CHECK(a.discrete_ratio > 0);
}

TEST_CASE("continuum integrand and peak") {
  CHECK(k1_cont_peak_location(1, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(k1_cont_integrand(1, 0, 0) == 0.0);
  CHECK(k1_cont_integrand(1, 0, 1) == 0.0);
  CHECK(k1_cont_integrand(2, 0.5, 0.5) == 0.0);
  CHECK(k1_cont_integrand(2, 0.5, 2) == 0.0);
  CHECK(k1_cont_integrand(2, 0.5, 1.2) > 0);
  auto p = k1_cont_peak(1, 0, 64);
  CHECK(std::abs(p.refined - 2.0 / 3.0) <= p.cell);
  CHECK(p.cell == doctest::Approx(1.0 / 64));
}

TEST_CASE("continuum profile") {
  std::vector<double> xs{-1.5, -0.7, -0.2, 0.0, 0.2, 0.7, 1.5};
  auto v = k1_cont_profile(2.0, xs, 1.0);
  REQUIRE(v.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(v[i] - v[xs.size() - 1 - i]) <= 1e-9);
  auto z = k1_cont_profile(2.0, {0.0}, 0.0);
  CHECK(std::abs(z[0] - Amplitude(1)) < 1e-9);
  CHECK_THROWS_AS(k1_cont_profile(2.0, xs, 1.0, 32), DimensionError);
}

TEST_CASE("high dimensional continuum fixture") {
  auto v = k1_cont_highd(1.0, {0.2, 0.1}, 1.0, 16);
  CHECK(v.real() == doctest::Approx(0.454571144860858).epsilon(1e-6));
  CHECK(v.imag() == doctest::Approx(0.0944057349689798).epsilon(1e-6));
  auto w = k1_cont_highd(1.0, {0.1, 0.2}, 1.0, 16);
  CHECK(std::abs(w) > 0);
  CHECK_THROWS_AS(k1_cont_highd(1.0, {0.1}, 1.0), DimensionError);
}

TEST_CASE("de-Sitter continuum ratio") {
  CHECK(desitter_cont({1.0, 1.0}, 2.0) == doctest::Approx(1.0));
  CHECK(desitter_cont({1.0, 1.0, 1.0}, 3.0) == doctest::Approx(1.0));
  for (double a = 0.25; a < 3; a += 0.25)
    for (double b = 0.25; a + b <= 3; b += 0.25) CHECK(desitter_cont({a, b}, 3.0) <= 1.0 + 1e-12);
  CHECK_THROWS_AS(desitter_cont({2.0, 2.0}, 3.0), DimensionError);
}

TEST_CASE("splitting check plumbing") {
  auto r = splitting_check({1, 1, 0}, 64, 2);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
  CHECK(r.residual == 0.0);
  auto s = splitting_check({1, 1, 1}, 64, 3);
  CHECK(s.study.size() == 3);
  CHECK(s.lhs == doctest::Approx(cont_multinomial({1, 1, 1})));
  CHECK_THROWS_AS(splitting_check({1, 1}), DimensionError);
}

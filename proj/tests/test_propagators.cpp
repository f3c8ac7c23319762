#include <doctest.h>

#include "oracles.hpp"

#include <numbers>

using namespace latticeprop;

namespace {

PhaseHistogram hist(std::initializer_list<std::pair<Rational, long>> bins) {
  PhaseHistogram h;
  for (auto& [r, c] : bins) h.add(r, c);
  return h;
}

void grid(int d, coord_t tmax, const std::function<void(const LatticePoint&)>& f) {
  for (coord_t t = 0; t <= tmax; ++t) {
    std::vector<coord_t> x(d, -t);
    while (true) {
      coord_t l1 = 0;
      for (auto v : x) l1 += std::llabs(v);
      if (l1 <= t + 1) f({x, t});
      int i = 0;
      while (i < d && x[i] == t) x[i++] = -t;
      if (i == d) break;
      ++x[i];
    }
  }
}

// K_1 with the (t - 1)! prefactor
PhaseHistogram k1_shifted_factorial(const LatticePoint& delta) {
  PhaseHistogram h;
  coord_t t = delta.time, x = std::llabs(delta.spatial[0]);
  if (t == 0) return h;
  for (coord_t I = x; I <= t; I += 2) {
    coord_t a = (I - x) / 2, b = (I + x) / 2, c = t - I;
    mpz_class f, fa, fb, fc;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(t - 1));
    mpz_fac_ui(fa.get_mpz_t(), static_cast<unsigned long>(a));
    mpz_fac_ui(fb.get_mpz_t(), static_cast<unsigned long>(b));
    mpz_fac_ui(fc.get_mpz_t(), static_cast<unsigned long>(c));
    h.add(Rational(c), f / (fa * fb * fc));
  }
  return h;
}

} // namespace

TEST_CASE("k1 small examples") {
  CHECK(k1_free_histogram(1, {{0}, 2}) == hist({{0, 2}, {2, 1}}));
  CHECK(std::abs(k1_free(1, {{0}, 2}, 0.0) - Amplitude(3)) < 1e-14);
  CHECK(std::abs(k1_free(2, {{1, 0}, 1}, 0.7) - Amplitude(1)) < 1e-14);
  auto h = k1_free_histogram(1, {{0}, 2});
  CHECK(std::abs(h.collapse(1.3) - (2.0 + std::polar(1.0, 2.6))) < 1e-14);
  CHECK(k1_free_histogram(1, {{3}, 2}).empty());
  CHECK_THROWS_AS(k1_free_histogram(1, {{0}, -1}), ReversedTimeError);
}

TEST_CASE("k1 histograms match brute force over all words") {
  grid(1, 10, [](const LatticePoint& d) {
    CHECK(k1_free_histogram(1, d) == oracle::brute_histogram(oracle::unit_steps(1), d));
  });
  grid(2, 6, [](const LatticePoint& d) {
    CHECK(k1_free_histogram(2, d) == oracle::brute_histogram(oracle::unit_steps(2), d));
  });
  grid(3, 4, [](const LatticePoint& d) {
    CHECK(k1_free_histogram(3, d) == oracle::brute_histogram(oracle::unit_steps(3), d));
  });
}

TEST_CASE("the (t-1)! prefactor does not match") {
  LatticePoint d{{0}, 2};
  CHECK_FALSE(k1_shifted_factorial(d) == oracle::brute_histogram(oracle::unit_steps(1), d));
}

TEST_CASE("kn examples") {
  CHECK(kn_free_histogram(5, {{3}, 5}) == hist({{0, 5}, {2, 10}, {4, 1}}));
  CHECK(kn_free_histogram(5, {{5}, 5}) == hist({{0, 1}}));
  for (coord_t t = 0; t <= 9; ++t)
    for (coord_t x = -t; x <= t; ++x) CHECK(kn_free_histogram(2, {{x}, t}) == k1_free_histogram(1, {{x}, t}));
  CHECK_THROWS_AS(kn_free_histogram(51, {{0}, 1}), CapacityError);
}

TEST_CASE("kn histograms match brute force") {
  for (int n : {2, 5, 13}) {
    auto steps = oracle::raw_steps(axes_of_symmetry(n, 1));
    for (coord_t t = 0; t <= 8; ++t)
      for (coord_t x = -t; x <= t; ++x) CHECK(kn_free_histogram(n, {{x}, t}) == oracle::brute_histogram(steps, {{x}, t}));
  }
}

TEST_CASE("oracle propagator agrees with the closed forms") {
  SpaceSpec line = Free{1, std::nullopt};
  auto a5 = axes_of_symmetry(5, 1);
  for (coord_t t = 0; t <= 8; ++t)
    for (coord_t x = -t; x <= t; ++x) {
      CHECK(k_oracle_histogram(line, {{0}, 0}, {{x}, t}, a5) == kn_free_histogram(5, {{x}, t}));
      CHECK(k_oracle_histogram(line, {{0}, 0}, {{x}, t}, a5, Variant::feynman) == kn_feynman_histogram(5, {{x}, t}));
      CHECK(std::abs(k_oracle(line, {{0}, 0}, {{x}, t}, a5, 0.0) -
                     Amplitude(path_count(line, {{0}, 0}, {{x}, t}, a5).get_d())) < 1e-9);
    }
}

TEST_CASE("feynman variant") {
  CHECK(std::abs(kn_feynman(1, {{0}, 1}, 0.8) - Amplitude(2 * std::cos(0.8))) < 1e-14);
  CHECK(kn_feynman_histogram(1, {{0}, 2}) == oracle::brute_histogram(oracle::unit_steps(1), {{0}, 2}, true));
  CHECK(kn_feynman_histogram(1, {{0}, 2}) == hist({{-2, 1}, {0, 4}, {2, 1}}));
  for (int n : {1, 5, 13}) {
    auto steps = oracle::raw_steps(axes_of_symmetry(n, 1));
    for (coord_t t = 0; t <= 7; ++t)
      for (coord_t x = -t; x <= t; ++x) {
        auto h = kn_feynman_histogram(n, {{x}, t});
        CHECK(h == oracle::brute_histogram(steps, {{x}, t}, true));
        for (const auto& [r, c] : h.bins()) CHECK(h.at(-r) == c);
        CHECK(std::abs(kn_feynman(n, {{x}, t}, 0.37).imag()) < 1e-6);
      }
    CHECK(kn_feynman_histogram(n, {{6}, 6}) == hist({{0, 1}}));
  }
}

TEST_CASE("free propagators are reflection symmetric") {
  for (coord_t t = 0; t <= 12; ++t)
    for (coord_t x = 0; x <= t; ++x) {
      CHECK(kn_free_histogram(13, {{x}, t}) == kn_free_histogram(13, {{-x}, t}));
      CHECK(k1_free_histogram(1, {{x}, t}) == k1_free_histogram(1, {{-x}, t}));
    }
  grid(3, 5, [](const LatticePoint& d) {
    auto h = k1_free_histogram(3, d);
    LatticePoint p{{d.spatial[2], -d.spatial[0], d.spatial[1]}, d.time};
    CHECK(h == k1_free_histogram(3, p));
  });
}

TEST_CASE("torus and klein examples") {
  Torus t1{1, {1}};
  CHECK(std::abs(k1_torus(t1, {{0}, 0}, {{0}, 2}, 0.0) - Amplitude(5)) < 1e-12);
  CHECK(k1_quotient_histogram(t1, {{0}, 0}, {{0}, 2}) == hist({{0, 4}, {2, 1}}));
  Torus big{1, {50}};
  for (coord_t x = -3; x <= 3; ++x)
    CHECK(k1_quotient_histogram(big, {{0}, 0}, {{x}, 5}) == k1_free_histogram(1, {{x}, 5}));
  Klein kbig{40, 40};
  CHECK(k1_quotient_histogram(kbig, {{0, 0}, 0}, {{1, 2}, 5}) == k1_free_histogram(2, {{1, 2}, 5}));
}

TEST_CASE("quotient propagators match walks on the quotient graph") {
  for (coord_t L : {1, 2}) {
    std::vector<SpaceSpec> spaces{Torus{1, {L}}, Torus{2, {L, L}}, Torus{2, {L, 1}}, Klein{L, L}, Klein{L, 3 - L}};
    for (const auto& s : spaces) {
      int d = dimension(s);
      for (coord_t t = 0; t <= 6; ++t) {
        std::vector<LatticePoint> ends;
        if (d == 1)
          for (coord_t x = -L + 1; x <= L; ++x) ends.push_back({{x}, t});
        else
          for (coord_t x = -L + 1; x <= L; ++x)
            for (coord_t y = -1; y <= 1; ++y) ends.push_back(canonical_rep(s, {{x, y}, t}));
        LatticePoint src = d == 1 ? LatticePoint{{0}, 0} : LatticePoint{{0, 1}, 0};
        src = canonical_rep(s, src);
        for (const auto& e : ends) CHECK(k1_quotient_histogram(s, src, e) == oracle::quotient_graph(s, src, e));
      }
    }
  }
}

TEST_CASE("de-Sitter examples") {
  TropicalDeSitter s2{2, 0};
  CHECK(k1_desitter(s2, {{0, 0}, 0}, {{1, 1}, 2}) == 2);
  CHECK(k1_desitter(s2, {{0, 0}, 0}, {{3, 0}, 3}) == 1);
  CHECK(k1_desitter(TropicalDeSitter{1, 0}, {{0}, 0}, {{2}, 2}) == 1);
  CHECK_THROWS_AS(k1_desitter(s2, {{0, 0}, 0}, {{1, 1}, 1}), MembershipError);
  CHECK_THROWS_AS(k1_desitter(s2, {{0, 0}, 0}, {{0, 0}, 0}), ReversedTimeError);
}

TEST_CASE("de-Sitter counts match the surface walk") {
  for (int d = 1; d <= 3; ++d)
    for (coord_t c : {0, 2}) {
      TropicalDeSitter s{d, c};
      std::vector<LatticePoint> starts{{std::vector<coord_t>(d, 0), -c}};
      std::vector<coord_t> x0(d, 0);
      x0[0] = c + 1;
      starts.push_back({x0, 1});
      for (const auto& src : starts)
        for (coord_t dt = 1; dt <= 6; ++dt) {
          auto row = oracle::desitter_surface(d, c, src, dt);
          mpz_class sum = 0, want = 0;
          for (const auto& [x, n] : row) {
            want += n;
            sum += k1_desitter(s, src, {x, src.time + dt});
            CHECK(k1_desitter(s, src, {x, src.time + dt}) == n);
          }
          CHECK(sum == want);
        }
    }
}

TEST_CASE("normalization") {
  CHECK(max_path_count(1, 4) == 19);
  CHECK(axes_of_symmetry(1, 1).mean_time() == Rational(1));
  CHECK(normalization_gp(1, 4) == doctest::Approx(19.0 * std::pow(4.0, 1.0 / (4 * std::numbers::pi))));
  double tavg = 23.0 / 7.0;
  CHECK(normalization_gp(5, 6) ==
        doctest::Approx(max_path_count(5, 6).get_d() * std::pow(6.0 / tavg, 5.0 / (4 * std::numbers::pi))));
  CHECK_THROWS_AS(normalization_gp(1, 0), ReversedTimeError);
}

TEST_CASE("cauchy diagnostic") {
  std::vector<coord_t> g;
  for (coord_t x = -6; x <= 6; ++x) g.push_back(x);
  CHECK(cauchy_diagnostic(5, 5, 6, g).value == 0.0);
  auto r = cauchy_diagnostic(2, 5, 6, g);
  CHECK(std::isfinite(r.value));
  CHECK(r.value > 0);
  CHECK(r.min_pq == 2);
  CHECK_THROWS_AS(cauchy_diagnostic(5, 2, 6, g), UnsupportedAxesError);
}

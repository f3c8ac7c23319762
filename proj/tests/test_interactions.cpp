#include <doctest.h>

#include "oracles.hpp"

using namespace latticeprop;

TEST_CASE("coulomb potential") {
  PotentialSpec s{1.0, 1.0};
  CHECK(coulomb_potential(1.0, s) == 0.0);
  CHECK(coulomb_potential(3.0, s) == -2.0);
  CHECK(coulomb_potential(3.0, {1.0, -1.0}) == 2.0);
}

TEST_CASE("coupling zero is the free propagator") {
  for (int n : {1, 3, 24})
    for (coord_t t = 0; t <= 10; ++t)
      for (coord_t x = -t; x <= t; x += 1)
        for (double m : {0.0, 0.7, 2.0}) {
          auto k = k_interacting({Free{1, std::nullopt}, n}, {{0}, 0}, {{x}, t}, m, {0.5, 0.0});
          CHECK(std::abs(k - k1_free(1, {{x}, t}, m / n)) < 1e-9);
        }
}

TEST_CASE("mass zero counts paths") {
  auto a1 = axes_of_symmetry(1, 1);
  for (coord_t x = -5; x <= 5; ++x) {
    auto k = k_interacting({Free{1, std::nullopt}, 4}, {{0}, 0}, {{x}, 7}, 0.0, {1.0, 1.0});
    CHECK(std::abs(k - Amplitude(path_count(Free{1, std::nullopt}, {{0}, 0}, {{x}, 7}, a1).get_d())) < 1e-9);
  }
}

TEST_CASE("transfer matrix matches explicit paths") {
  for (int n : {1, 4, 24})
    for (PotentialSpec spec : {PotentialSpec{1.0, 1.0}, PotentialSpec{-0.3, 2.5}})
      for (coord_t t = 1; t <= 6; ++t)
        for (coord_t x = -t; x <= t; ++x) {
          LatticePoint src{{1}, 0}, dst{{1 + x}, t};
          auto k = k_interacting({Free{1, std::nullopt}, n}, src, dst, 1.3, spec);
          auto o = oracle::interacting_by_paths(n, src, dst, 1.3, spec);
          CHECK(std::abs(k - o) < 1e-12 * std::max(1.0, std::abs(o)));
        }
}

TEST_CASE("mirroring the charge mirrors the profile") {
  auto a = interacting_profile(8, 1.0, 1.0, {0.5, 1.0});
  auto b = interacting_profile(8, 1.0, 1.0, {-0.5, 1.0});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lattice_x == -b[a.size() - 1 - i].lattice_x);
    CHECK(std::abs(a[i].value - b[a.size() - 1 - i].value) < 1e-12);
  }
}

TEST_CASE("profiles and drift") {
  auto f = free_profile(24, 2.0, 1.0);
  CHECK(f.size() == 97);
  CHECK(f.front().x == doctest::Approx(-2.0));
  CHECK(std::abs(mean_position(f)) < 1e-12);
  auto c = interacting_profile(24, 2.0, 1.0, {1.0, 1.0});
  CHECK(mean_position(c) > mean_position(f));
  CHECK_THROWS_AS(k_interacting({Torus{1, {4}}, 1}, {{0}, 0}, {{0}, 1}, 1.0, {}), UnsupportedSpaceError);
}

TEST_CASE("mass spectrum scans") {
  auto h = k1_free_histogram(1, {{0}, 6});
  std::vector<double> g;
  for (int i = 0; i < 100; ++i) g.push_back(0.05 * i);
  auto s = mass_spectrum_scan(h, g);
  REQUIRE(s.size() == 100);
  CHECK(s[0].second == doctest::Approx(h.total().get_d()));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(s[i].second == doctest::Approx(std::abs(h.collapse(g[i]))));
  InteractingSource src{{Free{1, std::nullopt}, 4}, {{0}, 0}, {{2}, 6}, {1.0, 1.0}};
  auto si = mass_spectrum_scan(src, {0.0, 0.5, 1.0});
  CHECK(si[0].second == doctest::Approx(path_count(Free{1, std::nullopt}, {{0}, 0}, {{2}, 6}, axes_of_symmetry(1, 1)).get_d()));
  CHECK(si[2].second == doctest::Approx(std::abs(k_interacting(src.space, src.src, src.dst, 1.0, src.spec))));
  CHECK_THROWS_AS(mass_spectrum_scan(h, {1.0, 0.5}), DimensionError);
}

#include "latticeprop/propagators.hpp"
#include "latticeprop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace latticeprop {

namespace {

std::vector<mpz_class> factorials(std::int64_t n) {
  std::vector<mpz_class> f(static_cast<std::size_t>(n) + 1);
  f[0] = 1;
  for (std::int64_t i = 1; i <= n; ++i) f[i] = f[i - 1] * static_cast<unsigned long>(i);
  return f;
}

mpz_class binom(std::int64_t n, std::int64_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// sign expansion of one step class: count copies of a step of length len
PhaseHistogram sign_split(std::int64_t count, const Rational& len) {
  PhaseHistogram h;
  for (std::int64_t j = 0; j <= count; ++j) h.add(Rational(count - 2 * j) * len, binom(count, j));
  return h;
}

PhaseHistogram convolve(const PhaseHistogram& a, const PhaseHistogram& b) {
  PhaseHistogram out;
  for (const auto& [r, c] : b.bins()) out.merge_shifted(a, r, c);
  return out;
}

void check_time(const LatticePoint& delta) {
  if (delta.time < 0) throw ReversedTimeError("negative time displacement");
}

// Tallies of the steps other than (-1,1), (0,1), (1,1); the three special
// counts follow from the displacement and the proper time rho.
template <class Emit>
void for_each_tally(const AxesOfSymmetry& axes, const LatticePoint& delta, Emit&& emit) {
  const coord_t T = delta.time, X = delta.spatial[0];
  std::vector<std::size_t> other;
  for (std::size_t k = 0; k < axes.size(); ++k)
    if (!(axes[k].dt == 1)) other.push_back(k);
  std::vector<std::int64_t> I(axes.size(), 0);

  auto finish = [&](coord_t tt) {
    Rational base(0), plus0(T + X, 2), minus0(T - X, 2);
    for (auto k : other) {
      const Step& s = axes[k];
      base += Rational(I[k]) * s.length;
      plus0 -= Rational(I[k]) * (Rational(s.dt + s.dx[0]) - s.length) / 2;
      minus0 -= Rational(I[k]) * (Rational(s.dt - s.dx[0]) - s.length) / 2;
    }
    for (coord_t center = 0; center <= tt; ++center) {
      Rational rho = base + Rational(center);
      Rational plus = plus0 - rho / 2, minus = minus0 - rho / 2;
      if (plus.numerator() < 0 || minus.numerator() < 0) continue;
      if (plus.denominator() != 1 || minus.denominator() != 1) continue;
      emit(I, center, plus.numerator(), minus.numerator(), rho);
    }
  };

  auto rec = [&](auto&& self, std::size_t j, coord_t tt, coord_t xx) -> void {
    if (std::llabs(xx) > tt) return;
    if (j == other.size()) {
      finish(tt);
      return;
    }
    const Step& s = axes[other[j]];
    for (std::int64_t c = 0; c * s.dt <= tt; ++c) {
      I[other[j]] = c;
      self(self, j + 1, tt - c * s.dt, xx - c * s.dx[0]);
    }
    I[other[j]] = 0;
  };
  rec(rec, 0, T, X);
}

} // namespace

PhaseHistogram k1_free_histogram(int d, const LatticePoint& delta) {
  check_time(delta);
  if (static_cast<int>(delta.dim()) != d) throw DimensionError("displacement dimension differs from d");
  PhaseHistogram h;
  const coord_t t = delta.time;
  coord_t ax = 0;
  for (auto v : delta.spatial) ax += std::llabs(v);
  if (ax > t) return h;
  auto fact = factorials(t);
  std::vector<coord_t> I(d);
  for (coord_t tot = ax; tot <= t; tot += 2) {
    // I_i counts the steps along +sign(x_i); the last one is fixed by the sum
    coord_t s = (tot + ax) / 2;
    mpz_class bin = 0;
    auto rec = [&](auto&& self, int i, coord_t left) -> void {
      coord_t xi = std::llabs(delta.spatial[i]);
      if (i == d - 1) {
        if (left < xi) return;
        I[i] = left;
        mpz_class den = fact[t - tot];
        for (int k = 0; k < d; ++k) den *= fact[I[k]] * fact[I[k] - std::llabs(delta.spatial[k])];
        bin += fact[t] / den;
        return;
      }
      for (coord_t v = xi; v <= left; ++v) {
        I[i] = v;
        self(self, i + 1, left - v);
      }
    };
    rec(rec, 0, s);
    h.add(Rational(t - tot), bin);
  }
  return h;
}

Amplitude k1_free(int d, const LatticePoint& delta, double m) { return k1_free_histogram(d, delta).collapse(m); }

PhaseHistogram kn_free_histogram(int n, const LatticePoint& delta) {
  check_time(delta);
  if (delta.dim() != 1) throw DimensionError("kn propagators use one spatial dimension");
  if (n > 50) throw CapacityError("kn supported for n <= 50");
  AxesOfSymmetry axes = axes_of_symmetry(n, 1);
  auto fact = factorials(delta.time);
  PhaseHistogram h;
  for_each_tally(axes, delta, [&](const std::vector<std::int64_t>& I, std::int64_t center, std::int64_t plus,
                                  std::int64_t minus, const Rational& rho) {
    std::int64_t total = center + plus + minus;
    mpz_class den = fact[center] * fact[plus] * fact[minus];
    for (std::size_t k = 0; k < I.size(); ++k)
      if (I[k]) {
        total += I[k];
        den *= fact[I[k]];
      }
    h.add(rho, fact[total] / den);
  });
  return h;
}

Amplitude kn_free(int n, const LatticePoint& delta, double m) { return kn_free_histogram(n, delta).collapse(m); }

PhaseHistogram kn_feynman_histogram(int n, const LatticePoint& delta) {
  check_time(delta);
  if (delta.dim() != 1) throw DimensionError("kn propagators use one spatial dimension");
  if (n > 50) throw CapacityError("kn supported for n <= 50");
  AxesOfSymmetry axes = axes_of_symmetry(n, 1);
  auto fact = factorials(delta.time);
  PhaseHistogram h;
  for_each_tally(axes, delta, [&](const std::vector<std::int64_t>& I, std::int64_t center, std::int64_t plus,
                                  std::int64_t minus, const Rational&) {
    std::int64_t total = center + plus + minus;
    mpz_class den = fact[center] * fact[plus] * fact[minus];
    PhaseHistogram signs = sign_split(center, Rational(1));
    for (std::size_t k = 0; k < I.size(); ++k)
      if (I[k]) {
        total += I[k];
        den *= fact[I[k]];
        signs = convolve(signs, sign_split(I[k], axes[k].length));
      }
    h.merge_shifted(signs, Rational(0), fact[total] / den);
  });
  return h;
}

Amplitude kn_feynman(int n, const LatticePoint& delta, double m) {
  return kn_feynman_histogram(n, delta).collapse(m);
}

PhaseHistogram k_oracle_histogram(const SpaceSpec& space, const LatticePoint& x, const LatticePoint& y,
                                  const AxesOfSymmetry& axes, Variant variant) {
  PhaseHistogram h;
  for (const auto& p : enumerate_paths(space, x, y, axes)) {
    if (variant == Variant::standard) {
      h.add(proper_time(p, axes), 1);
      continue;
    }
    PhaseHistogram signs;
    signs.add(Rational(0), 1);
    for (auto k : p.steps)
      if (!axes[k].null()) signs = convolve(signs, sign_split(1, axes[k].length));
    h.merge(signs);
  }
  return h;
}

Amplitude k_oracle(const SpaceSpec& space, const LatticePoint& x, const LatticePoint& y,
                   const AxesOfSymmetry& axes, double m, Variant variant) {
  return k_oracle_histogram(space, x, y, axes, variant).collapse(m);
}

PhaseHistogram k1_quotient_histogram(const SpaceSpec& space, const LatticePoint& x, const LatticePoint& y) {
  validate(space);
  PhaseHistogram h;
  int d = dimension(space);
  for (const auto& img : causal_images(space, x, y)) h.merge(k1_free_histogram(d, img - x));
  return h;
}

Amplitude k1_torus(const Torus& space, const LatticePoint& x, const LatticePoint& y, double m) {
  return k1_quotient_histogram(space, x, y).collapse(m);
}

Amplitude k1_klein(const Klein& space, const LatticePoint& x, const LatticePoint& y, double m) {
  return k1_quotient_histogram(space, x, y).collapse(m);
}

mpz_class k1_desitter(const TropicalDeSitter& space, const LatticePoint& x, const LatticePoint& y) {
  SpaceSpec s = space;
  validate(s);
  if (!contains(s, x) || !contains(s, y))
    throw MembershipError("endpoints must lie on the tropical surface " + describe(s));
  LatticePoint delta = y - x;
  if (delta.time <= 0) throw ReversedTimeError("de-Sitter propagator needs a positive time span");
  coord_t l1 = 0;
  for (auto v : delta.spatial) l1 += std::llabs(v);
  if (l1 != delta.time) return 0;
  // every move in coordinate i must head away from zero once x_i != 0
  for (std::size_t i = 0; i < delta.dim(); ++i) {
    if (x.spatial[i] > 0 && delta.spatial[i] < 0) return 0;
    if (x.spatial[i] < 0 && delta.spatial[i] > 0) return 0;
  }
  if (x.time < 0) return 0;
  auto fact = factorials(delta.time);
  mpz_class den = 1;
  for (auto v : delta.spatial) den *= fact[std::llabs(v)];
  return fact[delta.time] / den;
}

mpz_class max_path_count(int n, coord_t t) {
  AxesOfSymmetry axes = axes_of_symmetry(n, 1);
  auto row = path_count_row(Free{1, std::nullopt}, LatticePoint{{0}, 0}, t, axes);
  mpz_class best = 0;
  for (const auto& [pos, c] : row) best = std::max(best, c);
  return best;
}

double normalization_gp(int n, coord_t t) {
  if (t <= 0) throw ReversedTimeError("normalization needs t > 0");
  AxesOfSymmetry axes = axes_of_symmetry(n, 1);
  double tavg = to_double(axes.mean_time());
  double expo = static_cast<double>(n) / (4.0 * std::numbers::pi);
  return std::pow(static_cast<double>(t) / tavg, expo) * max_path_count(n, t).get_d();
}

CauchyReport cauchy_diagnostic(int p, int q, coord_t t, const std::vector<coord_t>& grid, double m) {
  if (p > q) throw UnsupportedAxesError("cauchy_diagnostic needs p <= q");
  if (t > 64) throw CapacityError("cauchy_diagnostic is capped at t <= 64");
  CauchyReport r{p, q, 0.0, 0.0, std::min(p, q)};
  if (p == q) return r;
  double gp = normalization_gp(p, t), gq = normalization_gp(q, t);
  for (coord_t x : grid) {
    LatticePoint delta{{x}, t};
    Amplitude kp = kn_free(p, delta, m) / gp;
    Amplitude kq = kn_free(q, delta, m) / gq;
    double v = std::abs(kp - kq);
    if (v > r.value) {
      r.value = v;
      r.argmax = static_cast<double>(x);
    }
  }
  return r;
}

} // namespace latticeprop

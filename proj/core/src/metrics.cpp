#include "latticeprop/metrics.hpp"
#include "latticeprop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace latticeprop {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

namespace {

void same_dim(const LatticePoint& a, const LatticePoint& b) {
  if (a.dim() != b.dim()) throw DimensionError("points differ in dimension");
}

Rational rabs(const Rational& r) { return r.numerator() < 0 ? -r : r; }

} // namespace

CausalInterval minkowski_interval(const LatticePoint& a, const LatticePoint& b) {
  same_dim(a, b);
  std::int64_t dt = b.time - a.time;
  std::int64_t q = dt * dt;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    std::int64_t dx = b.spatial[i] - a.spatial[i];
    q -= dx * dx;
  }
  if (q < 0) return CausalInterval::acausal();
  return {std::sqrt(static_cast<double>(q))};
}

CausalInterval taxicab_interval(const LatticePoint& a, const LatticePoint& b) {
  same_dim(a, b);
  std::int64_t v = std::llabs(b.time - a.time);
  for (std::size_t i = 0; i < a.dim(); ++i) v -= std::llabs(b.spatial[i] - a.spatial[i]);
  if (v < 0) return CausalInterval::acausal();
  return {static_cast<double>(v)};
}

std::vector<PrimitiveTriple> primitive_triples(std::int64_t n) {
  std::vector<PrimitiveTriple> out;
  for (std::int64_t m = 2; m * m + 1 <= n; ++m) {
    for (std::int64_t k = (m % 2 == 0) ? 1 : 2; k < m; k += 2) {
      std::int64_t hyp = m * m + k * k;
      if (hyp > n) break;
      if (std::gcd(m, k) != 1) continue;
      std::int64_t a = m * m - k * k, b = 2 * m * k;
      out.push_back({std::min(a, b), std::max(a, b), hyp});
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimitiveTriple& u, const PrimitiveTriple& v) {
    return u.hyp != v.hyp ? u.hyp < v.hyp : u.leg_x < v.leg_x;
  });
  return out;
}

std::optional<std::size_t> AxesOfSymmetry::find(const std::vector<coord_t>& dx, coord_t dt) const {
  for (std::size_t i = 0; i < steps_.size(); ++i)
    if (steps_[i].dt == dt && steps_[i].dx == dx) return i;
  return std::nullopt;
}

coord_t AxesOfSymmetry::max_time() const {
  coord_t m = 0;
  for (const auto& s : steps_) m = std::max(m, s.dt);
  return m;
}

Rational AxesOfSymmetry::mean_time() const {
  coord_t sum = 0;
  for (const auto& s : steps_) sum += s.dt;
  return Rational(sum, static_cast<std::int64_t>(steps_.size()));
}

void AxesOfSymmetry::build_chords() {
  chords_.clear();
  if (d_ != 1) return;
  // unit-hyperbola vertices (x/len, t/len) of the timelike steps, by x
  std::vector<std::pair<Rational, Rational>> v;
  for (const auto& s : steps_)
    if (!s.null()) v.emplace_back(Rational(s.dx[0]) / s.length, Rational(s.dt) / s.length);
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    Rational ax = v[i + 1].first - v[i].first;
    Rational at = v[i + 1].second - v[i].second;
    Rational den = rabs(ax * v[i].second) - rabs(at * v[i].first);
    chords_.push_back({ax, at, den});
  }
  outer_den_ = rabs(v.front().second) - rabs(v.front().first);
}

std::optional<Rational> AxesOfSymmetry::polygonal(coord_t dx, coord_t dt) const {
  if (d_ != 1) throw UnsupportedAxesError("polygonal metric is defined for one spatial dimension");
  Rational X(dx), T(dt);
  Rational best = (rabs(T) - rabs(X)) / outer_den_;
  for (const auto& c : chords_) {
    Rational val = (rabs(c.ax) * rabs(T) - rabs(c.at * X)) / c.den;
    best = std::min(best, val);
  }
  if (best.numerator() < 0) return std::nullopt;
  return best;
}

AxesOfSymmetry axes_of_symmetry(int n, int d) {
  if (n < 1 || d < 1) throw UnsupportedAxesError("axes need n >= 1 and d >= 1");
  if (n >= 2 && d != 1) throw UnsupportedAxesError("axes of order n >= 2 exist only for d = 1");
  AxesOfSymmetry a;
  a.n_ = n;
  a.d_ = d;
  if (d == 1) {
    std::vector<Step> s;
    s.push_back({{-1}, 1, Rational(0)});
    s.push_back({{0}, 1, Rational(1)});
    s.push_back({{1}, 1, Rational(0)});
    for (const auto& tr : primitive_triples(n)) {
      for (int sg : {-1, 1}) {
        s.push_back({{sg * tr.leg_x}, tr.hyp, Rational(tr.leg_i)});
        s.push_back({{sg * tr.leg_i}, tr.hyp, Rational(tr.leg_x)});
      }
    }
    // slope order; primitive triples never share a direction
    std::sort(s.begin(), s.end(), [](const Step& u, const Step& v) {
      return Rational(u.dx[0], u.dt) < Rational(v.dx[0], v.dt);
    });
    a.steps_ = std::move(s);
  } else {
    for (int i = 0; i < d; ++i) {
      Step st{std::vector<coord_t>(d, 0), 1, Rational(0)};
      st.dx[i] = -1;
      a.steps_.push_back(st);
    }
    a.steps_.push_back({std::vector<coord_t>(d, 0), 1, Rational(1)});
    for (int i = d - 1; i >= 0; --i) {
      Step st{std::vector<coord_t>(d, 0), 1, Rational(0)};
      st.dx[i] = 1;
      a.steps_.push_back(st);
    }
  }
  a.build_chords();
  return a;
}

AxesOfSymmetry null_axes(int d) {
  if (d < 1) throw UnsupportedAxesError("d must be positive");
  AxesOfSymmetry a;
  a.n_ = 1;
  a.d_ = d;
  for (int i = 0; i < d; ++i) {
    Step st{std::vector<coord_t>(d, 0), 1, Rational(0)};
    st.dx[i] = -1;
    a.steps_.push_back(st);
  }
  for (int i = d - 1; i >= 0; --i) {
    Step st{std::vector<coord_t>(d, 0), 1, Rational(0)};
    st.dx[i] = 1;
    a.steps_.push_back(st);
  }
  return a;
}

std::optional<Rational> polygonal_interval_exact(const AxesOfSymmetry& axes, const LatticePoint& a,
                                                 const LatticePoint& b) {
  same_dim(a, b);
  if (axes.order() == 1) {
    std::int64_t v = std::llabs(b.time - a.time);
    for (std::size_t i = 0; i < a.dim(); ++i) v -= std::llabs(b.spatial[i] - a.spatial[i]);
    if (v < 0) return std::nullopt;
    return Rational(v);
  }
  if (a.dim() != 1) throw UnsupportedAxesError("polygonal metric of order >= 2 needs d = 1");
  return axes.polygonal(b.spatial[0] - a.spatial[0], b.time - a.time);
}

CausalInterval polygonal_interval(const AxesOfSymmetry& axes, const LatticePoint& a, const LatticePoint& b) {
  auto r = polygonal_interval_exact(axes, a, b);
  if (!r) return CausalInterval::acausal();
  return {to_double(*r)};
}

} // namespace latticeprop

#include "latticeprop/paths.hpp"
#include "latticeprop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace latticeprop {

namespace {

void check_axes(const SpaceSpec& space, const AxesOfSymmetry& axes) {
  if (axes.dim() != dimension(space))
    throw DimensionError("axes dimension " + std::to_string(axes.dim()) + " differs from space " +
                         describe(space));
}

void apply(LatticePoint& p, const Step& s, int sign = 1) {
  for (std::size_t i = 0; i < p.dim(); ++i) p.spatial[i] += sign * s.dx[i];
  p.time += sign * s.dt;
}

coord_t l1_to(const LatticePoint& p, const LatticePoint& y) {
  coord_t s = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) s += std::llabs(y.spatial[i] - p.spatial[i]);
  return s;
}

// every A_n step has |dx|_1 <= dt, so a point is useful only inside the backward cone of y
bool can_reach(const LatticePoint& p, const LatticePoint& y) {
  coord_t rt = y.time - p.time;
  return rt >= 0 && l1_to(p, y) <= rt;
}

void enumerate_on(const SpaceSpec& space, const LatticePoint& x, const LatticePoint& y,
                  const AxesOfSymmetry& axes, std::vector<Path>& out) {
  if (!contains(space, x) || !contains(space, y)) return;
  LatticePoint cur = x;
  std::vector<std::uint32_t> word;
  auto rec = [&](auto&& self) -> void {
    if (cur.time == y.time) {
      if (cur.spatial == y.spatial) out.push_back({x, word});
      return;
    }
    for (std::uint32_t k = 0; k < axes.size(); ++k) {
      const Step& s = axes[k];
      apply(cur, s);
      if (can_reach(cur, y) && contains(space, cur)) {
        word.push_back(k);
        self(self);
        word.pop_back();
      }
      apply(cur, s, -1);
    }
  };
  rec(rec);
}

SpaceSpec cover_of(const SpaceSpec& s) { return Free{dimension(s), std::nullopt}; }

struct VecLess {
  bool operator()(const std::vector<coord_t>& a, const std::vector<coord_t>& b) const { return a < b; }
};

// layered DP; when target is set, points outside its backward cone are dropped
std::map<std::vector<coord_t>, mpz_class> count_layers(const SpaceSpec& space, const LatticePoint& x,
                                                       coord_t dt, const AxesOfSymmetry& axes,
                                                       const LatticePoint* target) {
  using Layer = std::map<std::vector<coord_t>, mpz_class, VecLess>;
  std::vector<Layer> layer(static_cast<std::size_t>(dt) + 1);
  if (!contains(space, x)) return {};
  layer[0][x.spatial] = 1;
  LatticePoint p;
  for (coord_t t = 0; t < dt; ++t) {
    for (const auto& [pos, c] : layer[t]) {
      for (const auto& s : axes.steps()) {
        if (t + s.dt > dt) continue;
        p.spatial = pos;
        p.time = x.time + t;
        apply(p, s);
        if (target && !can_reach(p, *target)) continue;
        if (!contains(space, p)) continue;
        layer[t + s.dt][p.spatial] += c;
      }
    }
    layer[t].clear();
  }
  return {layer[dt].begin(), layer[dt].end()};
}

} // namespace

LatticePoint Path::endpoint(const AxesOfSymmetry& axes) const {
  LatticePoint p = origin;
  for (auto k : steps) apply(p, axes[k]);
  return p;
}

std::vector<LatticePoint> Path::vertices(const AxesOfSymmetry& axes) const {
  std::vector<LatticePoint> v{origin};
  LatticePoint p = origin;
  for (auto k : steps) {
    apply(p, axes[k]);
    v.push_back(p);
  }
  return v;
}

StepTally StepTally::of(const Path& p, const AxesOfSymmetry& axes) {
  StepTally t;
  t.counts.assign(axes.size(), 0);
  for (auto k : p.steps) ++t.counts[k];
  return t;
}

std::int64_t StepTally::total() const {
  std::int64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

LatticePoint StepTally::displacement(const AxesOfSymmetry& axes) const {
  LatticePoint d{std::vector<coord_t>(axes.dim(), 0), 0};
  for (std::size_t k = 0; k < counts.size(); ++k) {
    for (int i = 0; i < axes.dim(); ++i) d.spatial[i] += counts[k] * axes[k].dx[i];
    d.time += counts[k] * axes[k].dt;
  }
  return d;
}

coord_t enumeration_cap(int d) { return d == 1 ? 12 : 8; }

std::vector<Path> enumerate_paths(const SpaceSpec& space, const LatticePoint& x, const LatticePoint& y,
                                  const AxesOfSymmetry& axes) {
  validate(space);
  check_axes(space, axes);
  coord_t dt = y.time - x.time;
  if (dt < 0) throw ReversedTimeError("destination precedes source");
  if (dt > enumeration_cap(dimension(space)))
    throw CapacityError("path enumeration is capped at dt <= " +
                        std::to_string(enumeration_cap(dimension(space))) + " for d = " +
                        std::to_string(dimension(space)) + "; use path_count or the analytic propagators");
  std::vector<Path> out;
  if (is_quotient(space)) {
    SpaceSpec cover = cover_of(space);
    for (const auto& img : causal_images(space, x, y)) enumerate_on(cover, x, img, axes, out);
  } else {
    enumerate_on(space, x, y, axes, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational proper_time(const Path& p, const AxesOfSymmetry& axes) {
  Rational r(0);
  for (auto k : p.steps) r += axes[k].length;
  return r;
}

double proper_time_minkowski(const Path& p, const AxesOfSymmetry& axes) {
  double r = 0;
  for (auto k : p.steps) {
    const Step& s = axes[k];
    double q = static_cast<double>(s.dt * s.dt);
    for (auto v : s.dx) q -= static_cast<double>(v * v);
    r += std::sqrt(q);
  }
  return r;
}

Path canonicalize(const std::vector<LatticePoint>& raw, const AxesOfSymmetry& axes) {
  if (raw.empty()) throw NonGenerableError("empty vertex list");
  Path p{raw.front(), {}};
  for (std::size_t v = 1; v < raw.size(); ++v) {
    if (raw[v].dim() != static_cast<std::size_t>(axes.dim()))
      throw DimensionError("vertex dimension differs from axes");
    LatticePoint d = raw[v] - raw[v - 1];
    std::optional<std::pair<std::uint32_t, coord_t>> hit;
    if (d.time > 0) {
      for (std::uint32_t k = 0; k < axes.size() && !hit; ++k) {
        const Step& s = axes[k];
        if (d.time % s.dt != 0) continue;
        coord_t mult = d.time / s.dt;
        bool ok = true;
        for (int i = 0; i < axes.dim(); ++i) ok = ok && d.spatial[i] == mult * s.dx[i];
        if (ok) hit = std::pair{k, mult};
      }
    }
    if (!hit) throw NonGenerableError("difference " + to_string(d) + " is not a multiple of an axis step");
    p.steps.insert(p.steps.end(), static_cast<std::size_t>(hit->second), hit->first);
  }
  return p;
}

std::map<std::vector<coord_t>, mpz_class> path_count_row(const SpaceSpec& space, const LatticePoint& x,
                                                         coord_t dt, const AxesOfSymmetry& axes) {
  validate(space);
  check_axes(space, axes);
  if (dt < 0) throw ReversedTimeError("negative time span");
  if (is_quotient(space)) {
    std::map<std::vector<coord_t>, mpz_class> out;
    for (auto& [pos, c] : count_layers(cover_of(space), x, dt, axes, nullptr)) {
      LatticePoint q = canonical_rep(space, LatticePoint{pos, x.time + dt});
      out[q.spatial] += c;
    }
    return out;
  }
  return count_layers(space, x, dt, axes, nullptr);
}

mpz_class path_count(const SpaceSpec& space, const LatticePoint& x, const LatticePoint& y,
                     const AxesOfSymmetry& axes) {
  validate(space);
  check_axes(space, axes);
  coord_t dt = y.time - x.time;
  if (dt < 0) throw ReversedTimeError("destination precedes source");
  if (x.dim() != y.dim() || static_cast<int>(x.dim()) != dimension(space))
    throw DimensionError("endpoint dimension differs from space");
  if (is_quotient(space)) {
    mpz_class total = 0;
    SpaceSpec cover = cover_of(space);
    for (const auto& img : causal_images(space, x, y)) total += path_count(cover, x, img, axes);
    return total;
  }
  if (!contains(space, y)) return 0;
  auto row = count_layers(space, x, dt, axes, &y);
  auto it = row.find(y.spatial);
  return it == row.end() ? mpz_class(0) : it->second;
}

} // namespace latticeprop

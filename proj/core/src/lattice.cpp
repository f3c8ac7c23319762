#include "latticeprop/lattice.hpp"
#include "latticeprop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace latticeprop {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

coord_t floor_div(coord_t a, coord_t b) {
  coord_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// representative in (-L, L] and the number of 2L wraps removed
std::pair<coord_t, coord_t> wrap(coord_t v, coord_t L) {
  coord_t period = 2 * L;
  coord_t k = floor_div(v + L - 1, period);
  return {v - k * period, k};
}

void check_dim(const SpaceSpec& s, const LatticePoint& p) {
  if (static_cast<int>(p.dim()) != dimension(s))
    throw DimensionError("point " + to_string(p) + " has dimension " + std::to_string(p.dim()) +
                         ", space " + describe(s) + " expects " + std::to_string(dimension(s)));
}

coord_t l1_spatial(const LatticePoint& a, const LatticePoint& b) {
  coord_t s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::llabs(a.spatial[i] - b.spatial[i]);
  return s;
}

} // namespace

LatticePoint operator+(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r.spatial[i] += b.spatial[i];
  r.time += b.time;
  return r;
}

LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r.spatial[i] -= b.spatial[i];
  r.time -= b.time;
  return r;
}

std::string to_string(const LatticePoint& p) {
  std::ostringstream os;
  os << "((";
  for (std::size_t i = 0; i < p.dim(); ++i) os << (i ? "," : "") << p.spatial[i];
  os << ")," << p.time << ")";
  return os.str();
}

int dimension(const SpaceSpec& s) {
  return std::visit(overloaded{[](const Free& f) { return f.d; },
                               [](const Torus& t) { return t.d; },
                               [](const Klein&) { return 2; },
                               [](const TropicalDeSitter& t) { return t.d; }},
                    s);
}

std::string describe(const SpaceSpec& s) {
  std::ostringstream os;
  std::visit(overloaded{[&](const Free& f) {
                          os << "Free{d=" << f.d;
                          if (f.extents) {
                            os << ",L=";
                            for (auto L : *f.extents) os << L << ' ';
                          }
                          os << '}';
                        },
                        [&](const Torus& t) {
                          os << "Torus{d=" << t.d << ",L=";
                          for (auto L : t.extents) os << L << ' ';
                          os << '}';
                        },
                        [&](const Klein& k) { os << "Klein{" << k.L1 << ',' << k.L2 << '}'; },
                        [&](const TropicalDeSitter& t) {
                          os << "TropicalDeSitter{d=" << t.d << ",c=" << t.c << '}';
                        }},
             s);
  return os.str();
}

void validate(const SpaceSpec& s) {
  std::visit(overloaded{[](const Free& f) {
                          if (f.d < 1) throw DimensionError("d must be positive");
                          if (f.extents) {
                            if (static_cast<int>(f.extents->size()) != f.d)
                              throw DimensionError("extent count differs from d");
                            for (auto L : *f.extents)
                              if (L < 0) throw DimensionError("negative extent");
                          }
                        },
                        [](const Torus& t) {
                          if (t.d < 1) throw DimensionError("d must be positive");
                          if (static_cast<int>(t.extents.size()) != t.d)
                            throw DimensionError("extent count differs from d");
                          for (auto L : t.extents)
                            if (L <= 0) throw DimensionError("torus extents must be positive");
                        },
                        [](const Klein& k) {
                          if (k.L1 <= 0 || k.L2 <= 0)
                            throw DimensionError("Klein extents must be positive");
                        },
                        [](const TropicalDeSitter& t) {
                          if (t.d < 1) throw DimensionError("d must be positive");
                          if (t.c < 0) throw DimensionError("c must be nonnegative");
                        }},
             s);
}

bool is_quotient(const SpaceSpec& s) {
  return std::holds_alternative<Torus>(s) || std::holds_alternative<Klein>(s);
}

SpaceSpec RefinedSpace::resolved() const {
  if (refinement < 1) throw DimensionError("refinement must be >= 1");
  const coord_t m = refinement;
  return std::visit(overloaded{[&](Free f) -> SpaceSpec {
                                 if (f.extents)
                                   for (auto& L : *f.extents) L *= m;
                                 return f;
                               },
                               [&](Torus t) -> SpaceSpec {
                                 for (auto& L : t.extents) L *= m;
                                 return t;
                               },
                               [&](Klein k) -> SpaceSpec {
                                 k.L1 *= m;
                                 k.L2 *= m;
                                 return k;
                               },
                               [&](TropicalDeSitter t) -> SpaceSpec { return t; }},
                    base);
}

bool contains(const SpaceSpec& space, const LatticePoint& p) {
  check_dim(space, p);
  return std::visit(overloaded{[&](const Free& f) {
                                 if (!f.extents) return true;
                                 for (int i = 0; i < f.d; ++i)
                                   if (std::llabs(p.spatial[i]) > (*f.extents)[i]) return false;
                                 return true;
                               },
                               [](const Torus&) { return true; },
                               [](const Klein&) { return true; },
                               [&](const TropicalDeSitter& t) {
                                 coord_t s = 0;
                                 for (auto v : p.spatial) s += std::llabs(v);
                                 return s - std::llabs(p.time) == t.c;
                               }},
                    space);
}

LatticePoint closest_point(const RefinedSpace& space, const std::vector<double>& spatial, double time) {
  SpaceSpec s = space.resolved();
  if (static_cast<int>(spatial.size()) != dimension(s))
    throw DimensionError("coordinate count differs from d");
  LatticePoint p;
  p.spatial.reserve(spatial.size());
  for (double v : spatial) p.spatial.push_back(static_cast<coord_t>(std::round(v)));
  p.time = static_cast<coord_t>(std::round(time));
  const std::vector<coord_t>* ext = nullptr;
  if (auto* f = std::get_if<Free>(&s); f && f->extents) ext = &*f->extents;
  if (auto* t = std::get_if<Torus>(&s)) ext = &t->extents;
  std::vector<coord_t> kl;
  if (auto* k = std::get_if<Klein>(&s)) {
    kl = {k->L1, k->L2};
    ext = &kl;
  }
  if (ext)
    for (std::size_t i = 0; i < p.dim(); ++i)
      p.spatial[i] = std::clamp(p.spatial[i], -(*ext)[i], (*ext)[i]);
  return p;
}

LatticePoint canonical_rep(const SpaceSpec& space, const LatticePoint& p) {
  check_dim(space, p);
  if (auto* t = std::get_if<Torus>(&space)) {
    LatticePoint r = p;
    for (int i = 0; i < t->d; ++i) r.spatial[i] = wrap(r.spatial[i], t->extents[i]).first;
    return r;
  }
  if (auto* k = std::get_if<Klein>(&space)) {
    LatticePoint r = p;
    auto [x1, w] = wrap(p.spatial[0], k->L1);
    coord_t x2 = (w % 2 != 0) ? -p.spatial[1] : p.spatial[1];
    r.spatial[0] = x1;
    r.spatial[1] = wrap(x2, k->L2).first;
    return r;
  }
  throw UnsupportedSpaceError("canonical_rep needs a Torus or Klein space, got " + describe(space));
}

std::vector<LatticePoint> causal_images(const SpaceSpec& space, const LatticePoint& src,
                                        const LatticePoint& dst) {
  check_dim(space, src);
  check_dim(space, dst);
  const coord_t dt = dst.time - src.time;
  if (dt < 0) throw ReversedTimeError("destination precedes source");
  std::set<LatticePoint> out;

  // shifts m with |base + 2 m L - s| <= dt
  auto range = [dt](coord_t base, coord_t s, coord_t L) {
    coord_t period = 2 * L;
    coord_t lo = -floor_div(base - s + dt, period);
    coord_t hi = floor_div(s + dt - base, period);
    return std::pair{lo, hi};
  };

  if (auto* t = std::get_if<Torus>(&space)) {
    // per-axis candidate lists, then the product filtered by the l1 cone
    std::vector<std::vector<coord_t>> axis(t->d);
    for (int i = 0; i < t->d; ++i) {
      auto [lo, hi] = range(dst.spatial[i], src.spatial[i], t->extents[i]);
      for (coord_t m = lo; m <= hi; ++m) axis[i].push_back(dst.spatial[i] + 2 * m * t->extents[i]);
    }
    LatticePoint cur = dst;
    auto rec = [&](auto&& self, int i) -> void {
      if (i == t->d) {
        if (l1_spatial(cur, src) <= dt) out.insert(cur);
        return;
      }
      for (coord_t v : axis[i]) {
        cur.spatial[i] = v;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  } else if (auto* k = std::get_if<Klein>(&space)) {
    auto [lo1, hi1] = range(dst.spatial[0], src.spatial[0], k->L1);
    for (coord_t m1 = lo1; m1 <= hi1; ++m1) {
      coord_t x1 = dst.spatial[0] + 2 * m1 * k->L1;
      coord_t base2 = (m1 % 2 != 0) ? -dst.spatial[1] : dst.spatial[1];
      auto [lo2, hi2] = range(base2, src.spatial[1], k->L2);
      for (coord_t m2 = lo2; m2 <= hi2; ++m2) {
        LatticePoint c{{x1, base2 + 2 * m2 * k->L2}, dst.time};
        if (l1_spatial(c, src) <= dt) out.insert(c);
      }
    }
  } else {
    throw UnsupportedSpaceError("causal_images needs a Torus or Klein space, got " + describe(space));
  }
  return {out.begin(), out.end()};
}

} // namespace latticeprop

#include "latticeprop/interactions.hpp"
#include "latticeprop/errors.hpp"
#include "latticeprop/propagators.hpp"

#include <algorithm>
#include <cmath>

namespace latticeprop {

namespace {

void check_sorted(const std::vector<double>& grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) throw DimensionError("mass grid must be sorted");
}

// rows[t][x + T] after each time step, origin at lattice 0
std::vector<Amplitude> transfer(const SpaceSpec& space, coord_t x0, coord_t T, int n, double m,
                                const PotentialSpec& spec) {
  const coord_t W = 2 * T + 1;
  std::vector<Amplitude> row(W, 0.0), next(W, 0.0);
  row[T] = 1.0;
  const double scale = m / n;
  for (coord_t t = 0; t < T; ++t) {
    std::fill(next.begin(), next.end(), Amplitude(0.0));
    for (coord_t j = 0; j < W; ++j) {
      coord_t x = x0 + j - T;
      if (!contains(space, LatticePoint{{x}, 0})) continue;
      double v = coulomb_potential(static_cast<double>(x) / n, spec);
      Amplitude acc = 0.0;
      // (-1,1) and (1,1) are null, (0,1) has length 1
      if (j > 0) acc += row[j - 1] * std::polar(1.0, -scale * v);
      if (j + 1 < W) acc += row[j + 1] * std::polar(1.0, -scale * v);
      acc += row[j] * std::polar(1.0, scale * (1.0 - v));
      next[j] = acc;
    }
    std::swap(row, next);
  }
  return row;
}

SpaceSpec line_space(const RefinedSpace& space) {
  SpaceSpec s = space.resolved();
  auto* f = std::get_if<Free>(&s);
  if (!f || f->d != 1) throw UnsupportedSpaceError("interactions need a refined Free space with d = 1");
  return s;
}

} // namespace

double coulomb_potential(double x, const PotentialSpec& spec) {
  return spec.coupling * -std::abs(x - spec.charge_position);
}

Amplitude k_interacting(const RefinedSpace& space, const LatticePoint& src, const LatticePoint& dst, double m,
                        const PotentialSpec& spec) {
  SpaceSpec s = line_space(space);
  if (src.dim() != 1 || dst.dim() != 1) throw DimensionError("interactions use one spatial dimension");
  coord_t T = dst.time - src.time;
  if (T < 0) throw ReversedTimeError("destination precedes source");
  if (T > 100000) throw CapacityError("interacting propagator is capped at 100000 steps");
  coord_t dx = dst.spatial[0] - src.spatial[0];
  if (std::llabs(dx) > T) return 0.0;
  if (!contains(s, src) || !contains(s, dst)) return 0.0;
  auto row = transfer(s, src.spatial[0], T, space.refinement, m, spec);
  return row[dx + T];
}

std::vector<ProfilePoint> interacting_profile(int n, double t, double m, const PotentialSpec& spec) {
  if (n < 1) throw DimensionError("refinement must be >= 1");
  if (!(t >= 0)) throw ReversedTimeError("profile needs t >= 0");
  coord_t T = static_cast<coord_t>(std::llround(t * n));
  if (T > 100000) throw CapacityError("interacting profile is capped at 100000 steps");
  SpaceSpec s = Free{1, std::nullopt};
  auto row = transfer(s, 0, T, n, m, spec);
  std::vector<ProfilePoint> out;
  out.reserve(row.size());
  for (coord_t j = 0; j < static_cast<coord_t>(row.size()); ++j) {
    coord_t x = j - T;
    out.push_back({x, static_cast<double>(x) / n, row[j]});
  }
  return out;
}

std::vector<ProfilePoint> free_profile(int n, double t, double m) {
  return interacting_profile(n, t, m, PotentialSpec{0.0, 0.0});
}

double mean_position(const std::vector<ProfilePoint>& profile) {
  double num = 0, den = 0;
  for (const auto& p : profile) {
    double a = std::abs(p.value);
    num += p.x * a;
    den += a;
  }
  return den > 0 ? num / den : 0.0;
}

std::vector<std::pair<double, double>> mass_spectrum_scan(const PhaseHistogram& histogram,
                                                          const std::vector<double>& m_grid) {
  check_sorted(m_grid);
  std::vector<std::pair<double, double>> out;
  out.reserve(m_grid.size());
  for (double m : m_grid) out.emplace_back(m, std::abs(histogram.collapse(m)));
  return out;
}

std::vector<std::pair<double, double>> mass_spectrum_scan(const InteractingSource& source,
                                                          const std::vector<double>& m_grid) {
  check_sorted(m_grid);
  std::vector<std::pair<double, double>> out;
  out.reserve(m_grid.size());
  for (double m : m_grid)
    out.emplace_back(m, std::abs(k_interacting(source.space, source.src, source.dst, m, source.spec)));
  return out;
}

} // namespace latticeprop

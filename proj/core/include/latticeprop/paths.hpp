#pragma once

#include "latticeprop/lattice.hpp"
#include "latticeprop/metrics.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

namespace latticeprop {

// origin plus indices into an AxesOfSymmetry step list
struct Path {
  LatticePoint origin;
  std::vector<std::uint32_t> steps;

  LatticePoint endpoint(const AxesOfSymmetry& axes) const;
  std::vector<LatticePoint> vertices(const AxesOfSymmetry& axes) const;
  auto operator<=>(const Path&) const = default;
  bool operator==(const Path&) const = default;
};

// per-step-index counts I_a
struct StepTally {
  std::vector<std::int64_t> counts;

  static StepTally of(const Path& p, const AxesOfSymmetry& axes);
  LatticePoint displacement(const AxesOfSymmetry& axes) const;
  std::int64_t total() const;
};

coord_t enumeration_cap(int d);

std::vector<Path> enumerate_paths(const SpaceSpec& space, const LatticePoint& x, const LatticePoint& y,
                                  const AxesOfSymmetry& axes);

Rational proper_time(const Path& p, const AxesOfSymmetry& axes);
double proper_time_minkowski(const Path& p, const AxesOfSymmetry& axes);

Path canonicalize(const std::vector<LatticePoint>& raw, const AxesOfSymmetry& axes);

mpz_class path_count(const SpaceSpec& space, const LatticePoint& x, const LatticePoint& y,
                     const AxesOfSymmetry& axes);

// path counts from x to every endpoint reachable after exactly dt time units
// (non-quotient spaces; endpoint key is the spatial vector)
std::map<std::vector<coord_t>, mpz_class> path_count_row(const SpaceSpec& space, const LatticePoint& x,
                                                         coord_t dt, const AxesOfSymmetry& axes);

} // namespace latticeprop

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace latticeprop {

using coord_t = std::int64_t;

struct LatticePoint {
  std::vector<coord_t> spatial;
  coord_t time = 0;

  std::size_t dim() const { return spatial.size(); }
  auto operator<=>(const LatticePoint&) const = default;
  bool operator==(const LatticePoint&) const = default;
};

LatticePoint operator+(const LatticePoint& a, const LatticePoint& b);
LatticePoint operator-(const LatticePoint& a, const LatticePoint& b);
std::string to_string(const LatticePoint& p);

struct Free {
  int d = 1;
  std::optional<std::vector<coord_t>> extents;  // |x_i| <= L_i when present
};
struct Torus {
  int d = 1;
  std::vector<coord_t> extents;
};
// d is always 2; wrapping x1 reflects x2
struct Klein {
  coord_t L1 = 1, L2 = 1;
};
// points with sum|x_i| - |t| == c
struct TropicalDeSitter {
  int d = 1;
  coord_t c = 0;
};

using SpaceSpec = std::variant<Free, Torus, Klein, TropicalDeSitter>;

int dimension(const SpaceSpec& s);
std::string describe(const SpaceSpec& s);
void validate(const SpaceSpec& s);

struct RefinedSpace {
  SpaceSpec base;
  int refinement = 1;
  // extents multiplied by the refinement, c left alone
  SpaceSpec resolved() const;
};

bool contains(const SpaceSpec& space, const LatticePoint& p);

// round half away from zero per coordinate, clamp to extents when finite
LatticePoint closest_point(const RefinedSpace& space, const std::vector<double>& spatial, double time);

LatticePoint canonical_rep(const SpaceSpec& space, const LatticePoint& p);

// lifts of dst inside the causal cone of src (l1 spatial distance <= dt), sorted
std::vector<LatticePoint> causal_images(const SpaceSpec& space, const LatticePoint& src,
                                        const LatticePoint& dst);

bool is_quotient(const SpaceSpec& s);

} // namespace latticeprop

#pragma once

#include "latticeprop/lattice.hpp"

#include <boost/rational.hpp>

#include <optional>
#include <vector>

namespace latticeprop {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& r);

// nullopt value means acausal
struct CausalInterval {
  std::optional<double> value;
  bool causal() const { return value.has_value(); }
  static CausalInterval acausal() { return {}; }
};

CausalInterval minkowski_interval(const LatticePoint& a, const LatticePoint& b);
CausalInterval taxicab_interval(const LatticePoint& a, const LatticePoint& b);

struct PrimitiveTriple {
  std::int64_t leg_x = 0;  // shorter leg
  std::int64_t leg_i = 0;
  std::int64_t hyp = 0;
  bool operator==(const PrimitiveTriple&) const = default;
};

// all primitive triples with hyp <= n, sorted by (hyp, leg_x)
std::vector<PrimitiveTriple> primitive_triples(std::int64_t n);

struct Step {
  std::vector<coord_t> dx;
  coord_t dt = 1;
  Rational length;
  bool null() const { return length.numerator() == 0; }
};

class AxesOfSymmetry {
public:
  int order() const { return n_; }
  int dim() const { return d_; }
  const std::vector<Step>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  const Step& operator[](std::size_t i) const { return steps_[i]; }
  std::size_t center() const { return (steps_.size() - 1) / 2; }
  // index of the reflected step (x -> -x); the list is mirror ordered
  std::size_t mirror(std::size_t i) const { return steps_.size() - 1 - i; }
  std::optional<std::size_t> find(const std::vector<coord_t>& dx, coord_t dt) const;
  coord_t max_time() const;
  Rational mean_time() const;

  // polygonal gauge, exact; nullopt when negative
  std::optional<Rational> polygonal(coord_t dx, coord_t dt) const;

  friend AxesOfSymmetry axes_of_symmetry(int n, int d);
  friend AxesOfSymmetry null_axes(int d);

private:
  struct Chord {
    Rational ax, at, den;
  };
  void build_chords();

  int n_ = 1;
  int d_ = 1;
  std::vector<Step> steps_;
  std::vector<Chord> chords_;
  Rational outer_den_{1};
};

AxesOfSymmetry axes_of_symmetry(int n, int d);

// the 2d null steps (+-e_i, 1) with no rest step
AxesOfSymmetry null_axes(int d);

CausalInterval polygonal_interval(const AxesOfSymmetry& axes, const LatticePoint& a, const LatticePoint& b);
std::optional<Rational> polygonal_interval_exact(const AxesOfSymmetry& axes, const LatticePoint& a,
                                                 const LatticePoint& b);

} // namespace latticeprop

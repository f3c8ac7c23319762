#pragma once

#include "latticeprop/histogram.hpp"
#include "latticeprop/lattice.hpp"
#include "latticeprop/metrics.hpp"
#include "latticeprop/paths.hpp"

#include <gmpxx.h>

#include <vector>

namespace latticeprop {

enum class Variant { standard, feynman };

// K_1 in d spatial dimensions for displacement delta (phase e^{i m rho})
PhaseHistogram k1_free_histogram(int d, const LatticePoint& delta);
Amplitude k1_free(int d, const LatticePoint& delta, double m);

// one spatial dimension, axes A_n
PhaseHistogram kn_free_histogram(int n, const LatticePoint& delta);
Amplitude kn_free(int n, const LatticePoint& delta, double m);

PhaseHistogram kn_feynman_histogram(int n, const LatticePoint& delta);
Amplitude kn_feynman(int n, const LatticePoint& delta, double m);

// literal sum over enumerate_paths
PhaseHistogram k_oracle_histogram(const SpaceSpec& space, const LatticePoint& x, const LatticePoint& y,
                                  const AxesOfSymmetry& axes, Variant variant = Variant::standard);
Amplitude k_oracle(const SpaceSpec& space, const LatticePoint& x, const LatticePoint& y,
                   const AxesOfSymmetry& axes, double m, Variant variant = Variant::standard);

// sum of k1_free over causal images (Torus or Klein)
PhaseHistogram k1_quotient_histogram(const SpaceSpec& space, const LatticePoint& x, const LatticePoint& y);
Amplitude k1_torus(const Torus& space, const LatticePoint& x, const LatticePoint& y, double m);
Amplitude k1_klein(const Klein& space, const LatticePoint& x, const LatticePoint& y, double m);

mpz_class k1_desitter(const TropicalDeSitter& space, const LatticePoint& x, const LatticePoint& y);

// largest path count over endpoints at time t for A_n, d = 1
mpz_class max_path_count(int n, coord_t t);
double normalization_gp(int n, coord_t t);

struct CauchyReport {
  int p = 0, q = 0;
  double value = 0;   // sup over the grid
  double argmax = 0;  // grid point attaining it
  int min_pq = 0;
};

CauchyReport cauchy_diagnostic(int p, int q, coord_t t, const std::vector<coord_t>& grid, double m = 1.0);

} // namespace latticeprop

#pragma once

#include "latticeprop/histogram.hpp"
#include "latticeprop/lattice.hpp"

#include <utility>
#include <vector>

namespace latticeprop {

struct PotentialSpec {
  double charge_position = 0.0;  // physical units
  double coupling = 1.0;
};

double coulomb_potential(double x, const PotentialSpec& spec);

// A_1 paths on Free{d=1} refined by n. Each step landing on lattice site x
// adds (m/n) * (length - V(x/n)) to the phase, so coupling 0 gives
// k1_free with mass m/n.
Amplitude k_interacting(const RefinedSpace& space, const LatticePoint& src, const LatticePoint& dst, double m,
                        const PotentialSpec& spec);

struct ProfilePoint {
  coord_t lattice_x = 0;
  double x = 0;  // physical, lattice_x / n
  Amplitude value;
};

// every endpoint after steps = round(t n) lattice steps from the origin
std::vector<ProfilePoint> interacting_profile(int n, double t, double m, const PotentialSpec& spec);
std::vector<ProfilePoint> free_profile(int n, double t, double m);

// sum x |K| / sum |K|
double mean_position(const std::vector<ProfilePoint>& profile);

struct InteractingSource {
  RefinedSpace space;
  LatticePoint src, dst;
  PotentialSpec spec;
};

// (m, |K(m)|); free sources reuse one histogram
std::vector<std::pair<double, double>> mass_spectrum_scan(const PhaseHistogram& histogram,
                                                          const std::vector<double>& m_grid);
std::vector<std::pair<double, double>> mass_spectrum_scan(const InteractingSource& source,
                                                          const std::vector<double>& m_grid);

} // namespace latticeprop

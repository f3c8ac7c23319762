#pragma once

#include <complex>
#include <functional>

namespace latticeprop {

template <class T>
struct QuadResult {
  T value{};
  int points = 0;        // intervals in the last rule
  double change = 0;     // relative change between the last two rules
  bool converged = false;
};

// composite Simpson, doubling from n0 intervals until the relative change
// is below rel_tol or max_points is reached
QuadResult<double> simpson(const std::function<double(double)>& f, double a, double b, int n0,
                           double rel_tol = 1e-6, int max_points = 1 << 14);
QuadResult<std::complex<double>> simpson_complex(const std::function<std::complex<double>(double)>& f, double a,
                                         double b, int n0, double rel_tol = 1e-6, int max_points = 1 << 14);

// single fixed rule, n even
double simpson_fixed(const std::function<double(double)>& f, double a, double b, int n);

} // namespace latticeprop

#include "latticeprop/quadrature.hpp"

#include <cmath>
#include <vector>

namespace latticeprop {

namespace {

// Reuses the odd/even node sums across doublings: the new rule only
// evaluates the midpoints.
template <class T>
QuadResult<T> run(const std::function<T(double)>& f, double a, double b, int n0, double rel_tol,
                  int max_points) {
  if (n0 < 2) n0 = 2;
  if (n0 % 2) ++n0;
  QuadResult<T> r;
  if (b <= a) {
    r.converged = true;
    return r;
  }
  int n = n0;
  double h = (b - a) / n;
  T ends = f(a) + f(b);
  T odd{}, even{};
  for (int i = 1; i < n; ++i) (i % 2 ? odd : even) += f(a + i * h);
  T prev = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
  r.value = prev;
  r.points = n;
  while (2 * n <= max_points) {
    even += odd;
    n *= 2;
    h = (b - a) / n;
    odd = T{};
    for (int i = 1; i < n; i += 2) odd += f(a + i * h);
    T cur = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    double scale = std::max(std::abs(cur), 1e-300);
    r.change = std::abs(cur - prev) / scale;
    r.value = cur;
    r.points = n;
    if (std::abs(cur - prev) <= rel_tol * scale || std::abs(cur - prev) < 1e-300) {
      r.converged = true;
      return r;
    }
    prev = cur;
  }
  return r;
}

} // namespace

QuadResult<double> simpson(const std::function<double(double)>& f, double a, double b, int n0, double rel_tol,
                           int max_points) {
  return run<double>(f, a, b, n0, rel_tol, max_points);
}

QuadResult<std::complex<double>> simpson_complex(const std::function<std::complex<double>(double)>& f, double a,
                                         double b, int n0, double rel_tol, int max_points) {
  return run<std::complex<double>>(f, a, b, n0, rel_tol, max_points);
}

double simpson_fixed(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

} // namespace latticeprop

#pragma once

#include "latticeprop/histogram.hpp"

#include <gmpxx.h>

#include <map>
#include <vector>

namespace latticeprop {

// words with letter multiplicities nu and no equal neighbours
mpz_class smirnov_frequency_count(const std::vector<int>& nu);

struct SeriesInfo {
  int degree = 0;       // last shell summed
  double tail = 0;      // majorant of the dropped shells
};

// sum over nu of f_nu prod sqrt(nu_k) x_k^nu_k / nu_k!
// tol is relative to max(1, value); info->tail is the absolute majorant
double cont_multinomial(const std::vector<double>& x, double tol = 1e-12, SeriesInfo* info = nullptr);

// two-letter closed series in (top, bottom) form
double cont_binomial(double x, double s);

class TaylorTable {
public:
  int letters() const { return l_; }
  int max_degree() const { return max_degree_; }
  // coefficient without the sqrt weights; zero outside the table
  double at(const std::vector<int>& nu) const;
  const std::map<std::vector<int>, double>& coeffs() const { return coeffs_; }
  double evaluate(const std::vector<double>& x) const;
  // C_l in |a_nu| <= C_l^{prod of nonzero nu_k} / nu!
  static double bound_constant(int l);
  // largest log(|a_nu| nu!) - P log C_l over the table (<= 0 when the bound holds)
  double bound_margin() const;

  friend TaylorTable taylor_table(int l, int max_degree);

private:
  int l_ = 3;
  int max_degree_ = 0;
  std::map<std::vector<int>, double> coeffs_;
};

TaylorTable taylor_table(int l, int max_degree);

// l^{S+l/2} / sqrt(2 pi S)^{l-1} * exp(-(l/2S) sum (x_i - S/l)^2)
double gaussian_asymptotic(const std::vector<double>& x);
// exp(-sum x_i ln(x_i/S)) with the same prefactor
double gaussian_entropy_form(const std::vector<double>& x);

struct DiscToCont {
  double discrete_ratio = 0;
  double continuous_ratio = 0;
  double deviation = 0;
};

DiscToCont disc_to_cont_check(const std::vector<double>& x, int m);

// trinomial {t; (I-|x|)/2, (I+|x|)/2, t-I}
double k1_cont_integrand(double t, double x, double I);
struct PeakReport {
  double node = 0;     // best grid node, [|x|, t] cut into n cells
  double refined = 0;  // golden-section maximum around it
  double cell = 0;
};
PeakReport k1_cont_peak(double t, double x, int n);
double k1_cont_peak_location(double t, double x);  // (4t - sqrt(4t^2 - 3x^2)) / 3

std::vector<Amplitude> k1_cont_profile(double t, const std::vector<double>& xs, double m, int quad_points = 64);

Amplitude k1_cont_highd(double t, const std::vector<double>& x, double m, int quad_points = 32);

double desitter_cont(const std::vector<double>& dx, double dt);

struct SplittingReport {
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
  std::vector<std::pair<int, double>> study;  // (intervals, residual)
};

SplittingReport splitting_check(const std::vector<double>& x, int quad_points = 64, int levels = 6);

} // namespace latticeprop

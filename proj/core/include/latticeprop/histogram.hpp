#pragma once

#include "latticeprop/metrics.hpp"

#include <gmpxx.h>

#include <complex>
#include <map>

namespace latticeprop {

using Amplitude = std::complex<double>;

// exact path counts keyed by proper time
class PhaseHistogram {
public:
  using Bins = std::map<Rational, mpz_class>;

  void add(const Rational& rho, const mpz_class& count);
  void merge(const PhaseHistogram& other);
  // bins shifted by delta and scaled by factor
  void merge_shifted(const PhaseHistogram& other, const Rational& delta, const mpz_class& factor);

  const Bins& bins() const { return bins_; }
  bool empty() const { return bins_.empty(); }
  mpz_class total() const;
  mpz_class at(const Rational& rho) const;

  // sum of count * exp(i m rho)
  Amplitude collapse(double m) const;

  bool operator==(const PhaseHistogram& o) const { return bins_ == o.bins_; }

private:
  Bins bins_;
};

} // namespace latticeprop

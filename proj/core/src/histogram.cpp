#include "latticeprop/histogram.hpp"

#include <cmath>

namespace latticeprop {

void PhaseHistogram::add(const Rational& rho, const mpz_class& count) {
  if (count == 0) return;
  auto& c = bins_[rho];
  c += count;
  if (c == 0) bins_.erase(rho);
}

void PhaseHistogram::merge(const PhaseHistogram& other) {
  for (const auto& [r, c] : other.bins_) add(r, c);
}

void PhaseHistogram::merge_shifted(const PhaseHistogram& other, const Rational& delta, const mpz_class& factor) {
  for (const auto& [r, c] : other.bins_) add(r + delta, c * factor);
}

mpz_class PhaseHistogram::total() const {
  mpz_class s = 0;
  for (const auto& [r, c] : bins_) s += c;
  return s;
}

mpz_class PhaseHistogram::at(const Rational& rho) const {
  auto it = bins_.find(rho);
  return it == bins_.end() ? mpz_class(0) : it->second;
}

Amplitude PhaseHistogram::collapse(double m) const {
  // bin order is fixed, so the result is reproducible
  long double re = 0, im = 0;
  for (const auto& [r, c] : bins_) {
    long double phase = static_cast<long double>(m) * static_cast<long double>(to_double(r));
    long double w = c.get_d();
    re += w * std::cos(phase);
    im += w * std::sin(phase);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

} // namespace latticeprop

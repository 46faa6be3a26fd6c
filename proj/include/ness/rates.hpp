#pragma once

#include "ness/model.hpp"

namespace ness {

// 1/(e^{omega/T} - 1); exactly 0 at T = 0. Throws NonPositiveFrequency for omega <= 0.
double bose_occupation(double omega, double temperature);

// Flat-coupling spectral weight J(omega). Negative frequencies follow the KMS
// relation J(-w) = e^{w/T} J(w) = gamma (1 + n(w)), so the weight is never negative.
// Throws ZeroFrequency at omega == 0.
double spectral_weight(double gamma, double omega, double temperature);

// Relaxation constants. "plus" entries use J(-omega) (emission), "minus"
// entries use J(+omega) (absorption):
//   X_i^{-/+} = 2cos^2(theta/2) J1(+-omega_i) + 2sin^2(theta/2) J2(+-omega_i)
//   Y_i^{-/+} = 2sin^2(theta/2) J1(+-omega_i) + 2cos^2(theta/2) J2(+-omega_i)
struct RateSet {
  double x1_plus = 0.0;
  double x1_minus = 0.0;
  double y2_plus = 0.0;
  double y2_minus = 0.0;
  double x1 = 0.0;
  double y2 = 0.0;

  double x2_plus = 0.0;
  double x2_minus = 0.0;
  double y1_plus = 0.0;
  double y1_minus = 0.0;

  double x2() const { return x2_plus + x2_minus; }
  double y1() const { return y1_plus + y1_minus; }
};

// Throws DegenerateTransition if either Bohr frequency vanishes.
void check_transitions(const EigenStructure& eig);

RateSet rate_set(const SystemParams& sys, const BathParams& baths);

}  // namespace ness

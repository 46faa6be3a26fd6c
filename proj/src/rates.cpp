#include "ness/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ness/error.hpp"

namespace ness {

double bose_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) {
    throw Error(ErrorCode::NonPositiveFrequency, "omega = " + std::to_string(omega));
  }
  if (temperature < 0.0) throw Error(ErrorCode::InvalidArgument, "negative temperature");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

double spectral_weight(double gamma, double omega, double temperature) {
  if (omega == 0.0) throw Error(ErrorCode::ZeroFrequency, "Bose occupation diverges at omega = 0");
  if (omega > 0.0) return gamma * bose_occupation(omega, temperature);
  return gamma * (1.0 + bose_occupation(-omega, temperature));
}

void check_transitions(const EigenStructure& eig) {
  const double scale = std::max({1.0, std::abs(eig.lambda[1]), eig.kappa});
  const double tol = 1e-12 * scale;
  if (std::abs(eig.omega1) <= tol || std::abs(eig.omega2) <= tol) {
    throw Error(ErrorCode::DegenerateTransition,
                "omega1 = " + std::to_string(eig.omega1) + ", omega2 = " + std::to_string(eig.omega2));
  }
}

RateSet rate_set(const SystemParams& sys, const BathParams& baths) {
  check(baths);
  const EigenStructure eig = eigenstructure(sys);
  check_transitions(eig);

  const double c2 = 2.0 * eig.cos_half() * eig.cos_half();
  const double s2 = 2.0 * eig.sin_half() * eig.sin_half();
  const auto j1 = [&](double w) { return spectral_weight(baths.gamma1, w, baths.t1); };
  const auto j2 = [&](double w) { return spectral_weight(baths.gamma2, w, baths.t2); };

  RateSet r;
  r.x1_plus = c2 * j1(-eig.omega1) + s2 * j2(-eig.omega1);
  r.x1_minus = c2 * j1(eig.omega1) + s2 * j2(eig.omega1);
  r.y2_plus = s2 * j1(-eig.omega2) + c2 * j2(-eig.omega2);
  r.y2_minus = s2 * j1(eig.omega2) + c2 * j2(eig.omega2);
  r.x1 = r.x1_plus + r.x1_minus;
  r.y2 = r.y2_plus + r.y2_minus;

  r.x2_plus = c2 * j1(-eig.omega2) + s2 * j2(-eig.omega2);
  r.x2_minus = c2 * j1(eig.omega2) + s2 * j2(eig.omega2);
  r.y1_plus = s2 * j1(-eig.omega1) + c2 * j2(-eig.omega1);
  r.y1_minus = s2 * j1(eig.omega1) + c2 * j2(eig.omega1);
  return r;
}

}  // namespace ness

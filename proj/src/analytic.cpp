#include "ness/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ness/error.hpp"

namespace ness {

RelaxationRates relaxation_rates(const RateSet& rates, ChannelPairing pairing) {
  if (pairing == ChannelPairing::Subscript) {
    return {rates.x1_plus, rates.x1_minus, rates.y2_plus, rates.y2_minus};
  }
  return {rates.x2_plus, rates.x2_minus, rates.y1_plus, rates.y1_minus};
}

PropagatorCoefficients propagator(const RelaxationRates& r, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "t must be >= 0");
  const double xp = r.x_plus, xm = r.x_minus, yp = r.y_plus, ym = r.y_minus;
  const double x = r.x(), y = r.y();
  if (!(x > 0.0) || !(y > 0.0)) throw Error(ErrorCode::InvalidArgument, "relaxation totals must be > 0");

  const double ex = std::exp(-t * x);
  const double ey = std::exp(-t * y);
  const double gx = -std::expm1(-t * x);  // 1 - e^{-tX}
  const double gy = -std::expm1(-t * y);

  const double x_down = xp + xm * ex;  // stays/ends in lower X level
  const double x_up = xm + xp * ex;
  const double y_down = yp + ym * ey;
  const double y_up = ym + yp * ey;

  PropagatorCoefficients p;
  p.normalization = x * y;
  Matrix4d& a = p.a;
  a(0, 0) = x_down * y_down;
  a(0, 1) = gx * gy * xp * yp;
  a(0, 2) = gx * xp * y_down;
  a(0, 3) = x_down * gy * yp;

  a(1, 0) = gx * gy * xm * ym;
  a(1, 1) = x_up * y_up;
  a(1, 2) = x_up * gy * ym;
  a(1, 3) = gx * xm * y_up;

  a(2, 0) = gx * xm * y_down;
  a(2, 1) = x_up * gy * yp;
  a(2, 2) = x_up * y_down;
  a(2, 3) = gx * gy * xm * yp;

  a(3, 0) = x_down * gy * ym;
  a(3, 1) = gx * xp * y_up;
  a(3, 2) = gx * gy * xp * ym;
  a(3, 3) = x_down * y_up;
  return p;
}

PropagatorCoefficients propagator(const RateSet& rates, double t, ChannelPairing pairing) {
  return propagator(relaxation_rates(rates, pairing), t);
}

AnalyticState evolve_state(const AnalyticState& initial, const RelaxationRates& rates,
                           const EigenStructure& eig, double t) {
  const Matrix4d transfer = propagator(rates, t).transfer();
  const Eigen::Vector4d p0(initial.populations[0], initial.populations[1], initial.populations[2],
                           initial.populations[3]);
  const Eigen::Vector4d pt = transfer * p0;

  AnalyticState out;
  for (int i = 0; i < 4; ++i) out.populations[static_cast<std::size_t>(i)] = pt(i);
  const complex phase(-0.5 * t * (rates.x() + rates.y()), -2.0 * t * eig.lambda[2]);
  out.coherence34 = std::exp(phase) * initial.coherence34;
  out.time = initial.time + t;
  return out;
}

namespace {

constexpr double kClassTolerance = 1e-12;

AnalyticState to_analytic(const DensityMatrix& rho_eig) {
  const Matrix4c& m = rho_eig.entries();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const bool allowed = (i == 2 && j == 3) || (i == 3 && j == 2);
      if (!allowed && std::abs(m(i, j)) > kClassTolerance) {
        throw Error(ErrorCode::UnsupportedInitialState,
                    "eigenbasis coherence (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") is outside the closed-form class");
      }
    }
  }
  AnalyticState s;
  for (int i = 0; i < 4; ++i) s.populations[static_cast<std::size_t>(i)] = m(i, i).real();
  s.coherence34 = m(2, 3);
  return s;
}

DensityMatrix to_matrix(const AnalyticState& s) {
  Matrix4c m = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i) m(i, i) = s.populations[static_cast<std::size_t>(i)];
  m(2, 3) = s.coherence34;
  m(3, 2) = std::conj(s.coherence34);
  return {m, Basis::Eigen};
}

}  // namespace

DensityMatrix evolve(const DensityMatrix& rho0, const SystemParams& sys, const BathParams& baths,
                     double t, ChannelPairing pairing) {
  const EigenStructure eig = eigenstructure(sys);
  const RelaxationRates r = relaxation_rates(rate_set(sys, baths), pairing);
  const AnalyticState s0 = to_analytic(change_basis(rho0, Basis::Eigen, eig));
  return change_basis(to_matrix(evolve_state(s0, r, eig, t)), Basis::Computational, eig);
}

std::array<double, 4> steady_state(const RelaxationRates& r) {
  const double norm = r.x() * r.y();
  return {r.x_plus * r.y_plus / norm, r.x_minus * r.y_minus / norm, r.x_minus * r.y_plus / norm,
          r.x_plus * r.y_minus / norm};
}

std::array<double, 4> steady_state(const RateSet& rates, ChannelPairing pairing) {
  return steady_state(relaxation_rates(rates, pairing));
}

DensityMatrix steady_state_matrix(const SystemParams& sys, const BathParams& baths,
                                  ChannelPairing pairing) {
  const EigenStructure eig = eigenstructure(sys);
  AnalyticState s;
  s.populations = steady_state(rate_set(sys, baths), pairing);
  return change_basis(to_matrix(s), Basis::Computational, eig);
}

double steady_concurrence(const SystemParams& sys, const BathParams& baths, ChannelPairing pairing) {
  const EigenStructure eig = eigenstructure(sys);
  const RelaxationRates r = relaxation_rates(rate_set(sys, baths), pairing);
  const double coherent = 0.5 * std::sin(eig.theta) *
                          std::abs(r.x_plus * r.y_minus - r.x_minus * r.y_plus);
  const double mixed = std::sqrt(r.x_minus * r.x_plus * r.y_minus * r.y_plus);
  return 2.0 / (r.x() * r.y()) * std::max(0.0, coherent - mixed);
}

namespace {

// (w sinh(a) - 1) / (2 cosh(b) cosh(c)) with a > 0, evaluated without overflow.
double thermal_concurrence(double weight, double a, double b, double c) {
  b = std::abs(b);
  c = std::abs(c);
  const double damp = (1.0 + std::exp(-2.0 * b)) * (1.0 + std::exp(-2.0 * c));
  const double coherent = weight * std::exp(a - b - c) * (-std::expm1(-2.0 * a)) / damp;
  const double mixed = 2.0 * std::exp(-b - c) / damp;
  return std::max(0.0, coherent - mixed);
}

void check_temperature(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, "equilibrium temperature must be finite and > 0");
  }
}

}  // namespace

double equilibrium_concurrence_symmetric(double temperature, const SystemParams& sys) {
  check_temperature(temperature);
  const EigenStructure eig = eigenstructure(sys);
  const double scale = std::max({1.0, std::abs(sys.eps1), std::abs(sys.eps2)});
  if (std::abs(sys.delta_eps()) > 1e-12 * scale) {
    throw Error(ErrorCode::NotSymmetric, "delta_eps = " + std::to_string(sys.delta_eps()));
  }
  const double tk = temperature / sys.coupling;
  const double w1 = eig.omega1 / sys.coupling;
  const double w2 = eig.omega2 / sys.coupling;
  return thermal_concurrence(1.0, 1.0 / tk, w1 / (2.0 * tk), w2 / (2.0 * tk));
}

double equilibrium_concurrence_nonsymmetric(double temperature, const SystemParams& sys) {
  check_temperature(temperature);
  const EigenStructure eig = eigenstructure(sys);
  const double tk = temperature / sys.coupling;
  const double w1 = eig.omega1 / sys.coupling;
  const double w2 = eig.omega2 / sys.coupling;
  return thermal_concurrence(std::sin(eig.theta), (w2 - w1) / (2.0 * tk), w1 / (2.0 * tk),
                             w2 / (2.0 * tk));
}

double critical_temperature(double delta_eps) {
  const double k = std::sqrt(0.25 * delta_eps * delta_eps + 1.0);
  return k / std::asinh(k);
}

double critical_temperature(const SystemParams& sys) {
  check(sys);
  return sys.coupling * critical_temperature(sys.delta_eps() / sys.coupling);
}

LabelingDiagnostics labeling_diagnostics(const RateSet& rates) {
  LabelingDiagnostics d;
  d.commutator = steady_state(rates, ChannelPairing::Commutator);
  d.subscript = steady_state(rates, ChannelPairing::Subscript);
  d.subscript_swapped = d.subscript;
  std::swap(d.subscript_swapped[2], d.subscript_swapped[3]);
  return d;
}

}  // namespace ness

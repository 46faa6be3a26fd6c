#pragma once

// Closed-form dynamics of the two-qubit chain. Populations relax as two
// independent two-level "bits": the X bit flips along the ladder pairs
// (1<->3, 4<->2) and the Y bit along (1<->4, 3<->2).

#include <array>

#include "ness/model.hpp"
#include "ness/rates.hpp"

namespace ness {

// Which RateSet constants drive the bits.
//   Commutator: each transition operator carries the Bohr frequency given by
//     [H_S, V] = omega V, which puts X at omega_2 and Y at omega_1 (X2, Y1).
//     This is the pairing the Lindblad generator reproduces.
//   Subscript: frequencies follow the operator subscript mu, giving (X1, Y2).
//     Kept for diagnostics; it matches the generator only when T1 = T2 and
//     gamma1 = gamma2, and then with |lambda_3> and |lambda_4> exchanged.
enum class ChannelPairing { Commutator, Subscript };

struct RelaxationRates {
  double x_plus = 0.0;   // X bit, downward
  double x_minus = 0.0;  // X bit, upward
  double y_plus = 0.0;
  double y_minus = 0.0;

  double x() const { return x_plus + x_minus; }
  double y() const { return y_plus + y_minus; }
};

RelaxationRates relaxation_rates(const RateSet& rates,
                                 ChannelPairing pairing = ChannelPairing::Commutator);

struct PropagatorCoefficients {
  Matrix4d a = Matrix4d::Zero();  // a_ij(t)
  double normalization = 1.0;     // X * Y

  // a / (X Y): column j is the population vector at t given |lambda_j> at 0.
  Matrix4d transfer() const { return a / normalization; }
};

PropagatorCoefficients propagator(const RelaxationRates& rates, double t);
PropagatorCoefficients propagator(const RateSet& rates, double t,
                                  ChannelPairing pairing = ChannelPairing::Commutator);

// Eigenbasis populations plus the only coherence the initial class carries.
struct AnalyticState {
  std::array<double, 4> populations{};
  complex coherence34{};
  double time = 0.0;
};

AnalyticState evolve_state(const AnalyticState& initial, const RelaxationRates& rates,
                           const EigenStructure& eig, double t);

// rho0 in either basis; in the eigenbasis it may only carry the (3,4)/(4,3)
// coherence, otherwise UnsupportedInitialState. Result is in the computational basis.
DensityMatrix evolve(const DensityMatrix& rho0, const SystemParams& sys, const BathParams& baths,
                     double t, ChannelPairing pairing = ChannelPairing::Commutator);

// Eigenbasis populations of the t -> infinity limit.
std::array<double, 4> steady_state(const RelaxationRates& rates);
std::array<double, 4> steady_state(const RateSet& rates,
                                   ChannelPairing pairing = ChannelPairing::Commutator);

DensityMatrix steady_state_matrix(const SystemParams& sys, const BathParams& baths,
                                  ChannelPairing pairing = ChannelPairing::Commutator);

// 2/(XY) max(0, sin(theta)/2 |X+ Y- - X- Y+| - sqrt(X- X+ Y- Y+))
double steady_concurrence(const SystemParams& sys, const BathParams& baths,
                          ChannelPairing pairing = ChannelPairing::Commutator);

// Equal-temperature concurrence formulas, clamped at zero. Arguments are in
// raw units and rescaled by K internally.
double equilibrium_concurrence_symmetric(double temperature, const SystemParams& sys);
double equilibrium_concurrence_nonsymmetric(double temperature, const SystemParams& sys);

// sqrt(de^2/4 + 1) / arcsinh(sqrt(de^2/4 + 1)), with de and the result in units of K.
double critical_temperature(double delta_eps);
// Same, in raw units for a given chain.
double critical_temperature(const SystemParams& sys);

// Steady-state populations under each pairing/labeling, for reporting which
// one agrees with the generator kernel.
struct LabelingDiagnostics {
  std::array<double, 4> commutator{};
  std::array<double, 4> subscript{};
  std::array<double, 4> subscript_swapped{};  // subscript with lambda_3 <-> lambda_4
};

LabelingDiagnostics labeling_diagnostics(const RateSet& rates);

}  // namespace ness

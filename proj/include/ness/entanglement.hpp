#pragma once

#include <array>

#include "ness/model.hpp"

namespace ness {

enum class ConcurrenceBranch { Separable, Entangled };

struct ConcurrenceResult {
  double value = 0.0;
  ConcurrenceBranch branch = ConcurrenceBranch::Separable;
  // Eigenvalues of rho * (sy x sy) rho^* (sy x sy), descending, clamped at 0.
  std::array<double, 4> spin_flip_eigenvalues{};
};

// Wootters concurrence. Requires a computational-basis state (WrongBasis otherwise).
ConcurrenceResult concurrence(const DensityMatrix& rho);

// Same quantity from the Hermitian matrix sqrt(rho) rho~ sqrt(rho).
ConcurrenceResult concurrence_hermitian(const DensityMatrix& rho);

// 2 max(0, |rho_23| - sqrt(rho_11 rho_44), |rho_14| - sqrt(rho_22 rho_33)).
// Throws NotXState if any entry off the diagonal/anti-diagonal exceeds 1e-12.
double concurrence_xstate(const DensityMatrix& rho);

}  // namespace ness

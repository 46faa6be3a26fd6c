#include "ness/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ness/error.hpp"

namespace ness {

namespace {

using complex_ld = std::complex<long double>;
using Matrix4ld = Eigen::Matrix<complex_ld, 4, 4>;

constexpr double kClampTolerance = 1e-10;

void require_computational(const DensityMatrix& rho) {
  if (rho.basis() != Basis::Computational) {
    throw Error(ErrorCode::WrongBasis, "concurrence needs the computational basis");
  }
}

Matrix4ld spin_flip(const Matrix4ld& rho) {
  // sy x sy is real and anti-diagonal with signs (-1, +1, +1, -1).
  Matrix4ld flip = Matrix4ld::Zero();
  flip(0, 3) = -1.0L;
  flip(1, 2) = 1.0L;
  flip(2, 1) = 1.0L;
  flip(3, 0) = -1.0L;
  return flip * rho.conjugate() * flip;
}

ConcurrenceResult from_eigenvalues(std::array<double, 4> ev) {
  std::sort(ev.begin(), ev.end(), std::greater<>());
  ConcurrenceResult r;
  r.spin_flip_eigenvalues = ev;
  const double c = std::sqrt(ev[0]) - std::sqrt(ev[1]) - std::sqrt(ev[2]) - std::sqrt(ev[3]);
  r.value = std::clamp(c, 0.0, 1.0);
  r.branch = r.value > 0.0 ? ConcurrenceBranch::Entangled : ConcurrenceBranch::Separable;
  return r;
}

}  // namespace

ConcurrenceResult concurrence(const DensityMatrix& rho) {
  require_computational(rho);
  const Matrix4ld m = rho.entries().cast<complex_ld>();
  const Matrix4ld product = m * spin_flip(m);
  Eigen::ComplexEigenSolver<Matrix4ld> es(product, false);

  // Eigenvalues are real and >= 0 in exact arithmetic; rounding leaves small
  // negative or imaginary parts.
  std::array<double, 4> ev{};
  for (int i = 0; i < 4; ++i) {
    const complex_ld z = es.eigenvalues()(i);
    const double re = static_cast<double>(z.real());
    const double im = static_cast<double>(z.imag());
    double v = re;
    if (std::abs(im) > kClampTolerance * std::max(1.0, std::abs(re))) v = std::abs(complex(re, im));
    ev[static_cast<std::size_t>(i)] = std::max(0.0, v);
  }
  return from_eigenvalues(ev);
}

ConcurrenceResult concurrence_hermitian(const DensityMatrix& rho) {
  require_computational(rho);
  const Matrix4ld m = rho.entries().cast<complex_ld>();
  const Matrix4ld herm = 0.5L * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4ld> root_es(herm);
  Eigen::Matrix<long double, 4, 1> w = root_es.eigenvalues().cwiseMax(0.0L).cwiseSqrt();
  const Matrix4ld root = root_es.eigenvectors() * w.cast<complex_ld>().asDiagonal() *
                         root_es.eigenvectors().adjoint();
  const Matrix4ld sandwich = root * spin_flip(herm) * root;
  Eigen::SelfAdjointEigenSolver<Matrix4ld> es(0.5L * (sandwich + sandwich.adjoint()),
                                             Eigen::EigenvaluesOnly);
  std::array<double, 4> ev{};
  for (int i = 0; i < 4; ++i) ev[static_cast<std::size_t>(i)] = std::max(0.0, static_cast<double>(es.eigenvalues()(i)));
  return from_eigenvalues(ev);
}

double concurrence_xstate(const DensityMatrix& rho) {
  require_computational(rho);
  const Matrix4c& m = rho.entries();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;
      if (std::abs(m(i, j)) > 1e-12) throw Error(ErrorCode::NotXState, "entry outside X pattern");
    }
  }
  const double p11 = std::max(0.0, m(0, 0).real());
  const double p22 = std::max(0.0, m(1, 1).real());
  const double p33 = std::max(0.0, m(2, 2).real());
  const double p44 = std::max(0.0, m(3, 3).real());
  const double a = std::abs(m(1, 2)) - std::sqrt(p11 * p44);
  const double b = std::abs(m(0, 3)) - std::sqrt(p22 * p33);
  return std::min(1.0, 2.0 * std::max({0.0, a, b}));
}

}  // namespace ness

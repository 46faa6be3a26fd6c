#include "ness/model.hpp"

#include <cmath>
#include <string>

#include "ness/error.hpp"

namespace ness {

void check(const SystemParams& sys) {
  if (!std::isfinite(sys.eps1) || !std::isfinite(sys.eps2) || !std::isfinite(sys.coupling)) {
    throw Error(ErrorCode::InvalidArgument, "system parameters must be finite");
  }
  if (!(sys.coupling > 0.0)) {
    throw Error(ErrorCode::NonPositiveCoupling, "K = " + std::to_string(sys.coupling));
  }
}

void check(const BathParams& baths) {
  if (!(baths.t1 >= 0.0) || !(baths.t2 >= 0.0) || !std::isfinite(baths.t1) ||
      !std::isfinite(baths.t2)) {
    throw Error(ErrorCode::InvalidArgument, "bath temperatures must be finite and >= 0");
  }
  if (!(baths.gamma1 > 0.0) || !(baths.gamma2 > 0.0) || !std::isfinite(baths.gamma1) ||
      !std::isfinite(baths.gamma2)) {
    throw Error(ErrorCode::InvalidArgument, "bath couplings must be finite and > 0");
  }
}

double EigenStructure::cos_half() const { return std::cos(0.5 * theta); }
double EigenStructure::sin_half() const { return std::sin(0.5 * theta); }

EigenStructure eigenstructure(const SystemParams& sys) {
  check(sys);
  EigenStructure e;
  const double de = sys.delta_eps();
  const double mean = sys.mean_energy();
  e.theta = std::atan2(2.0 * sys.coupling, de);
  e.kappa = std::hypot(sys.coupling, 0.5 * de);
  e.lambda = {-mean, mean, e.kappa, -e.kappa};
  e.omega1 = mean - e.kappa;
  e.omega2 = mean + e.kappa;

  const double c = e.cos_half();
  const double s = e.sin_half();
  Matrix4d u = Matrix4d::Zero();
  u(0, 0) = 1.0;  // |lambda_1> = |0,0>
  u(3, 1) = 1.0;  // |lambda_2> = |1,1>
  u(2, 2) = c;    // |lambda_3> = c|1,0> + s|0,1>
  u(1, 2) = s;
  u(2, 3) = -s;   // |lambda_4> = -s|1,0> + c|0,1>
  u(1, 3) = c;
  e.basis = u;
  return e;
}

namespace {

Matrix4c kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

Matrix4c hamiltonian(const SystemParams& sys) {
  Eigen::Matrix2cd sz = Eigen::Matrix2cd::Zero();
  sz(0, 0) = -1.0;
  sz(1, 1) = 1.0;
  Eigen::Matrix2cd raise = Eigen::Matrix2cd::Zero();
  raise(1, 0) = 1.0;
  const Eigen::Matrix2cd lower = raise.adjoint();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();

  return 0.5 * sys.eps1 * kron(sz, id) + 0.5 * sys.eps2 * kron(id, sz) +
         sys.coupling * (kron(raise, lower) + kron(lower, raise));
}

DensityMatrix change_basis(const DensityMatrix& rho, Basis target, const EigenStructure& eig) {
  if (rho.basis() == target) return rho;
  const Matrix4c u = eig.basis.cast<complex>();
  if (target == Basis::Eigen) return {u.transpose() * rho.entries() * u, Basis::Eigen};
  return {u * rho.entries() * u.transpose(), Basis::Computational};
}

StateDiagnostics validate_state(const DensityMatrix& rho) {
  StateDiagnostics d;
  const Matrix4c& m = rho.entries();
  d.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  d.trace_defect = std::abs(m.trace() - complex(1.0, 0.0));
  const Matrix4c herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  d.hermitian = d.hermiticity_defect <= kHermiticityTolerance;
  d.unit_trace = d.trace_defect <= kTraceTolerance;
  d.positive = d.min_eigenvalue >= kPositivityTolerance;
  return d;
}

DensityMatrix product_state(int spin1, int spin2) {
  if ((spin1 != 0 && spin1 != 1) || (spin2 != 0 && spin2 != 1)) {
    throw Error(ErrorCode::InvalidArgument, "spin labels are 0 or 1");
  }
  Matrix4c m = Matrix4c::Zero();
  const int idx = 2 * spin1 + spin2;
  m(idx, idx) = 1.0;
  return {m, Basis::Computational};
}

DensityMatrix singlet_state() {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(2) = 1.0 / std::sqrt(2.0);
  psi(1) = -1.0 / std::sqrt(2.0);
  return {psi * psi.adjoint(), Basis::Computational};
}

DensityMatrix initial_state(double p0, double p1, double p2, complex c12) {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = p0;
  m(1, 1) = p1;
  m(2, 2) = p2;
  m(3, 3) = 1.0 - p0 - p1 - p2;
  m(1, 2) = c12;
  m(2, 1) = std::conj(c12);
  return {m, Basis::Computational};
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.basis() != b.basis()) throw Error(ErrorCode::WrongBasis, "trace distance across bases");
  const Matrix4c d = a.entries() - b.entries();
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double max_entry_difference(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.basis() != b.basis()) throw Error(ErrorCode::WrongBasis, "comparison across bases");
  return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

}  // namespace ness

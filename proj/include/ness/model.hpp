#pragma once

// Two exchange-coupled qubits:
//   H_S = eps1/2 sz1 + eps2/2 sz2 + K (s+1 s-2 + s-1 s+2)
//
// Computational basis order is |0,0>, |0,1>, |1,0>, |1,1> with spin 1 as the
// left tensor factor and |1> the excited state. Eigenbasis order is
// lambda_1..lambda_4 = -(eps1+eps2)/2, +(eps1+eps2)/2, +kappa, -kappa.

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace ness {

using complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<complex, 4, 4>;
using Matrix4d = Eigen::Matrix4d;

struct SystemParams {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double coupling = 1.0;  // K

  double delta_eps() const { return eps1 - eps2; }
  double mean_energy() const { return 0.5 * (eps1 + eps2); }
};

struct BathParams {
  double t1 = 0.0;
  double t2 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

// Throws NonPositiveCoupling / InvalidArgument.
void check(const SystemParams& sys);
void check(const BathParams& baths);

struct EigenStructure {
  double theta = 0.0;  // mixing angle in (0, pi)
  double kappa = 0.0;
  std::array<double, 4> lambda{};
  double omega1 = 0.0;  // lambda_2 - lambda_3
  double omega2 = 0.0;  // lambda_2 + lambda_3
  // Columns are |lambda_i> in computational coordinates; rho_eig = U^T rho U.
  Matrix4d basis = Matrix4d::Identity();

  double cos_half() const;
  double sin_half() const;
};

EigenStructure eigenstructure(const SystemParams& sys);

// H_S assembled from Pauli operators in the computational basis.
Matrix4c hamiltonian(const SystemParams& sys);

enum class Basis { Computational, Eigen };

class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(const Matrix4c& entries, Basis basis) : entries_(entries), basis_(basis) {}

  const Matrix4c& entries() const { return entries_; }
  Basis basis() const { return basis_; }
  complex operator()(int i, int j) const { return entries_(i, j); }

 private:
  Matrix4c entries_ = Matrix4c::Zero();
  Basis basis_ = Basis::Computational;
};

DensityMatrix change_basis(const DensityMatrix& rho, Basis target, const EigenStructure& eig);

struct StateDiagnostics {
  double hermiticity_defect = 0.0;  // max |rho - rho^dagger|
  double trace_defect = 0.0;        // |tr rho - 1|
  double min_eigenvalue = 0.0;
  bool hermitian = true;
  bool unit_trace = true;
  bool positive = true;

  bool valid() const { return hermitian && unit_trace && positive; }
};

inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = -1e-10;

StateDiagnostics validate_state(const DensityMatrix& rho);

// Computational-basis states.
DensityMatrix product_state(int spin1, int spin2);
DensityMatrix singlet_state();  // (|1,0> - |0,1>)/sqrt2
// p0|00><00| + p1|01><01| + p2|10><10| + (1-p0-p1-p2)|11><11| + c12|01><10| + h.c.
DensityMatrix initial_state(double p0, double p1, double p2, complex c12);

// Trace distance 1/2 ||a - b||_1; both states must share a basis.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double max_entry_difference(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace ness

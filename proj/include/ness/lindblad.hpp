#pragma once

// Numerical Lindblad oracle. Everything here is built from the transition
// operators themselves and never uses the closed-form relaxation constants.
//
// Vectorization is column-stacking: vec(rho)[i + 4 j] = rho(i, j), so
// vec(A rho B) = (B^T kron A) vec(rho).

#include <complex>
#include <vector>

#include "ness/kernels.hpp"
#include "ness/model.hpp"

namespace ness {

using Matrix16c = Eigen::Matrix<complex, 16, 16>;
using Vector16c = Eigen::Matrix<complex, 16, 1>;

Vector16c vectorize(const Matrix4c& m);
Matrix4c unvectorize(const Vector16c& v);
Matrix16c left_multiplication(const Matrix4c& a);   // rho -> a rho
Matrix16c right_multiplication(const Matrix4c& b);  // rho -> rho b

// Superoperator of 2 V rho V^dag - {V^dag V, rho}.
Matrix16c dissipator(const Matrix4c& v);

struct Channel {
  int bath = 1;  // 1 or 2
  int index = 1;  // mu
  Matrix4c op = Matrix4c::Zero();  // eigenbasis
  double bohr_frequency = 0.0;    // energy released by op: [H_S, op] = -omega op
  double downward_rate = 0.0;     // J(-omega), multiplies D[op]
  double upward_rate = 0.0;       // J(+omega), multiplies D[op^dag]
};

// The four transition operators V_{j,mu} in the eigenbasis.
Matrix4c transition_operator(const EigenStructure& eig, int bath, int index);

// omega with [H, op] = -omega op; throws InvalidArgument if op is not an eigen-operator.
double commutator_frequency(const EigenStructure& eig, const Matrix4c& op);

struct Liouvillian {
  Matrix16c matrix = Matrix16c::Zero();  // acts on vec(rho) in the eigenbasis
  std::vector<Channel> channels;
  EigenStructure eig;
  kernels::PackedGenerator packed;
};

// Accepts gamma >= 0 so the closed-system limit can be built.
// Throws DegenerateSpectrum if omega1 = +-omega2, DegenerateTransition if either vanishes.
Liouvillian build_generator(const SystemParams& sys, const BathParams& baths);

// Diagonal-to-diagonal block: d/dt p = B p.
Matrix4d population_block(const Liouvillian& gen);

struct IntegratorOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  long max_steps = 10'000'000;
};

struct TrajectoryPoint {
  double t = 0.0;
  DensityMatrix rho;
};

// Dormand-Prince 5(4) with step-size control. Steps are clipped to land on
// every sample time. States are returned in the basis of rho0.
std::vector<TrajectoryPoint> integrate(const Liouvillian& gen, const DensityMatrix& rho0,
                                       const std::vector<double>& sample_times,
                                       const IntegratorOptions& opts = {});

// Fixed-stride output: `samples` evenly spaced points on [0, t_end].
std::vector<TrajectoryPoint> integrate(const Liouvillian& gen, const DensityMatrix& rho0,
                                       double t_end, int samples,
                                       const IntegratorOptions& opts = {});

// Unit-trace Hermitian kernel element of the generator (eigenbasis).
// Throws NonUniqueKernel if the kernel is more than one-dimensional.
DensityMatrix steady_state_numeric(const Liouvillian& gen);

// ||L vec(rho)||_inf, rho converted to the eigenbasis first.
double generator_residual(const Liouvillian& gen, const DensityMatrix& rho);

// e^{-H_S/T} / Z in the eigenbasis (diagonal).
DensityMatrix gibbs_state(const EigenStructure& eig, double temperature);

}  // namespace ness

#include "ness/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ness/error.hpp"
#include "ness/rates.hpp"

namespace ness {

Vector16c vectorize(const Matrix4c& m) {
  Vector16c v;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) v(i + 4 * j) = m(i, j);
  return v;
}

Matrix4c unvectorize(const Vector16c& v) {
  Matrix4c m;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) m(i, j) = v(i + 4 * j);
  return m;
}

namespace {

Matrix16c kron(const Matrix4c& a, const Matrix4c& b) {
  Matrix16c out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

Matrix4c ket_bra(int a, int b) {
  Matrix4c m = Matrix4c::Zero();
  m(a, b) = 1.0;
  return m;
}

}  // namespace

Matrix16c left_multiplication(const Matrix4c& a) { return kron(Matrix4c::Identity(), a); }
Matrix16c right_multiplication(const Matrix4c& b) { return kron(b.transpose(), Matrix4c::Identity()); }

Matrix16c dissipator(const Matrix4c& v) {
  const Matrix4c vdv = v.adjoint() * v;
  return 2.0 * kron(v.conjugate(), v) - left_multiplication(vdv) - right_multiplication(vdv);
}

Matrix4c transition_operator(const EigenStructure& eig, int bath, int index) {
  const double c = eig.cos_half();
  const double s = eig.sin_half();
  // Eigenbasis indices 0..3 hold lambda_1..lambda_4.
  if (bath == 1 && index == 1) return c * (ket_bra(0, 2) + ket_bra(3, 1));
  if (bath == 1 && index == 2) return s * (ket_bra(2, 1) - ket_bra(0, 3));
  if (bath == 2 && index == 1) return s * (ket_bra(0, 2) - ket_bra(3, 1));
  if (bath == 2 && index == 2) return c * (ket_bra(2, 1) + ket_bra(0, 3));
  throw Error(ErrorCode::InvalidArgument, "transition operator indices are 1 or 2");
}

double commutator_frequency(const EigenStructure& eig, const Matrix4c& op) {
  Matrix4c h = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i) h(i, i) = eig.lambda[static_cast<std::size_t>(i)];
  const Matrix4c comm = h * op - op * h;
  const double norm2 = op.squaredNorm();
  if (norm2 == 0.0) throw Error(ErrorCode::InvalidArgument, "zero transition operator");
  const complex w = (op.adjoint() * comm).trace() / norm2;
  const double scale = std::max(1.0, std::abs(w));
  if ((comm - w * op).norm() > 1e-12 * scale * std::sqrt(norm2) || std::abs(w.imag()) > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidArgument, "operator is not an eigen-operator of [H_S, .]");
  }
  return -w.real();
}

Liouvillian build_generator(const SystemParams& sys, const BathParams& baths) {
  if (!(baths.t1 >= 0.0) || !(baths.t2 >= 0.0) || !(baths.gamma1 >= 0.0) || !(baths.gamma2 >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "temperatures and couplings must be >= 0");
  }
  Liouvillian gen;
  gen.eig = eigenstructure(sys);
  check_transitions(gen.eig);
  const double tol = 1e-12 * std::max({1.0, std::abs(gen.eig.omega1), std::abs(gen.eig.omega2)});
  if (std::abs(std::abs(gen.eig.omega1) - std::abs(gen.eig.omega2)) <= tol) {
    throw Error(ErrorCode::DegenerateSpectrum, "|omega1| = |omega2|; channels are not separable");
  }

  Matrix4c h = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i) h(i, i) = gen.eig.lambda[static_cast<std::size_t>(i)];
  gen.matrix = complex(0.0, -1.0) * (left_multiplication(h) - right_multiplication(h));

  for (int bath = 1; bath <= 2; ++bath) {
    const double gamma = bath == 1 ? baths.gamma1 : baths.gamma2;
    const double temp = bath == 1 ? baths.t1 : baths.t2;
    for (int index = 1; index <= 2; ++index) {
      Channel ch;
      ch.bath = bath;
      ch.index = index;
      ch.op = transition_operator(gen.eig, bath, index);
      ch.bohr_frequency = commutator_frequency(gen.eig, ch.op);
      ch.downward_rate = spectral_weight(gamma, -ch.bohr_frequency, temp);
      ch.upward_rate = spectral_weight(gamma, ch.bohr_frequency, temp);
      gen.matrix += ch.downward_rate * dissipator(ch.op) + ch.upward_rate * dissipator(ch.op.adjoint());
      gen.channels.push_back(ch);
    }
  }

  for (int j = 0; j < 16; ++j) {
    for (int i = 0; i < 16; ++i) {
      gen.packed.re[static_cast<std::size_t>(j * 16 + i)] = gen.matrix(i, j).real();
      gen.packed.im[static_cast<std::size_t>(j * 16 + i)] = gen.matrix(i, j).imag();
    }
  }
  return gen;
}

Matrix4d population_block(const Liouvillian& gen) {
  Matrix4d b;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) b(a, c) = gen.matrix(5 * a, 5 * c).real();
  return b;
}

namespace {

kernels::StateVector pack(const Vector16c& v) {
  kernels::StateVector s;
  for (int i = 0; i < 16; ++i) {
    s.re[static_cast<std::size_t>(i)] = v(i).real();
    s.im[static_cast<std::size_t>(i)] = v(i).imag();
  }
  return s;
}

Vector16c unpack(const kernels::StateVector& s) {
  Vector16c v;
  for (int i = 0; i < 16; ++i) v(i) = complex(s.re[static_cast<std::size_t>(i)], s.im[static_cast<std::size_t>(i)]);
  return v;
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class DormandPrince {
 public:
  DormandPrince(const kernels::PackedGenerator& gen, const IntegratorOptions& opts)
      : gen_(gen), opts_(opts) {}

  // Advances y from t to t_target; h carries the step proposal between calls.
  void advance(kernels::StateVector& y, double& t, double t_target, double& h, long& steps) {
    kernels::apply(gen_, y, k1_);
    while (t < t_target) {
      if (++steps > opts_.max_steps) {
        throw Error(ErrorCode::StepSizeUnderflow, "step budget exhausted at t = " + std::to_string(t));
      }
      const bool last = t + h >= t_target;
      const double step = last ? t_target - t : h;
      if (step <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
        if (last) {
          t = t_target;
          break;
        }
        throw Error(ErrorCode::StepSizeUnderflow, "step size underflow at t = " + std::to_string(t));
      }

      stage(y, step, {a21}, {&k1_}, k2_);
      stage(y, step, {a31, a32}, {&k1_, &k2_}, k3_);
      stage(y, step, {a41, a42, a43}, {&k1_, &k2_, &k3_}, k4_);
      stage(y, step, {a51, a52, a53, a54}, {&k1_, &k2_, &k3_, &k4_}, k5_);
      stage(y, step, {a61, a62, a63, a64, a65}, {&k1_, &k2_, &k3_, &k4_, &k5_}, k6_);

      y_new_ = y;
      kernels::axpy(step * b1, k1_, y_new_);
      kernels::axpy(step * b3, k3_, y_new_);
      kernels::axpy(step * b4, k4_, y_new_);
      kernels::axpy(step * b5, k5_, y_new_);
      kernels::axpy(step * b6, k6_, y_new_);
      kernels::apply(gen_, y_new_, k7_);

      err_ = kernels::StateVector{};
      kernels::axpy(step * e1, k1_, err_);
      kernels::axpy(step * e3, k3_, err_);
      kernels::axpy(step * e4, k4_, err_);
      kernels::axpy(step * e5, k5_, err_);
      kernels::axpy(step * e6, k6_, err_);
      kernels::axpy(step * e7, k7_, err_);

      const double err = error_norm(y, y_new_, err_);
      const double factor =
          err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (err <= 1.0) {
        y = y_new_;
        k1_ = k7_;
        t = last ? t_target : t + step;
        // A clipped final step says nothing about the natural step size.
        if (!last || step >= h) h = step * factor;
      } else {
        h = step * std::max(0.2, factor);
      }
    }
  }

 private:
  void stage(const kernels::StateVector& y, double h, std::initializer_list<double> coeffs,
             std::initializer_list<const kernels::StateVector*> ks, kernels::StateVector& out) {
    tmp_ = y;
    auto k = ks.begin();
    for (double a : coeffs) kernels::axpy(h * a, **k++, tmp_);
    kernels::apply(gen_, tmp_, out);
  }

  double error_norm(const kernels::StateVector& y0, const kernels::StateVector& y1,
                    const kernels::StateVector& err) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
      const double scale =
          opts_.atol + opts_.rtol * std::max(std::hypot(y0.re[i], y0.im[i]), std::hypot(y1.re[i], y1.im[i]));
      const double e = std::hypot(err.re[i], err.im[i]) / scale;
      acc += e * e;
    }
    return std::sqrt(acc / 16.0);
  }

  const kernels::PackedGenerator& gen_;
  IntegratorOptions opts_;
  kernels::StateVector k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, y_new_, err_;
};

}  // namespace

std::vector<TrajectoryPoint> integrate(const Liouvillian& gen, const DensityMatrix& rho0,
                                       const std::vector<double>& sample_times,
                                       const IntegratorOptions& opts) {
  if (!(opts.rtol > 0.0) || !(opts.atol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rtol and atol must be > 0");
  }
  if (!validate_state(rho0).valid()) throw Error(ErrorCode::InvalidState, "initial state is not a valid density matrix");
  if (!std::is_sorted(sample_times.begin(), sample_times.end()) ||
      (!sample_times.empty() && sample_times.front() < 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sample times must be non-negative and sorted");
  }

  const Basis out_basis = rho0.basis();
  kernels::StateVector y = pack(vectorize(change_basis(rho0, Basis::Eigen, gen.eig).entries()));
  const double scale = std::max(1.0, gen.matrix.cwiseAbs().maxCoeff());
  double h = 0.01 / scale;
  double t = 0.0;
  long steps = 0;
  DormandPrince stepper(gen.packed, opts);

  std::vector<TrajectoryPoint> out;
  out.reserve(sample_times.size());
  for (double target : sample_times) {
    stepper.advance(y, t, target, h, steps);
    DensityMatrix rho = change_basis(DensityMatrix(unvectorize(unpack(y)), Basis::Eigen), out_basis, gen.eig);
    const StateDiagnostics d = validate_state(rho);
    if (!d.valid()) {
      throw Error(ErrorCode::InvalidState,
                  "state left the physical set at t = " + std::to_string(target) +
                      " (min eigenvalue " + std::to_string(d.min_eigenvalue) + ")");
    }
    out.push_back({target, std::move(rho)});
  }
  return out;
}

std::vector<TrajectoryPoint> integrate(const Liouvillian& gen, const DensityMatrix& rho0, double t_end,
                                       int samples, const IntegratorOptions& opts) {
  if (!(t_end > 0.0) || samples < 2) {
    throw Error(ErrorCode::InvalidArgument, "need t_end > 0 and at least two samples");
  }
  std::vector<double> times(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) times[static_cast<std::size_t>(k)] = t_end * k / (samples - 1);
  times.back() = t_end;
  return integrate(gen, rho0, times, opts);
}

namespace {

using complex_ld = std::complex<long double>;
using MatrixXld = Eigen::Matrix<complex_ld, Eigen::Dynamic, Eigen::Dynamic>;

// Groups of vec indices coupled by nonzero generator entries.
std::vector<std::vector<int>> coupled_blocks(const Matrix16c& m) {
  std::array<int, 16> parent{};
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    return i;
  };
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (m(i, j) != complex(0.0, 0.0)) parent[static_cast<std::size_t>(find(i))] = find(j);

  std::vector<std::vector<int>> blocks;
  std::array<int, 16> slot{};
  slot.fill(-1);
  for (int i = 0; i < 16; ++i) {
    const int root = find(i);
    if (slot[static_cast<std::size_t>(root)] < 0) {
      slot[static_cast<std::size_t>(root)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].push_back(i);
  }
  return blocks;
}

}  // namespace

DensityMatrix steady_state_numeric(const Liouvillian& gen) {
  const double norm = std::max(1.0, gen.matrix.cwiseAbs().maxCoeff());
  const double zero_tol = 1e-9 * norm;

  struct Candidate {
    long double magnitude;
    std::vector<int> indices;
    Eigen::Matrix<complex_ld, Eigen::Dynamic, 1> vector;
  };
  std::vector<Candidate> near_zero;
  Candidate nearest{std::numeric_limits<long double>::infinity(), {}, {}};

  for (const auto& block : coupled_blocks(gen.matrix)) {
    const auto n = static_cast<Eigen::Index>(block.size());
    MatrixXld sub(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        sub(i, j) = complex_ld(gen.matrix(block[static_cast<std::size_t>(i)], block[static_cast<std::size_t>(j)]));
    Eigen::ComplexEigenSolver<MatrixXld> es(sub);
    for (Eigen::Index k = 0; k < n; ++k) {
      const long double mag = std::abs(es.eigenvalues()(k));
      Candidate cand{mag, block, es.eigenvectors().col(k)};
      if (mag <= zero_tol) near_zero.push_back(cand);
      if (mag < nearest.magnitude) nearest = std::move(cand);
    }
  }
  if (near_zero.size() > 1) {
    throw Error(ErrorCode::NonUniqueKernel,
                "generator kernel has dimension " + std::to_string(near_zero.size()));
  }

  Eigen::Matrix<complex_ld, 16, 1> v = Eigen::Matrix<complex_ld, 16, 1>::Zero();
  for (std::size_t i = 0; i < nearest.indices.size(); ++i) v(nearest.indices[i]) = nearest.vector(static_cast<Eigen::Index>(i));
  Eigen::Matrix<complex_ld, 4, 4> rho;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) rho(i, j) = v(i + 4 * j);
  const complex_ld tr = rho.trace();
  if (std::abs(tr) == 0.0L) throw Error(ErrorCode::NonUniqueKernel, "kernel element is traceless");
  rho /= tr;
  rho = (0.5L * (rho + rho.adjoint())).eval();
  rho /= rho.trace().real();

  Matrix4c out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out(i, j) = complex(static_cast<double>(rho(i, j).real()), static_cast<double>(rho(i, j).imag()));
  return {out, Basis::Eigen};
}

double generator_residual(const Liouvillian& gen, const DensityMatrix& rho) {
  const Vector16c v = vectorize(change_basis(rho, Basis::Eigen, gen.eig).entries());
  return (gen.matrix * v).cwiseAbs().maxCoeff();
}

DensityMatrix gibbs_state(const EigenStructure& eig, double temperature) {
  if (temperature < 0.0) throw Error(ErrorCode::InvalidArgument, "negative temperature");
  const double ground = *std::min_element(eig.lambda.begin(), eig.lambda.end());
  Matrix4c m = Matrix4c::Zero();
  double z = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double gap = eig.lambda[static_cast<std::size_t>(i)] - ground;
    const double w = temperature == 0.0 ? (gap == 0.0 ? 1.0 : 0.0) : std::exp(-gap / temperature);
    m(i, i) = w;
    z += w;
  }
  return {m / z, Basis::Eigen};
}

}  // namespace ness

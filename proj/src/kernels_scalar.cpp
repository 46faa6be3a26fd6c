#include "ness/kernels.hpp"

namespace ness::kernels::scalar {

void apply(const PackedGenerator& gen, const StateVector& x, StateVector& y) {
  StateVector acc;
  for (int j = 0; j < kDim; ++j) {
    const double xr = x.re[j];
    const double xi = x.im[j];
    const double* lr = &gen.re[static_cast<std::size_t>(j * kDim)];
    const double* li = &gen.im[static_cast<std::size_t>(j * kDim)];
    for (int i = 0; i < kDim; ++i) {
      acc.re[i] += lr[i] * xr - li[i] * xi;
      acc.im[i] += lr[i] * xi + li[i] * xr;
    }
  }
  y = acc;
}

void axpy(double a, const StateVector& x, StateVector& y) {
  for (int i = 0; i < kDim; ++i) {
    y.re[i] += a * x.re[i];
    y.im[i] += a * x.im[i];
  }
}

}  // namespace ness::kernels::scalar

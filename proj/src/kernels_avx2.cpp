// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "ness/kernels.hpp"

namespace ness::kernels::avx2 {

void apply(const PackedGenerator& gen, const StateVector& x, StateVector& y) {
  __m256d acc_re[4];
  __m256d acc_im[4];
  for (int k = 0; k < 4; ++k) {
    acc_re[k] = _mm256_setzero_pd();
    acc_im[k] = _mm256_setzero_pd();
  }
  for (int j = 0; j < kDim; ++j) {
    const __m256d xr = _mm256_set1_pd(x.re[j]);
    const __m256d xi = _mm256_set1_pd(x.im[j]);
    const double* lr = gen.re.data() + j * kDim;
    const double* li = gen.im.data() + j * kDim;
    for (int k = 0; k < 4; ++k) {
      const __m256d r = _mm256_load_pd(lr + 4 * k);
      const __m256d i = _mm256_load_pd(li + 4 * k);
      acc_re[k] = _mm256_fmadd_pd(r, xr, acc_re[k]);
      acc_re[k] = _mm256_fnmadd_pd(i, xi, acc_re[k]);
      acc_im[k] = _mm256_fmadd_pd(r, xi, acc_im[k]);
      acc_im[k] = _mm256_fmadd_pd(i, xr, acc_im[k]);
    }
  }
  for (int k = 0; k < 4; ++k) {
    _mm256_store_pd(y.re.data() + 4 * k, acc_re[k]);
    _mm256_store_pd(y.im.data() + 4 * k, acc_im[k]);
  }
}

void axpy(double a, const StateVector& x, StateVector& y) {
  const __m256d va = _mm256_set1_pd(a);
  for (int k = 0; k < kDim; k += 4) {
    _mm256_store_pd(y.re.data() + k,
                    _mm256_fmadd_pd(va, _mm256_load_pd(x.re.data() + k), _mm256_load_pd(y.re.data() + k)));
    _mm256_store_pd(y.im.data() + k,
                    _mm256_fmadd_pd(va, _mm256_load_pd(x.im.data() + k), _mm256_load_pd(y.im.data() + k)));
  }
}

}  // namespace ness::kernels::avx2

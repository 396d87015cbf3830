#include <immintrin.h>

#include "kernels_internal.hpp"

namespace cuelab::simd {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double projection_energy_avx2(const double* u_re, const double* u_im, std::size_t m,
                              std::size_t n, std::size_t stride, const double* v_re,
                              const double* v_im, double* coef_re, double* coef_im) {
  const std::size_t body = n & ~std::size_t{3};
  double energy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* ur = u_re + i * stride;
    const double* ui = u_im + i * stride;
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t k = 0; k < body; k += 4) {
      const __m256d a = _mm256_loadu_pd(ur + k);
      const __m256d b = _mm256_loadu_pd(ui + k);
      const __m256d x = _mm256_loadu_pd(v_re + k);
      const __m256d y = _mm256_loadu_pd(v_im + k);
      acc_re = _mm256_fmadd_pd(a, x, acc_re);
      acc_re = _mm256_fmadd_pd(b, y, acc_re);
      acc_im = _mm256_fmadd_pd(a, y, acc_im);
      acc_im = _mm256_fnmadd_pd(b, x, acc_im);
    }
    double re = hsum(acc_re);
    double im = hsum(acc_im);
    for (std::size_t k = body; k < n; ++k) {
      re += ur[k] * v_re[k] + ui[k] * v_im[k];
      im += ur[k] * v_im[k] - ui[k] * v_re[k];
    }
    coef_re[i] = re;
    coef_im[i] = im;
    energy += re * re + im * im;
  }
  return energy;
}

void complex_axpy_avx2(double c_re, double c_im, const double* u_re, const double* u_im,
                       double* r_re, double* r_im, std::size_t n) {
  const std::size_t body = n & ~std::size_t{3};
  const __m256d cr = _mm256_set1_pd(c_re);
  const __m256d ci = _mm256_set1_pd(c_im);
  for (std::size_t k = 0; k < body; k += 4) {
    const __m256d a = _mm256_loadu_pd(u_re + k);
    const __m256d b = _mm256_loadu_pd(u_im + k);
    __m256d rr = _mm256_loadu_pd(r_re + k);
    __m256d ri = _mm256_loadu_pd(r_im + k);
    // r -= c*u, c*u = (cr a - ci b) + i (cr b + ci a)
    rr = _mm256_fnmadd_pd(cr, a, rr);
    rr = _mm256_fmadd_pd(ci, b, rr);
    ri = _mm256_fnmadd_pd(cr, b, ri);
    ri = _mm256_fnmadd_pd(ci, a, ri);
    _mm256_storeu_pd(r_re + k, rr);
    _mm256_storeu_pd(r_im + k, ri);
  }
  for (std::size_t k = body; k < n; ++k) {
    r_re[k] -= c_re * u_re[k] - c_im * u_im[k];
    r_im[k] -= c_re * u_im[k] + c_im * u_re[k];
  }
}

void plane_rotation_avx2(double* x, double* y, std::size_t n, double c, double s) {
  const std::size_t body = n & ~std::size_t{3};
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  for (std::size_t k = 0; k < body; k += 4) {
    const __m256d xk = _mm256_loadu_pd(x + k);
    const __m256d yk = _mm256_loadu_pd(y + k);
    _mm256_storeu_pd(x + k, _mm256_fmsub_pd(vc, xk, _mm256_mul_pd(vs, yk)));
    _mm256_storeu_pd(y + k, _mm256_fmadd_pd(vs, xk, _mm256_mul_pd(vc, yk)));
  }
  for (std::size_t k = body; k < n; ++k) {
    const double xk = x[k];
    const double yk = y[k];
    x[k] = c * xk - s * yk;
    y[k] = s * xk + c * yk;
  }
}

void bernoulli_fold_avx2(double* pmf, std::size_t len, double p) {
  const double q = 1.0 - p;
  const __m256d vp = _mm256_set1_pd(p);
  const __m256d vq = _mm256_set1_pd(q);
  // walk downward in blocks [k-3, k]; each block reads only slots that are
  // still unmodified (k-4 is written by the next block)
  std::size_t k = len;
  while (k >= 4) {
    const __m256d cur = _mm256_loadu_pd(pmf + k - 3);
    const __m256d prev = _mm256_loadu_pd(pmf + k - 4);
    _mm256_storeu_pd(pmf + k - 3, _mm256_fmadd_pd(vq, cur, _mm256_mul_pd(vp, prev)));
    k -= 4;
  }
  for (; k > 0; --k) {
    pmf[k] = q * pmf[k] + p * pmf[k - 1];
  }
  pmf[0] *= q;
}

}  // namespace

const KernelSet& avx2_kernels_unchecked() {
  static const KernelSet set{"avx2", projection_energy_avx2, complex_axpy_avx2,
                             plane_rotation_avx2, bernoulli_fold_avx2};
  return set;
}

}  // namespace cuelab::simd

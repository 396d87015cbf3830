#include "kernels_internal.hpp"

namespace cuelab::simd {

namespace {

double projection_energy_scalar(const double* u_re, const double* u_im, std::size_t m,
                                std::size_t n, std::size_t stride, const double* v_re,
                                const double* v_im, double* coef_re, double* coef_im) {
  double energy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* ur = u_re + i * stride;
    const double* ui = u_im + i * stride;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      re += ur[k] * v_re[k] + ui[k] * v_im[k];
      im += ur[k] * v_im[k] - ui[k] * v_re[k];
    }
    coef_re[i] = re;
    coef_im[i] = im;
    energy += re * re + im * im;
  }
  return energy;
}

void complex_axpy_scalar(double c_re, double c_im, const double* u_re, const double* u_im,
                         double* r_re, double* r_im, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    r_re[k] -= c_re * u_re[k] - c_im * u_im[k];
    r_im[k] -= c_re * u_im[k] + c_im * u_re[k];
  }
}

void plane_rotation_scalar(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t k = 0; k < n; ++k) {
    const double xk = x[k];
    const double yk = y[k];
    x[k] = c * xk - s * yk;
    y[k] = s * xk + c * yk;
  }
}

void bernoulli_fold_scalar(double* pmf, std::size_t len, double p) {
  const double q = 1.0 - p;
  for (std::size_t k = len; k > 0; --k) {
    pmf[k] = q * pmf[k] + p * pmf[k - 1];
  }
  pmf[0] *= q;
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{"scalar", projection_energy_scalar, complex_axpy_scalar,
                             plane_rotation_scalar, bernoulli_fold_scalar};
  return set;
}

}  // namespace cuelab::simd

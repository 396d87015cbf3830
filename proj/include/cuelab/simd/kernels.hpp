#pragma once

#include <cstddef>
#include <string_view>

namespace cuelab::simd {

/// Inner loops shared by the sampler, the Jacobi solver and the
/// Poisson-binomial fold. Every variant must agree with the scalar
/// reference to rounding (FMA contraction is the only permitted difference).
struct KernelSet {
  const char* name;

  /// For rows u_0..u_{m-1} of a split-complex matrix (row i at re/im +
  /// i*stride, length n) computes c_i = <u_i, v> = sum_k conj(u_ik) v_k,
  /// stores them in coef_re/coef_im and returns sum_i |c_i|^2.
  double (*projection_energy)(const double* u_re, const double* u_im, std::size_t m,
                              std::size_t n, std::size_t stride, const double* v_re,
                              const double* v_im, double* coef_re, double* coef_im);

  /// r -= c * u over n split-complex entries.
  void (*complex_axpy)(double c_re, double c_im, const double* u_re, const double* u_im,
                       double* r_re, double* r_im, std::size_t n);

  /// (x, y) <- (c x - s y, s x + c y) elementwise over n entries.
  void (*plane_rotation)(double* x, double* y, std::size_t n, double c, double s);

  /// In place: pmf[k] <- (1-p) pmf[k] + p pmf[k-1] for k = 0..len, where
  /// pmf has len + 1 slots and pmf[len] is zero on entry.
  void (*bernoulli_fold)(double* pmf, std::size_t len, double p);
};

const KernelSet& scalar_kernels();

/// Nullptr when the AVX2 variant was not compiled or the CPU lacks AVX2/FMA.
const KernelSet* avx2_kernels();

/// The set used by the library. Chosen once from CPU features; the
/// CUELAB_SIMD environment variable ("scalar", "avx2", "auto") overrides.
const KernelSet& active_kernels();

/// Switches the active set by name; returns false for unknown or
/// unsupported names. Not thread-safe with respect to running computations.
bool select_kernels(std::string_view name);

}  // namespace cuelab::simd

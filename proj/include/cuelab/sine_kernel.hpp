#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace cuelab {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Dimension N of the unitary group whose eigenangles are being studied.
struct KernelConfig {
  std::size_t matrix_size = 1;

  /// Throws ValidationError when N < 1.
  static KernelConfig make(std::size_t n);
};

/// Reduces an angle to [0, 2pi) by floor-division remainder.
double reduce_angle(double angle);

/// Half-open arc [start, start + length) on the circle; `start` is reduced,
/// `length` lies in [0, 2pi].
struct Arc {
  double start = 0.0;
  double length = 0.0;

  static Arc make(double start, double length);
  bool contains(double angle) const;
};

/// True when the two half-open arcs share no point (empty arcs are disjoint
/// from everything).
bool arcs_disjoint(const Arc& a, const Arc& b);

/// K_N(x, y) = sin(N(x-y)/2) / sin((x-y)/2), with the analytic limit on the
/// diagonal. Projection kernel w.r.t. the uniform probability measure dθ/2π.
double kernel_value(const KernelConfig& cfg, double x, double y);

/// v(θ)_k = exp(i (k - (N-1)/2) θ), k = 0..N-1, so that
/// sum_k v_k(x) conj(v_k(y)) = K_N(x, y).
std::vector<std::complex<double>> orthonormal_basis_vector(const KernelConfig& cfg, double theta);

/// Writes the real and imaginary parts of v(θ) into the given buffers
/// (each of length N). Used by the sampler's proposal loop.
void basis_vector_split(std::size_t n, double theta, double* re, double* im);

/// Gram matrix of the Fourier basis restricted to an arc:
///   M_jk = (1/2pi) * integral over the arc of exp(i (j-k) x) dx.
/// Its eigenvalues are the Bernoulli parameters of the arc count.
class ArcKernelMatrix {
 public:
  ArcKernelMatrix(std::size_t dimension, Arc arc);

  std::size_t dimension() const { return dimension_; }
  double arc_length() const { return arc_.length; }
  const Arc& arc() const { return arc_; }

  std::complex<double> operator()(std::size_t j, std::size_t k) const {
    return entries_[j * dimension_ + k];
  }
  const std::vector<std::complex<double>>& entries() const { return entries_; }

  std::complex<double> trace() const;

  /// Real symmetric matrix unitarily similar to M: D M D* with
  /// D = diag(exp(-i j c)), c the arc midpoint. Entries are
  /// sin((j-k) L/2) / (pi (j-k)) off the diagonal and L/2pi on it.
  /// Row-major, dimension x dimension.
  std::vector<double> real_symmetric_form() const;

 private:
  std::size_t dimension_;
  Arc arc_;
  std::vector<std::complex<double>> entries_;
};

/// Arc kernel for [0, theta); rejects theta outside [0, 2pi].
ArcKernelMatrix arc_kernel(const KernelConfig& cfg, double theta);

/// Arc kernel for an arbitrary half-open arc.
ArcKernelMatrix arc_kernel(const KernelConfig& cfg, const Arc& arc);

}  // namespace cuelab

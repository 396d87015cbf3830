#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "cuelab/sine_kernel.hpp"

namespace cuelab {

/// Bernoulli parameters of an arc count: eigenvalues of the arc kernel,
/// sorted descending and clamped to [0, 1].
struct BernoulliSpectrum {
  std::vector<double> params;
  double source_arc = 0.0;
  /// Largest distance of a raw eigenvalue outside [0, 1] before clamping.
  double clamp_excess = 0.0;
};

/// Exact law of a sum of independent Bernoulli variables.
struct PoissonBinomialLaw {
  std::vector<double> pmf;  // over {0, ..., N}
  double mean = 0.0;
  double variance = 0.0;

  std::size_t support_max() const { return pmf.empty() ? 0 : pmf.size() - 1; }
};

/// Joint law of the counts in two disjoint arcs.
struct JointCountLaw {
  Arc arc_a;
  Arc arc_b;
  std::size_t dimension = 0;
  std::vector<double> joint_pmf;  // (N+1) x (N+1), row index = count in A

  double operator()(std::size_t a, std::size_t b) const {
    return joint_pmf[a * (dimension + 1) + b];
  }
  std::vector<double> marginal_a() const;
  std::vector<double> marginal_b() const;
};

struct VarianceBoundsReport {
  std::size_t n = 0;
  double theta = 0.0;
  double variance = 0.0;
  double global_upper = 0.0;               // log(eN)
  std::optional<double> local_lower;       // (1/3pi^2) log(2N theta / 3pi)
  std::optional<double> local_upper;       // (1/2) log(e^{3/2} N theta)
  bool global_satisfied = false;
  bool local_satisfied = true;             // vacuous when theta is outside the range
  bool local_applicable = false;

  bool satisfied() const { return global_satisfied && local_satisfied; }
};

/// Eigenvalues (descending) of a real symmetric matrix that is also
/// centrosymmetric (a_ij = a_{n-1-i, n-1-j}), via cyclic Jacobi on its even
/// and odd half-size blocks.
std::vector<double> centrosymmetric_eigenvalues(const std::vector<double>& a, std::size_t n);

/// Eigenvalues of the arc kernel. The kernel is Toeplitz, so its real
/// symmetric form is centrosymmetric and splits into two Jacobi problems.
/// Raw eigenvalues more than 1e-8 outside [0, 1] raise NumericalError.
BernoulliSpectrum hermitian_eigenvalues(const ArcKernelMatrix& m);

/// Iterated-convolution pmf of the sum; mean and variance in closed form.
/// Throws ValidationError if any parameter lies outside [0, 1].
PoissonBinomialLaw poisson_binomial(const BernoulliSpectrum& spec);
PoissonBinomialLaw poisson_binomial(const std::vector<double>& params);

/// Exact law of the count in [0, theta).
PoissonBinomialLaw counting_law(const KernelConfig& cfg, double theta);

/// P[X - mean > t] = sum of pmf(k) over k > mean + t.
double exact_tail(const PoissonBinomialLaw& law, double t);

/// Exact variance of N_theta against log(eN) and, for 3pi/2N <= theta <= pi/2,
/// the two-sided logarithmic bounds.
VarianceBoundsReport variance_bounds_check(std::size_t n, double theta);

/// Determinant by LU with partial pivoting (row-major, n x n, copied).
std::complex<double> complex_determinant(std::vector<std::complex<double>> a, std::size_t n);

/// Joint pmf of (N_A, N_B) by evaluating
///   E[z1^{N_A} z2^{N_B}] = det(I + (z1 - 1) M_A + (z2 - 1) M_B)
/// on the (N+1)-th roots of unity and inverting with a 2-D DFT.
/// Rejects overlapping arcs and N > 16.
JointCountLaw joint_count_law(const KernelConfig& cfg, const Arc& a, const Arc& b);

/// max over (s, t) of P[N_A >= s, N_B >= t] - P[N_A >= s] P[N_B >= t].
double negative_association_check(const JointCountLaw& law);

}  // namespace cuelab

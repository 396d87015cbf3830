#include "cuelab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "cuelab/errors.hpp"
#include "cuelab/jacobi.hpp"
#include "cuelab/simd/kernels.hpp"

namespace cuelab {

namespace {

constexpr double kClampSlack = 1e-8;
constexpr std::size_t kMaxJointDimension = 16;

}  // namespace

std::vector<double> centrosymmetric_eigenvalues(const std::vector<double>& a, std::size_t n) {
  // Orthonormal even/odd basis (e_i +- e_{n-1-i})/sqrt2, plus e_mid for odd n,
  // block-diagonalizes A = JAJ into two symmetric halves.
  const std::size_t half = n / 2;
  const std::size_t even_dim = n - half;
  std::vector<double> even(even_dim * even_dim), odd(half * half);
  for (std::size_t i = 0; i < half; ++i) {
    for (std::size_t j = 0; j < half; ++j) {
      const double direct = a[i * n + j];
      const double mirrored = a[i * n + (n - 1 - j)];
      even[i * even_dim + j] = direct + mirrored;
      odd[i * half + j] = direct - mirrored;
    }
  }
  if (n % 2 == 1) {
    const std::size_t mid = half;
    for (std::size_t i = 0; i < half; ++i) {
      const double v = std::numbers::sqrt2 * a[i * n + mid];
      even[i * even_dim + mid] = v;
      even[mid * even_dim + i] = v;
    }
    even[mid * even_dim + mid] = a[mid * n + mid];
  }
  std::vector<double> values = jacobi_symmetric(std::move(even), even_dim).eigenvalues;
  if (half > 0) {
    const auto odd_values = jacobi_symmetric(std::move(odd), half).eigenvalues;
    values.insert(values.end(), odd_values.begin(), odd_values.end());
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

BernoulliSpectrum hermitian_eigenvalues(const ArcKernelMatrix& m) {
  const std::size_t n = m.dimension();
  BernoulliSpectrum out;
  out.source_arc = m.arc_length();
  out.params = centrosymmetric_eigenvalues(m.real_symmetric_form(), n);
  for (double& lambda : out.params) {
    const double excess = std::max(lambda - 1.0, -lambda);
    out.clamp_excess = std::max(out.clamp_excess, excess);
    if (excess > kClampSlack) {
      throw NumericalError("arc-kernel eigenvalue " + std::to_string(lambda) + " outside [0, 1]");
    }
    lambda = std::clamp(lambda, 0.0, 1.0);
  }
  return out;
}

PoissonBinomialLaw poisson_binomial(const std::vector<double>& params) {
  const auto& kern = simd::active_kernels();
  PoissonBinomialLaw law;
  law.pmf.assign(params.size() + 1, 0.0);
  law.pmf[0] = 1.0;
  std::size_t len = 0;
  for (double p : params) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError("Bernoulli parameter " + std::to_string(p) + " outside [0, 1]");
    }
    ++len;
    kern.bernoulli_fold(law.pmf.data(), len, p);
    law.mean += p;
    law.variance += p * (1.0 - p);
  }
  return law;
}

PoissonBinomialLaw poisson_binomial(const BernoulliSpectrum& spec) {
  return poisson_binomial(spec.params);
}

PoissonBinomialLaw counting_law(const KernelConfig& cfg, double theta) {
  return poisson_binomial(hermitian_eigenvalues(arc_kernel(cfg, theta)));
}

double exact_tail(const PoissonBinomialLaw& law, double t) {
  const double threshold = law.mean + t;
  double tail = 0.0;
  // accumulate from the top so tiny upper-tail masses are not swamped
  for (std::size_t k = law.pmf.size(); k-- > 0;) {
    if (!(static_cast<double>(k) > threshold)) {
      break;
    }
    tail += law.pmf[k];
  }
  return std::min(tail, 1.0);
}

VarianceBoundsReport variance_bounds_check(std::size_t n, double theta) {
  const KernelConfig cfg = KernelConfig::make(n);
  const PoissonBinomialLaw law = counting_law(cfg, theta);
  const double nd = static_cast<double>(n);
  constexpr double pi = std::numbers::pi;

  VarianceBoundsReport r;
  r.n = n;
  r.theta = theta;
  r.variance = law.variance;
  r.global_upper = std::log(std::numbers::e * nd);
  r.global_satisfied = r.variance <= r.global_upper;
  r.local_applicable = theta >= 3.0 * pi / (2.0 * nd) && theta <= pi / 2.0;
  if (r.local_applicable) {
    r.local_lower = std::log(2.0 * nd * theta / (3.0 * pi)) / (3.0 * pi * pi);
    r.local_upper = 0.5 * std::log(std::exp(1.5) * nd * theta);
    r.local_satisfied = *r.local_lower <= r.variance && r.variance <= *r.local_upper;
  }
  return r;
}

std::complex<double> complex_determinant(std::vector<std::complex<double>> a, std::size_t n) {
  std::complex<double> det{1.0, 0.0};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(a[r * n + col]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) {
      return {0.0, 0.0};
    }
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a[pivot * n + k], a[col * n + k]);
      }
      det = -det;
    }
    const std::complex<double> diag = a[col * n + col];
    det *= diag;
    for (std::size_t r = col + 1; r < n; ++r) {
      const std::complex<double> factor = a[r * n + col] / diag;
      if (factor == std::complex<double>{0.0, 0.0}) {
        continue;
      }
      for (std::size_t k = col + 1; k < n; ++k) {
        a[r * n + k] -= factor * a[col * n + k];
      }
    }
  }
  return det;
}

std::vector<double> JointCountLaw::marginal_a() const {
  const std::size_t side = dimension + 1;
  std::vector<double> m(side, 0.0);
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      m[i] += joint_pmf[i * side + j];
    }
  }
  return m;
}

std::vector<double> JointCountLaw::marginal_b() const {
  const std::size_t side = dimension + 1;
  std::vector<double> m(side, 0.0);
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      m[j] += joint_pmf[i * side + j];
    }
  }
  return m;
}

JointCountLaw joint_count_law(const KernelConfig& cfg, const Arc& a, const Arc& b) {
  const std::size_t n = cfg.matrix_size;
  if (n > kMaxJointDimension) {
    throw ValidationError("joint count law supports N <= 16");
  }
  if (!arcs_disjoint(a, b)) {
    throw ValidationError("joint count law requires disjoint arcs");
  }
  const ArcKernelMatrix ma = arc_kernel(cfg, a);
  const ArcKernelMatrix mb = arc_kernel(cfg, b);
  const std::size_t side = n + 1;

  std::vector<std::complex<double>> roots(side);
  for (std::size_t r = 0; r < side; ++r) {
    roots[r] = std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(side));
  }

  // pgf values G(w^r, w^s)
  std::vector<std::complex<double>> pgf(side * side);
  std::vector<std::complex<double>> work(n * n);
  for (std::size_t r = 0; r < side; ++r) {
    const std::complex<double> za = roots[r] - 1.0;
    for (std::size_t s = 0; s < side; ++s) {
      const std::complex<double> zb = roots[s] - 1.0;
      for (std::size_t i = 0; i < n * n; ++i) {
        work[i] = za * ma.entries()[i] + zb * mb.entries()[i];
      }
      for (std::size_t i = 0; i < n; ++i) {
        work[i * n + i] += 1.0;
      }
      pgf[r * side + s] = complex_determinant(work, n);
    }
  }

  // p(j, k) = (1/side^2) sum_{r,s} G(w^r, w^s) w^{-(rj + sk)}
  JointCountLaw law;
  law.arc_a = a;
  law.arc_b = b;
  law.dimension = n;
  law.joint_pmf.assign(side * side, 0.0);
  const double norm = 1.0 / static_cast<double>(side * side);
  for (std::size_t j = 0; j < side; ++j) {
    for (std::size_t k = 0; k < side; ++k) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t s = 0; s < side; ++s) {
          const std::size_t e = (r * j + s * k) % side;
          acc += pgf[r * side + s] * std::conj(roots[e]);
        }
      }
      law.joint_pmf[j * side + k] = acc.real() * norm;
    }
  }
  return law;
}

double negative_association_check(const JointCountLaw& law) {
  const std::size_t side = law.dimension + 1;
  // upper-orthant sums U(s, t) = P[N_A >= s, N_B >= t]
  std::vector<double> upper((side + 1) * (side + 1), 0.0);
  auto at = [&](std::size_t s, std::size_t t) -> double& { return upper[s * (side + 1) + t]; };
  for (std::size_t s = side; s-- > 0;) {
    for (std::size_t t = side; t-- > 0;) {
      at(s, t) = law(s, t) + at(s + 1, t) + at(s, t + 1) - at(s + 1, t + 1);
    }
  }
  double worst = -1.0;
  for (std::size_t s = 0; s < side; ++s) {
    for (std::size_t t = 0; t < side; ++t) {
      worst = std::max(worst, at(s, t) - at(s, 0) * at(0, t));
    }
  }
  return worst;
}

}  // namespace cuelab

#include "cuelab/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cuelab/errors.hpp"
#include "cuelab/simd/kernels.hpp"

namespace cuelab {

namespace {

constexpr double kToleranceScale = 1e-12;

struct Rotation {
  double c, s, t;
};

// Rotation annihilating the (p, q) entry of [[app, apq], [apq, aqq]].
Rotation make_rotation(double app, double aqq, double apq) {
  const double tau = (aqq - app) / (2.0 * apq);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, t};
}

template <typename T>
double off_norm(const std::vector<T>& a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      sum += 2.0 * std::norm(a[i * n + j]);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

JacobiResult jacobi_symmetric(std::vector<double> a, std::size_t n, int max_sweeps) {
  const auto& kern = simd::active_kernels();
  const double tolerance = kToleranceScale * static_cast<double>(std::max<std::size_t>(n, 1));
  JacobiResult out;
  out.off_diagonal_norm = off_norm(a, n);
  while (out.off_diagonal_norm >= tolerance) {
    if (out.sweeps == max_sweeps) {
      throw NumericalError("Jacobi iteration did not converge");
    }
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) {
          continue;
        }
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        // negligible relative to both diagonal entries: drop it
        if (std::abs(apq) * 1e18 < std::min(std::abs(app), std::abs(aqq))) {
          a[p * n + q] = 0.0;
          a[q * n + p] = 0.0;
          continue;
        }
        const Rotation r = make_rotation(app, aqq, apq);
        // rows p, q of J^T A; by symmetry these are also the new columns
        kern.plane_rotation(a.data() + p * n, a.data() + q * n, n, r.c, r.s);
        a[p * n + p] = app - r.t * apq;
        a[q * n + q] = aqq + r.t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != p && k != q) {
            a[k * n + p] = a[p * n + k];
            a[k * n + q] = a[q * n + k];
          }
        }
      }
    }
    out.off_diagonal_norm = off_norm(a, n);
  }
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenvalues[i] = a[i * n + i];
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  return out;
}

JacobiResult jacobi_hermitian(std::vector<std::complex<double>> a, std::size_t n, int max_sweeps) {
  const double tolerance = kToleranceScale * static_cast<double>(std::max<std::size_t>(n, 1));
  JacobiResult out;
  out.off_diagonal_norm = off_norm(a, n);
  while (out.off_diagonal_norm >= tolerance) {
    if (out.sweeps == max_sweeps) {
      throw NumericalError("Jacobi iteration did not converge");
    }
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const std::complex<double> apq = a[p * n + q];
        const double magnitude = std::abs(apq);
        if (magnitude == 0.0) {
          continue;
        }
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        // phase step: B = D* A D with D_qq = conj(apq)/|apq| makes b_pq = |apq|
        const std::complex<double> phase = std::conj(apq) / magnitude;
        for (std::size_t k = 0; k < n; ++k) {
          a[k * n + q] *= phase;
          a[q * n + k] *= std::conj(phase);
        }
        const Rotation r = make_rotation(app, aqq, magnitude);
        for (std::size_t k = 0; k < n; ++k) {
          const std::complex<double> xp = a[p * n + k];
          const std::complex<double> xq = a[q * n + k];
          a[p * n + k] = r.c * xp - r.s * xq;
          a[q * n + k] = r.s * xp + r.c * xq;
        }
        a[p * n + p] = app - r.t * magnitude;
        a[q * n + q] = aqq + r.t * magnitude;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != p && k != q) {
            a[k * n + p] = std::conj(a[p * n + k]);
            a[k * n + q] = std::conj(a[q * n + k]);
          }
        }
      }
    }
    out.off_diagonal_norm = off_norm(a, n);
  }
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenvalues[i] = a[i * n + i].real();
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  return out;
}

}  // namespace cuelab

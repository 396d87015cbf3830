#include "cuelab/sine_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cuelab/errors.hpp"

namespace cuelab {

namespace {

constexpr double kDiagonalEps = 1e-12;
constexpr double kArcSlack = 1e-12;

}  // namespace

KernelConfig KernelConfig::make(std::size_t n) {
  if (n < 1) {
    throw ValidationError("matrix size must be at least 1");
  }
  return KernelConfig{n};
}

double reduce_angle(double angle) {
  double r = angle - kTwoPi * std::floor(angle / kTwoPi);
  // floor can leave r == 2pi after rounding for tiny negative inputs
  if (r >= kTwoPi || r < 0.0) {
    r = 0.0;
  }
  return r;
}

Arc Arc::make(double start, double length) {
  if (!std::isfinite(start) || !std::isfinite(length)) {
    throw ValidationError("arc endpoints must be finite");
  }
  if (length < 0.0 || length > kTwoPi + kArcSlack) {
    throw ValidationError("arc length " + std::to_string(length) + " outside [0, 2pi]");
  }
  return Arc{reduce_angle(start), std::min(length, kTwoPi)};
}

bool Arc::contains(double angle) const {
  const double offset = reduce_angle(angle - start);
  return offset < length;
}

bool arcs_disjoint(const Arc& a, const Arc& b) {
  if (a.length <= 0.0 || b.length <= 0.0) {
    return true;
  }
  // place a at the origin; b must fit in the complementary arc [a.len, 2pi)
  const double offset = reduce_angle(b.start - a.start);
  return offset + kArcSlack >= a.length && offset + b.length <= kTwoPi + kArcSlack;
}

double kernel_value(const KernelConfig& cfg, double x, double y) {
  const double n = static_cast<double>(cfg.matrix_size);
  // |x - y| makes the result exactly symmetric in (x, y)
  const double d = std::abs(reduce_angle(x) - reduce_angle(y));
  const double half = 0.5 * d;
  const double denom = std::sin(half);
  if (std::abs(denom) < kDiagonalEps) {
    // d/2 close to m*pi: limit is N * (-1)^{m (N-1)}
    const auto m = static_cast<long long>(std::llround(d / kTwoPi));
    const bool negative = (m % 2 != 0) && (cfg.matrix_size % 2 == 0);
    return negative ? -n : n;
  }
  return std::sin(n * half) / denom;
}

void basis_vector_split(std::size_t n, double theta, double* re, double* im) {
  const double center = 0.5 * static_cast<double>(n - 1);
  // exponents are antisymmetric about the center: v_{n-1-k} = conj(v_k)
  for (std::size_t k = 0; k < (n + 1) / 2; ++k) {
    const double phase = (static_cast<double>(k) - center) * theta;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    re[k] = c;
    im[k] = s;
    re[n - 1 - k] = c;
    im[n - 1 - k] = -s;
  }
  if (n % 2 == 1) {
    im[n / 2] = 0.0;
    re[n / 2] = 1.0;
  }
}

std::vector<std::complex<double>> orthonormal_basis_vector(const KernelConfig& cfg, double theta) {
  const std::size_t n = cfg.matrix_size;
  std::vector<double> re(n), im(n);
  basis_vector_split(n, theta, re.data(), im.data());
  std::vector<std::complex<double>> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = {re[k], im[k]};
  }
  return v;
}

ArcKernelMatrix::ArcKernelMatrix(std::size_t dimension, Arc arc)
    : dimension_(dimension), arc_(arc), entries_(dimension * dimension) {
  const double len = arc_.length;
  const double mid = arc_.start + 0.5 * len;
  const double diag = len / kTwoPi;
  for (std::size_t j = 0; j < dimension_; ++j) {
    entries_[j * dimension_ + j] = {diag, 0.0};
    for (std::size_t k = j + 1; k < dimension_; ++k) {
      const double d = static_cast<double>(j) - static_cast<double>(k);
      const double magnitude = std::sin(0.5 * d * len) / (std::numbers::pi * d);
      const std::complex<double> value = std::polar(1.0, d * mid) * magnitude;
      entries_[j * dimension_ + k] = value;
      entries_[k * dimension_ + j] = std::conj(value);
    }
  }
}

std::complex<double> ArcKernelMatrix::trace() const {
  std::complex<double> t{0.0, 0.0};
  for (std::size_t j = 0; j < dimension_; ++j) {
    t += entries_[j * dimension_ + j];
  }
  return t;
}

std::vector<double> ArcKernelMatrix::real_symmetric_form() const {
  const std::size_t n = dimension_;
  const double len = arc_.length;
  std::vector<double> a(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    a[j * n + j] = len / kTwoPi;
    for (std::size_t k = j + 1; k < n; ++k) {
      const double d = static_cast<double>(j) - static_cast<double>(k);
      const double v = std::sin(0.5 * d * len) / (std::numbers::pi * d);
      a[j * n + k] = v;
      a[k * n + j] = v;
    }
  }
  return a;
}

ArcKernelMatrix arc_kernel(const KernelConfig& cfg, double theta) {
  if (!(theta >= 0.0 && theta <= kTwoPi)) {
    throw ValidationError("arc length " + std::to_string(theta) + " outside [0, 2pi]");
  }
  return ArcKernelMatrix(cfg.matrix_size, Arc{0.0, theta});
}

ArcKernelMatrix arc_kernel(const KernelConfig& cfg, const Arc& arc) {
  return ArcKernelMatrix(cfg.matrix_size, arc);
}

}  // namespace cuelab

#include "cuelab/dpp_sampler.hpp"

#include <algorithm>
#include <cmath>

#include "cuelab/errors.hpp"
#include "cuelab/simd/kernels.hpp"

namespace cuelab {

namespace {

constexpr double kResidualFloor = 1e-10;
constexpr int kMaxDegenerateRetries = 1000;

std::size_t padded(std::size_t n) { return (n + 3) & ~std::size_t{3}; }

}  // namespace

DppSampler::DppSampler(KernelConfig cfg)
    : n_(cfg.matrix_size),
      stride_(padded(cfg.matrix_size)),
      basis_re_(stride_ * n_, 0.0),
      basis_im_(stride_ * n_, 0.0),
      v_re_(stride_, 0.0),
      v_im_(stride_, 0.0),
      coef_re_(n_, 0.0),
      coef_im_(n_, 0.0) {
  if (n_ < 1) {
    throw ValidationError("matrix size must be at least 1");
  }
}

// Appends the normalized residual of v(theta) to the basis. Classical
// Gram-Schmidt followed by one reorthogonalization pass.
bool DppSampler::absorb(double theta) {
  const auto& kern = simd::active_kernels();
  basis_vector_split(n_, theta, v_re_.data(), v_im_.data());
  for (int pass = 0; pass < 2; ++pass) {
    kern.projection_energy(basis_re_.data(), basis_im_.data(), rank_, n_, stride_, v_re_.data(),
                           v_im_.data(), coef_re_.data(), coef_im_.data());
    for (std::size_t i = 0; i < rank_; ++i) {
      kern.complex_axpy(coef_re_[i], coef_im_[i], basis_re_.data() + i * stride_,
                        basis_im_.data() + i * stride_, v_re_.data(), v_im_.data(), n_);
    }
  }
  double norm2 = 0.0;
  for (std::size_t k = 0; k < n_; ++k) {
    norm2 += v_re_[k] * v_re_[k] + v_im_[k] * v_im_[k];
  }
  const double norm = std::sqrt(norm2);
  if (!(norm >= kResidualFloor)) {
    return false;
  }
  const double inv = 1.0 / norm;
  double* row_re = basis_re_.data() + rank_ * stride_;
  double* row_im = basis_im_.data() + rank_ * stride_;
  for (std::size_t k = 0; k < n_; ++k) {
    row_re[k] = v_re_[k] * inv;
    row_im[k] = v_im_[k] * inv;
  }
  ++rank_;
  return true;
}

SampleResult DppSampler::sample(CounterStream& stream) {
  const auto& kern = simd::active_kernels();
  const double n = static_cast<double>(n_);
  SampleResult out;
  out.sample.seed = stream.master_seed();
  out.sample.replicate = stream.replicate();
  out.sample.angles.reserve(n_);

  int degenerate = 0;
  for (;;) {
    rank_ = 0;
    out.sample.angles.clear();
    while (rank_ < n_) {
      double theta = 0.0;
      for (;;) {
        theta = kTwoPi * stream.next_double();
        const double u = stream.next_double();
        ++out.stats.proposals_used;
        basis_vector_split(n_, theta, v_re_.data(), v_im_.data());
        const double projected =
            kern.projection_energy(basis_re_.data(), basis_im_.data(), rank_, n_, stride_,
                                   v_re_.data(), v_im_.data(), coef_re_.data(), coef_im_.data());
        // ||v||^2 = N
        if (u * n < n - projected) {
          break;
        }
      }
      if (!absorb(theta)) {
        ++out.stats.degenerate_resamples;
        if (++degenerate > kMaxDegenerateRetries) {
          throw NumericalError("sampler residual repeatedly below floor");
        }
        continue;
      }
      out.sample.angles.push_back(theta);
    }
    std::sort(out.sample.angles.begin(), out.sample.angles.end());
    const bool distinct =
        std::adjacent_find(out.sample.angles.begin(), out.sample.angles.end()) ==
        out.sample.angles.end();
    if (distinct) {
      break;
    }
    // exact ties have probability zero; redraw the whole configuration
    ++out.stats.degenerate_resamples;
    if (++degenerate > kMaxDegenerateRetries) {
      throw NumericalError("sampler produced repeated tied angles");
    }
  }
  out.stats.points_drawn = n_;
  return out;
}

SampleResult sample_eigenangles(const KernelConfig& cfg, CounterStream& stream) {
  DppSampler sampler(cfg);
  return sampler.sample(stream);
}

OracleResult sample_oracle_n2(CounterStream& stream) {
  OracleResult out;
  out.sample.seed = stream.master_seed();
  out.sample.replicate = stream.replicate();
  for (;;) {
    const double x = kTwoPi * stream.next_double();
    const double y = kTwoPi * stream.next_double();
    const double u = stream.next_double();
    ++out.proposals;
    const double s = std::sin(0.5 * (x - y));
    if (u < s * s && x != y) {
      out.sample.angles = {std::min(x, y), std::max(x, y)};
      return out;
    }
  }
}

EigenangleSample rotate_sample(const EigenangleSample& s, double phi) {
  EigenangleSample out = s;
  const double shift = reduce_angle(phi);
  if (shift == 0.0) {
    return out;
  }
  for (double& a : out.angles) {
    a = reduce_angle(a + shift);
  }
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

std::vector<double> circular_spacings(const EigenangleSample& s) {
  const auto& a = s.angles;
  std::vector<double> gaps;
  if (a.empty()) {
    return gaps;
  }
  gaps.reserve(a.size());
  for (std::size_t j = 0; j + 1 < a.size(); ++j) {
    gaps.push_back(a[j + 1] - a[j]);
  }
  gaps.push_back(kTwoPi - a.back() + a.front());
  return gaps;
}

}  // namespace cuelab

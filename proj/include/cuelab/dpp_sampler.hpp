#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cuelab/rng.hpp"
#include "cuelab/sine_kernel.hpp"

namespace cuelab {

/// One draw of the CUE eigenangle process: N angles, sorted, in [0, 2pi).
struct EigenangleSample {
  std::vector<double> angles;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;

  std::size_t size() const { return angles.size(); }
};

struct SamplerStats {
  std::uint64_t proposals_used = 0;
  std::uint64_t points_drawn = 0;
  std::uint64_t degenerate_resamples = 0;
};

struct SampleResult {
  EigenangleSample sample;
  SamplerStats stats;
};

/// Sequential projection-DPP sampler for the CUE eigenangle process.
///
/// After m points the next one has density
///   p_m(θ) = (N - sum_i |<u_i, v(θ)>|^2) / (2pi (N - m)),
/// where {u_i} is an orthonormal basis of the span of v at the points drawn
/// so far. Proposals are uniform and accepted with probability
/// (N - sum_i |<u_i, v(θ)>|^2) / N. Workspace is reused across calls.
class DppSampler {
 public:
  explicit DppSampler(KernelConfig cfg);

  SampleResult sample(CounterStream& stream);

  std::size_t matrix_size() const { return n_; }

 private:
  bool absorb(double theta);

  std::size_t n_;
  std::size_t stride_;
  std::vector<double> basis_re_, basis_im_;
  std::vector<double> v_re_, v_im_;
  std::vector<double> coef_re_, coef_im_;
  std::size_t rank_ = 0;
};

/// Convenience wrapper: one sample with a fresh sampler.
SampleResult sample_eigenangles(const KernelConfig& cfg, CounterStream& stream);

/// Independent N = 2 sampler: (x, y) uniform on the torus accepted with
/// probability sin^2((x - y)/2), the Weyl density up to normalization.
struct OracleResult {
  EigenangleSample sample;
  std::uint64_t proposals = 0;
};
OracleResult sample_oracle_n2(CounterStream& stream);

/// Shifts every angle by phi (mod 2pi) and re-sorts.
EigenangleSample rotate_sample(const EigenangleSample& s, double phi);

/// Circular spacings theta_{(j+1)} - theta_{(j)} including the wraparound gap.
std::vector<double> circular_spacings(const EigenangleSample& s);

}  // namespace cuelab

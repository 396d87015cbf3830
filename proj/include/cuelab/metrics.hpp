#pragma once

#include <cstddef>

#include "cuelab/dpp_sampler.hpp"

namespace cuelab {

struct DistanceReport {
  std::size_t n = 0;
  double d_k = 0.0;       // Kolmogorov distance to the uniform law
  double w1 = 0.0;        // circular Wasserstein-1 distance (radians)
  double max_gap = 0.0;   // largest circular spacing (radians)
  double grid_sup = 0.0;  // (1/N) max_k |N_{2pi k/N} - k|
};

/// sup over theta of |F_N(theta) - theta/2pi|, evaluated at both one-sided
/// limits of every atom. Expects sorted angles.
double kolmogorov_distance(const EigenangleSample& s);

/// W1 on the circle with arc-length cost:
///   min_c integral_0^{2pi} |F_N(theta) - theta/2pi - c| dtheta.
double w1_distance(const EigenangleSample& s);

double max_spacing(const EigenangleSample& s);

/// (1/N) max_{1<=k<=N} |#{j : theta_j <= 2pi k/N} - k|.
double grid_sup(const EigenangleSample& s);

DistanceReport distance_report(const EigenangleSample& s);

}  // namespace cuelab

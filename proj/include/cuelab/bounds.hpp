#pragma once

#include <cstddef>
#include <optional>

#include "cuelab/counting.hpp"

namespace cuelab {

/// Deviation x (in standard deviations), standard deviation s_n of the sum,
/// and the almost-sure bound M on each summand.
struct TailBoundInput {
  double x = 0.0;
  double s_n = 0.0;
  double m_bound = 1.0;

  /// Throws ValidationError unless all fields are finite and positive.
  static TailBoundInput make(double x, double s_n, double m_bound = 1.0);
};

/// exp(-min{x^2/4, x s_n / 2M}): upper bound on P[S - ES > x s_n].
double bernstein_bound(const TailBoundInput& in);

/// Kolmogorov's lower bound exp(-(x^2/2)(1 + eps)) with
/// eps = max{64 sqrt(a), 32 sqrt(log x^2) / x}, a = x M / s_n.
/// Only applicable for x >= 512 and a <= 1/256. The value underflows to 0
/// for every applicable input, so the logarithm is kept as well.
struct KolmogorovLowerBound {
  double log_value = 0.0;
  double value = 0.0;
  double epsilon = 0.0;
  double a = 0.0;
};
std::optional<KolmogorovLowerBound> kolmogorov_lower_bound(const TailBoundInput& in);

/// Union bound on P[max_k |N_{2pi k/N} - k| > x], before clipping:
/// 2N exp(-min{x^2 / (4 log(eN)), x/2}).
double union_bound_raw(std::size_t n, double x);

/// union_bound_raw clipped to [0, 1].
double union_bound_curve(std::size_t n, double x);

/// Bonferroni lower bound on P[d_K > x] from T disjoint arcs of length
/// N^{-1/2}: P is the exact probability that one such arc holds more than
/// 2x of excess mass, and lower = T P - T(T-1) P^2 / 2 (clipped to [0, 1]).
struct BonferroniCertificate {
  std::size_t n = 0;
  double x = 0.0;
  std::size_t arcs = 0;
  double p = 0.0;
  double lower = 0.0;

  double tp() const { return static_cast<double>(arcs) * p; }
};
BonferroniCertificate bonferroni_certificate(std::size_t n, double x, std::size_t arcs);
BonferroniCertificate bonferroni_certificate(const PoissonBinomialLaw& arc_law, std::size_t n,
                                             double x, std::size_t arcs);

/// Largest number of disjoint arcs of length N^{-1/2}: floor(2pi sqrt(N)).
std::size_t max_bonferroni_arcs(std::size_t n);

/// Bisection for the largest x at which some T <= max_bonferroni_arcs(N)
/// gives T P in [1/2, 3/2]; returns that certificate. Throws
/// NumericalError if no such x exists.
BonferroniCertificate search_bonferroni_certificate(std::size_t n);

}  // namespace cuelab

#include "cuelab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cuelab/errors.hpp"

namespace cuelab {

namespace {

constexpr double kKolmogorovMinX = 512.0;
constexpr double kKolmogorovMaxA = 1.0 / 256.0;

double clip01(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

TailBoundInput TailBoundInput::make(double x, double s_n, double m_bound) {
  const bool ok = std::isfinite(x) && std::isfinite(s_n) && std::isfinite(m_bound) && x > 0.0 &&
                  s_n > 0.0 && m_bound > 0.0;
  if (!ok) {
    throw ValidationError("tail bound inputs must be finite and strictly positive");
  }
  return {x, s_n, m_bound};
}

double bernstein_bound(const TailBoundInput& in) {
  const double exponent = std::min(in.x * in.x / 4.0, in.x * in.s_n / (2.0 * in.m_bound));
  return clip01(std::exp(-exponent));
}

std::optional<KolmogorovLowerBound> kolmogorov_lower_bound(const TailBoundInput& in) {
  const double a = in.x * in.m_bound / in.s_n;
  if (in.x < kKolmogorovMinX || a > kKolmogorovMaxA) {
    return std::nullopt;
  }
  KolmogorovLowerBound out;
  out.a = a;
  out.epsilon = std::max(64.0 * std::sqrt(a), 32.0 * std::sqrt(std::log(in.x * in.x)) / in.x);
  out.log_value = -0.5 * in.x * in.x * (1.0 + out.epsilon);
  out.value = std::exp(out.log_value);
  return out;
}

double union_bound_raw(std::size_t n, double x) {
  const double log_en = std::log(std::numbers::e * static_cast<double>(n));
  const double exponent = std::min(x * x / (4.0 * log_en), x / 2.0);
  return 2.0 * static_cast<double>(n) * std::exp(-exponent);
}

double union_bound_curve(std::size_t n, double x) { return clip01(union_bound_raw(n, x)); }

std::size_t max_bonferroni_arcs(std::size_t n) {
  return static_cast<std::size_t>(std::floor(kTwoPi * std::sqrt(static_cast<double>(n))));
}

BonferroniCertificate bonferroni_certificate(const PoissonBinomialLaw& arc_law, std::size_t n,
                                             double x, std::size_t arcs) {
  BonferroniCertificate c;
  c.n = n;
  c.x = x;
  c.arcs = arcs;
  // mu_N(I) - nu(I) > 2x  <=>  N_I - E N_I > 2 x N
  c.p = exact_tail(arc_law, 2.0 * x * static_cast<double>(n));
  const double t = static_cast<double>(arcs);
  c.lower = clip01(t * c.p - 0.5 * t * (t - 1.0) * c.p * c.p);
  return c;
}

BonferroniCertificate bonferroni_certificate(std::size_t n, double x, std::size_t arcs) {
  if (n < 1) {
    throw ValidationError("N must be at least 1");
  }
  if (!(x > 0.0)) {
    throw ValidationError("x must be positive");
  }
  const double arc = 1.0 / std::sqrt(static_cast<double>(n));
  if (static_cast<double>(arcs) * arc > kTwoPi) {
    throw ValidationError("T arcs of length N^{-1/2} do not fit on the circle");
  }
  const PoissonBinomialLaw law = counting_law(KernelConfig::make(n), arc);
  return bonferroni_certificate(law, n, x, arcs);
}

BonferroniCertificate search_bonferroni_certificate(std::size_t n) {
  if (n < 1) {
    throw ValidationError("N must be at least 1");
  }
  const std::size_t t_max = max_bonferroni_arcs(n);
  if (t_max == 0) {
    throw NumericalError("no arc of length N^{-1/2} fits");
  }
  const PoissonBinomialLaw law = counting_law(KernelConfig::make(n), 1.0 / std::sqrt(static_cast<double>(n)));

  // feasible(x): T_max P(x) >= 1/2 and P(x) <= 3/2 (always); P is
  // nonincreasing in x so the feasible set is an initial interval.
  auto feasible = [&](double x) {
    return static_cast<double>(t_max) * exact_tail(law, 2.0 * x * static_cast<double>(n)) >= 0.5;
  };
  double lo = 0.0;
  double hi = 1.0;  // P = 0 once 2xN exceeds N
  if (!feasible(std::nextafter(0.0, 1.0))) {
    throw NumericalError("no deviation level admits a Bonferroni certificate");
  }
  lo = std::nextafter(0.0, 1.0);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  const double x = lo;
  const double p = exact_tail(law, 2.0 * x * static_cast<double>(n));
  // T = floor(1.5 / P) capped at T_max keeps T P in [1/2, 3/2]
  std::size_t arcs = t_max;
  if (p > 0.0) {
    arcs = std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(1.5 / p)), 1, t_max);
  }
  return bonferroni_certificate(law, n, x, arcs);
}

}  // namespace cuelab

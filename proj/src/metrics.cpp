#include "cuelab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace cuelab {

double kolmogorov_distance(const EigenangleSample& s) {
  const auto& a = s.angles;
  const double n = static_cast<double>(a.size());
  double sup = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double u = a[j] / kTwoPi;
    const double right = static_cast<double>(j + 1) / n - u;
    const double left = u - static_cast<double>(j) / n;
    sup = std::max({sup, right, left});
  }
  return sup;
}

double w1_distance(const EigenangleSample& s) {
  const auto& a = s.angles;
  const std::size_t n = a.size();
  if (n == 0) {
    return 0.0;
  }
  // On the segment between consecutive atoms, D = F_N - theta/2pi falls
  // linearly with slope -1/2pi, so the values of D are spread uniformly
  // (density 2pi per unit of D) over [lo_i, hi_i].
  struct Segment {
    double lo, hi;
  };
  std::vector<Segment> segs;
  segs.reserve(n + 1);
  const double nd = static_cast<double>(n);
  double prev = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double end = j < n ? a[j] : kTwoPi;
    const double level = static_cast<double>(j) / nd;
    const double hi = level - prev / kTwoPi;
    const double lo = level - end / kTwoPi;
    if (end > prev) {
      segs.push_back({lo, hi});
    }
    prev = end;
  }

  // measure{D <= c} = 2pi * sum_i clamp(c - lo_i, 0, hi_i - lo_i); find the
  // c at which it reaches pi by sweeping the sorted breakpoints.
  std::vector<std::pair<double, int>> events;
  events.reserve(2 * segs.size());
  for (const auto& g : segs) {
    events.emplace_back(g.lo, +1);
    events.emplace_back(g.hi, -1);
  }
  std::sort(events.begin(), events.end());
  const double half = 0.5;  // target measure pi, in units of 2pi
  double mass = 0.0;
  int active = 0;
  double c = events.front().first;
  for (std::size_t e = 0; e < events.size(); ++e) {
    const double x = events[e].first;
    const double next_mass = mass + static_cast<double>(active) * (x - c);
    if (active > 0 && next_mass >= half) {
      c += (half - mass) / static_cast<double>(active);
      mass = half;
      break;
    }
    mass = next_mass;
    c = x;
    active += events[e].second;
  }

  double integral = 0.0;
  for (const auto& g : segs) {
    const double width = g.hi - g.lo;
    if (c <= g.lo) {
      integral += (0.5 * (g.hi + g.lo) - c) * width;
    } else if (c >= g.hi) {
      integral += (c - 0.5 * (g.hi + g.lo)) * width;
    } else {
      integral += 0.5 * ((g.hi - c) * (g.hi - c) + (c - g.lo) * (c - g.lo));
    }
  }
  return kTwoPi * integral;
}

double max_spacing(const EigenangleSample& s) {
  const auto gaps = circular_spacings(s);
  return gaps.empty() ? kTwoPi : *std::max_element(gaps.begin(), gaps.end());
}

double grid_sup(const EigenangleSample& s) {
  const auto& a = s.angles;
  const std::size_t n = a.size();
  const double nd = static_cast<double>(n);
  double sup = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double edge = kTwoPi * static_cast<double>(k) / nd;
    const auto count = static_cast<double>(std::upper_bound(a.begin(), a.end(), edge) - a.begin());
    sup = std::max(sup, std::abs(count - static_cast<double>(k)));
  }
  return n == 0 ? 0.0 : sup / nd;
}

DistanceReport distance_report(const EigenangleSample& s) {
  return {s.size(), kolmogorov_distance(s), w1_distance(s), max_spacing(s), grid_sup(s)};
}

}  // namespace cuelab

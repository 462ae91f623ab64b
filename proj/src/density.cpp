#include <algorithm>
#include <cmath>
#include <numbers>

#include "migraine/evaluate.hpp"
#include "migraine/sentiment.hpp"

namespace migraine::sentiment {

double silverman_bandwidth(std::span<const double> xs) {
  if (xs.empty()) throw ArgumentError("bandwidth of empty data");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = eval::quantile_sorted(sorted, 0.75) - eval::quantile_sorted(sorted, 0.25);
  const double spread = std::min(sample_std(xs), iqr / 1.34);
  const double h = 0.9 * spread * std::pow(static_cast<double>(xs.size()), -0.2);
  return std::max(h, kMinBandwidth);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(hi > lo)) throw ArgumentError("linear_grid: need at least two points over lo < hi");
  std::vector<double> g(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = lo + step * static_cast<double>(i);
  g.back() = hi;
  return g;
}

DensityCurve estimate_density(std::span<const double> scores, std::optional<double> bandwidth,
                              std::optional<std::vector<double>> grid) {
  if (scores.empty()) throw ArgumentError("estimate_density: no scores");
  DensityCurve c;
  c.bandwidth = bandwidth ? *bandwidth : silverman_bandwidth(scores);
  if (!(c.bandwidth > 0) || !std::isfinite(c.bandwidth)) throw ArgumentError("estimate_density: bandwidth must be positive");
  c.grid = grid ? std::move(*grid) : linear_grid(-1.2, 1.2, 201);
  if (!std::is_sorted(c.grid.begin(), c.grid.end())) throw ArgumentError("estimate_density: grid must be ascending");

  const double h = c.bandwidth;
  const double norm = 1.0 / (static_cast<double>(scores.size()) * h * std::sqrt(2.0 * std::numbers::pi));
  c.density.reserve(c.grid.size());
  for (const double x : c.grid) {
    double s = 0;
    for (const double xi : scores) {
      const double u = (x - xi) / h;
      s += std::exp(-0.5 * u * u);
    }
    c.density.push_back(s * norm);
  }
  return c;
}

double trapezoid_integral(const DensityCurve& curve) {
  double area = 0;
  for (std::size_t i = 1; i < curve.grid.size(); ++i) {
    area += 0.5 * (curve.density[i] + curve.density[i - 1]) * (curve.grid[i] - curve.grid[i - 1]);
  }
  return area;
}

}  // namespace migraine::sentiment

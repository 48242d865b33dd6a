#include "scalereq/burstiness.hpp"

#include <algorithm>
#include <cmath>

namespace scalereq {

double burstiness_from_series(std::span<const double> samples) {
  if (samples.empty()) throw RangeError("load series must have at least one sample");
  double sum = 0.0;
  double peak = 0.0;
  for (double s : samples) {
    if (!std::isfinite(s) || s < 0.0) throw RangeError("load samples must be finite and non-negative");
    sum += s;
    peak = std::max(peak, s);
  }
  if (sum == 0.0) throw DegenerateSeries("average load is zero; burstiness is undefined");
  if (std::all_of(samples.begin(), samples.end(), [&](double s) { return s == peak; })) return 1.0;

  // peak / (sum / n), written to avoid a rounding step on the mean.
  const double n = static_cast<double>(samples.size());
  const double ratio = peak * n / sum;
  // The exact ratio of non-negative samples lies in [1, n]; clamp rounding drift.
  return std::clamp(ratio, 1.0, n);
}

double burstiness_from_series(const LoadSeries& series) { return burstiness_from_series(series.samples); }

double burstiness_from_active_hours(double active_hours) {
  if (!(active_hours > 0.0 && active_hours <= 24.0)) {
    throw RangeError("active hours must be in (0, 24]");
  }
  return 24.0 / active_hours;
}

double compose(const BurstinessComponents& components) {
  std::vector<double> ratios;
  ratios.reserve(components.size());
  for (const auto& c : components) {
    if (!std::isfinite(c.ratio) || c.ratio < 1.0) {
      throw RangeError("burstiness ratio for " + c.timescale + " must be at least 1");
    }
    ratios.push_back(c.ratio);
  }
  // A fixed multiplication order makes the product independent of input order.
  std::sort(ratios.begin(), ratios.end());
  double product = 1.0;
  for (double r : ratios) product *= r;
  return product;
}

}  // namespace scalereq

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scalereq/error.hpp"

namespace scalereq {

class DegenerateSeries : public Error {
 public:
  using Error::Error;
};

// Average load for each equal-length sub-period t of an enclosing period T.
struct LoadSeries {
  std::string period_label;
  std::vector<double> samples;
};

struct BurstinessComponent {
  std::string timescale;
  double ratio = 1.0;
};

using BurstinessComponents = std::vector<BurstinessComponent>;

// Highest sub-period average over the overall average. Throws RangeError for
// an empty series or a negative sample, DegenerateSeries when the mean is 0.
double burstiness_from_series(std::span<const double> samples);
double burstiness_from_series(const LoadSeries& series);

// Flat use during `active_hours` of a day: 24 / active_hours.
double burstiness_from_active_hours(double active_hours);

// Product of the per-timescale ratios; 1 for an empty list.
double compose(const BurstinessComponents& components);

}  // namespace scalereq

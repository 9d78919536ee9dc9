#pragma once

#include <cstdint>
#include <vector>

#include "horolab/rng.hpp"

namespace horolab::fit {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // weighted RMS residual
    int points_used = 0;
};

// Weighted least squares y = intercept + slope * x.  Weights default to 1.
SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& w = {});

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool excludes(double v) const { return v < lo || v > hi; }
};

// Percentile bootstrap interval over precomputed resampled statistics.
Interval percentile_interval(std::vector<double> samples, double coverage = 0.95);

}  // namespace horolab::fit

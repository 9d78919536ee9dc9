#include "horolab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace horolab::fit {

SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& w) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::domain_error("fit_slope: need at least two points");
    if (!w.empty() && w.size() != x.size())
        throw std::domain_error("fit_slope: weight size mismatch");

    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        sw += wi;
        sx += wi * x[i];
        sy += wi * y[i];
        sxx += wi * x[i] * x[i];
        sxy += wi * x[i] * y[i];
    }
    const double det = sw * sxx - sx * sx;
    if (std::abs(det) < 1e-300) throw std::domain_error("fit_slope: degenerate abscissae");

    SlopeFit f;
    f.slope = (sw * sxy - sx * sy) / det;
    f.intercept = (sxx * sy - sx * sxy) / det;
    f.points_used = static_cast<int>(x.size());
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        const double r = y[i] - f.intercept - f.slope * x[i];
        rss += wi * r * r;
    }
    f.residual = std::sqrt(rss / sw);
    return f;
}

Interval percentile_interval(std::vector<double> samples, double coverage) {
    if (samples.empty()) throw std::domain_error("percentile_interval: no samples");
    std::sort(samples.begin(), samples.end());
    const double tail = (1.0 - coverage) / 2.0;
    auto at = [&](double q) {
        double pos = q * static_cast<double>(samples.size() - 1);
        std::size_t i = static_cast<std::size_t>(pos);
        double frac = pos - static_cast<double>(i);
        if (i + 1 >= samples.size()) return samples.back();
        return samples[i] * (1.0 - frac) + samples[i + 1] * frac;
    };
    return {at(tail), at(1.0 - tail)};
}

}  // namespace horolab::fit

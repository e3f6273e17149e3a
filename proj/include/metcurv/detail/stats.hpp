#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace metcurv::detail {

/// Linear-interpolated quantile of an unsorted sample, q in [0, 1]. NaN on empty input.
inline double quantile(std::vector<double> v, double q)
{
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    const double t = pos - static_cast<double>(lo);
    return v[lo] + t * (v[hi] - v[lo]);
}

inline double median(const std::vector<double>& v) { return quantile(v, 0.5); }

inline double iqr(const std::vector<double>& v)
{
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    return quantile(v, 0.75) - quantile(v, 0.25);
}

} // namespace metcurv::detail

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace metcurv {

struct BisectionResult
{
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false; ///< |f(x)| <= ftol reached (as opposed to running out of iterations)
};

/// Bisection on a bracket [lo, hi] with f(lo), f(hi) of opposite sign (or one of them zero).
/// Stops when |f| <= ftol, when the bracket collapses to adjacent doubles, or after max_iter halvings.
template <class F>
BisectionResult bisect(F&& f, double lo, double hi, double ftol, int max_iter = 80)
{
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, 0, true};
    if (fhi == 0.0) return {hi, 0.0, 0, true};
    if ((flo < 0) == (fhi < 0)) throw ArgumentError("bisect: interval does not bracket a sign change");

    BisectionResult best{std::abs(flo) < std::abs(fhi) ? lo : hi, std::abs(flo) < std::abs(fhi) ? flo : fhi, 0, false};
    for (int it = 1; it <= max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        best.iterations = it;
        if (std::abs(fm) <= std::abs(best.fx)) {
            best.x = mid;
            best.fx = fm;
        }
        if (std::abs(fm) <= ftol) {
            best.converged = true;
            return best;
        }
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    best.converged = std::abs(best.fx) <= ftol;
    return best;
}

struct Bracket
{
    double lo, hi;
};

/// Uniform grid of n_steps + 1 points on [lo, hi] (endpoints included).
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n_steps)
{
    std::vector<double> g(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_steps);
    g.back() = hi;
    return g;
}

} // namespace metcurv

#pragma once

// Circumscribed sphere of a tetrahedron from its edge lengths, and the five-point test for a common
// sphere or plane. Delta is the plain (unbordered) determinant of squared distances.

#include <cmath>
#include <span>
#include <vector>

#include "detail/linalg.hpp"
#include "errors.hpp"
#include "metric_core.hpp"

namespace metcurv {

/// det(d_ij^2) for k = 4 or 5 points, distances in lexicographic pair order.
inline double delta_det(std::span<const double> distances, std::size_t k)
{
    if (k != 4 && k != 5) throw ArgumentError("delta_det: k must be 4 or 5");
    if (distances.size() != k * (k - 1) / 2) throw ArgumentError("delta_det: expected k(k-1)/2 distances");
    std::vector<long double> m(k * k, 0.0L);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const long double d = distances[pair_index(i, j, k)];
            if (!(d >= 0)) throw ArgumentError("delta_det: distances must be >= 0");
            m[i * k + j] = m[j * k + i] = d * d;
        }
    return static_cast<double>(detail::lu_determinant(std::move(m), k));
}

inline double delta_det(const MetricQuadruple& q) { return delta_det(q.distances(), 4); }

/// R = sqrt(-Delta / (2 D)). Throws IllConditionedError for flat tetrahedra (|D| <= rel * diam^6) and
/// DomainError when the radicand is negative (distances not realizable in 3-space).
inline double circumradius(const MetricQuadruple& q, double rel = 1e-12)
{
    const double D = cayley_menger_det(q);
    if (std::abs(D) <= flat_threshold(q, rel)) throw IllConditionedError("circumradius: degenerate tetrahedron");
    const double r2 = -delta_det(q) / (2.0 * D);
    if (!(r2 >= 0)) throw DomainError("circumradius: inconsistent distances", r2);
    return std::sqrt(r2);
}

/// Whether five points (ten distances) lie on a common sphere or plane: |Delta| <= tol * d_max^10.
inline bool cospherical_test(std::span<const double> distances, double tol = 1e-9)
{
    if (distances.size() != 10) throw ArgumentError("cospherical_test: expected 10 distances");
    double dmax = 0.0;
    for (double d : distances) dmax = std::max(dmax, d);
    if (dmax == 0.0) return true;
    return std::abs(delta_det(distances, 5)) <= tol * std::pow(dmax, 10);
}

} // namespace metcurv

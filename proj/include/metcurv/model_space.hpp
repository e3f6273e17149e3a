#pragma once

// Triangle geometry in the model surfaces S_k of constant curvature k: the plane (k = 0),
// the sphere of radius 1/sqrt(k) (k > 0) and the hyperbolic plane (k < 0).
// The laws of cosines are evaluated in haversine form so that they stay accurate for thin
// triangles and pass continuously through k = 0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "errors.hpp"

namespace metcurv {

namespace detail {

inline double hav(double x)
{
    const double s = std::sin(0.5 * x);
    return s * s;
}

inline double sinh_half_sq(double x)
{
    const double s = std::sinh(0.5 * x);
    return s * s;
}

} // namespace detail

/// Diameter of S_k: pi / sqrt(k) for k > 0, infinite otherwise.
inline double model_diameter(double kappa)
{
    return kappa > 0 ? std::numbers::pi / std::sqrt(kappa) : std::numeric_limits<double>::infinity();
}

/// Third side of the triangle in S_k with sides b, c enclosing the angle alpha.
inline double model_side(double kappa, double b, double c, double alpha)
{
    if (!(b >= 0 && c >= 0)) throw DomainError("model_side: sides must be >= 0");
    if (!(alpha >= 0 && alpha <= std::numbers::pi)) throw DomainError("model_side: angle outside [0, pi]", alpha);
    if (kappa > 0) {
        const double diam = model_diameter(kappa);
        if (b > diam || c > diam) throw DomainError("model_side: side exceeds the diameter of the model sphere");
        const double s = std::sqrt(kappa);
        const double h = detail::hav(s * (b - c)) + std::sin(s * b) * std::sin(s * c) * detail::hav(alpha);
        return 2.0 * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0))) / s;
    }
    if (kappa < 0) {
        const double s = std::sqrt(-kappa);
        const double h =
            detail::sinh_half_sq(s * (b - c)) + std::sinh(s * b) * std::sinh(s * c) * detail::hav(alpha);
        return 2.0 * std::asinh(std::sqrt(std::max(h, 0.0))) / s;
    }
    const double d = b - c;
    return std::sqrt(d * d + 4.0 * b * c * detail::hav(alpha));
}

/// Angle between sides b and c of the triangle in S_k whose third side is a (inverse law of cosines).
/// Throws DomainError when (a, b, c) is not the side triple of a triangle in S_k.
inline double model_angle(double kappa, double b, double c, double a, double tol = 1e-9)
{
    if (!(a >= 0 && b > 0 && c > 0)) throw DomainError("model_angle: sides adjacent to the angle must be > 0");
    double h = 0.0;
    if (kappa > 0) {
        const double s = std::sqrt(kappa);
        const double diam = model_diameter(kappa);
        if (a > diam * (1 + tol) || b > diam * (1 + tol) || c > diam * (1 + tol))
            throw DomainError("model_angle: side exceeds the diameter of the model sphere");
        if (a + b + c > 2.0 * diam * (1 + tol))
            throw DomainError("model_angle: perimeter exceeds a great circle");
        const double den = std::sin(s * b) * std::sin(s * c);
        if (den <= 0) throw DomainError("model_angle: antipodal vertex, angle undefined");
        h = (detail::hav(s * a) - detail::hav(s * (b - c))) / den;
    } else if (kappa < 0) {
        const double s = std::sqrt(-kappa);
        h = (detail::sinh_half_sq(s * a) - detail::sinh_half_sq(s * (b - c))) / (std::sinh(s * b) * std::sinh(s * c));
    } else {
        const double d = b - c;
        h = (a * a - d * d) / (4.0 * b * c);
    }
    if (h < -tol || h > 1.0 + tol) throw DomainError("model_angle: sides do not form a triangle in S_k", h);
    return 2.0 * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0)));
}

} // namespace metcurv

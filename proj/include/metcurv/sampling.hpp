#pragma once

// Quasi-uniform point samples of the built-in analytic surfaces.

#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "surface.hpp"

namespace metcurv {

struct SphereSpec
{
    double R = 1.0;
};
struct TorusSpec
{
    double R = 2.0, r = 1.0;
};
struct PlaneSpec
{
    double w = 1.0, h = 1.0;
};
struct CylinderSpec
{
    double R = 1.0, h = 2.0;
};

using SurfaceSpec = std::variant<SphereSpec, TorusSpec, PlaneSpec, CylinderSpec>;

namespace detail {

// Additive recurrence with the plastic-number constants (Roberts' R2 sequence).
inline std::pair<double, double> r2_point(std::size_t i, double shift_a, double shift_b)
{
    constexpr double g = 1.32471795724474602596;
    constexpr double a1 = 1.0 / g, a2 = 1.0 / (g * g);
    const double k = static_cast<double>(i) + 0.5;
    double x = shift_a + a1 * k, y = shift_b + a2 * k;
    return {x - std::floor(x), y - std::floor(y)};
}

// Random rotation matrix (rows) from a uniformly random unit quaternion.
inline std::array<Vec3, 3> random_rotation(std::mt19937_64& rng)
{
    std::normal_distribution<double> n01;
    double q[4];
    double s = 0;
    for (double& c : q) {
        c = n01(rng);
        s += c * c;
    }
    s = std::sqrt(s);
    for (double& c : q) c /= s;
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    return {Vec3{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
            Vec3{2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
            Vec3{2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}};
}

} // namespace detail

inline std::shared_ptr<const AnalyticSurface> make_surface(const SurfaceSpec& spec)
{
    return std::visit(
        [](const auto& s) -> std::shared_ptr<const AnalyticSurface> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SphereSpec>) return std::make_shared<Sphere>(s.R);
            else if constexpr (std::is_same_v<T, TorusSpec>) return std::make_shared<Torus>(s.R, s.r);
            else if constexpr (std::is_same_v<T, PlaneSpec>) return std::make_shared<Plane>();
            else return std::make_shared<Cylinder>(s.R);
        },
        spec);
}

/// n quasi-uniform points with intrinsic distances of the surface. The sphere uses a randomly rotated
/// Fibonacci lattice; the other surfaces use a shifted R2 low-discrepancy sequence (area-weighted on the torus).
inline SurfaceSample sample_analytic(const SurfaceSpec& spec, std::size_t n, std::uint64_t seed)
{
    if (n < 4) throw ArgumentError("sample_analytic: need n >= 4");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    constexpr double tau = 2.0 * std::numbers::pi;
    std::vector<SurfacePoint> pts;
    pts.reserve(n);

    if (const auto* s = std::get_if<SphereSpec>(&spec)) {
        if (!(s->R > 0)) throw ArgumentError("sample_analytic: sphere radius must be > 0");
        const auto rot = detail::random_rotation(rng);
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (std::size_t i = 0; i < n; ++i) {
            const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden * static_cast<double>(i);
            const Vec3 p{rho * std::cos(phi), rho * std::sin(phi), z};
            pts.push_back(Sphere::from_unit({dot(rot[0], p), dot(rot[1], p), dot(rot[2], p)}));
        }
        return SurfaceSample::from_analytic(make_surface(spec), std::move(pts));
    }

    const double sa = u01(rng), sb = u01(rng);
    if (const auto* t = std::get_if<TorusSpec>(&spec)) {
        if (!(t->r > 0 && t->R > t->r)) throw ArgumentError("sample_analytic: torus needs R > r > 0");
        const double e = t->r / t->R;
        for (std::size_t i = 0; i < n; ++i) {
            const auto [a, b] = detail::r2_point(i, sa, sb);
            // invert the area CDF of the tube angle: (v + e sin v) / 2pi = b, v in [-pi, pi)
            const double target = tau * b - std::numbers::pi;
            double v = target;
            for (int it = 0; it < 50; ++it) {
                const double f = v + e * std::sin(v) - target;
                v -= f / (1.0 + e * std::cos(v));
                if (std::abs(f) < 1e-15) break;
            }
            pts.push_back({tau * a - std::numbers::pi, v});
        }
    } else if (const auto* p = std::get_if<PlaneSpec>(&spec)) {
        if (!(p->w > 0 && p->h > 0)) throw ArgumentError("sample_analytic: plane extent must be > 0");
        for (std::size_t i = 0; i < n; ++i) {
            const auto [a, b] = detail::r2_point(i, sa, sb);
            pts.push_back({p->w * a, p->h * b});
        }
    } else {
        const auto& c = std::get<CylinderSpec>(spec);
        if (!(c.R > 0 && c.h > 0)) throw ArgumentError("sample_analytic: cylinder extent must be > 0");
        for (std::size_t i = 0; i < n; ++i) {
            const auto [a, b] = detail::r2_point(i, sa, sb);
            pts.push_back({tau * a - std::numbers::pi, c.h * b});
        }
    }
    return SurfaceSample::from_analytic(make_surface(spec), std::move(pts));
}

} // namespace metcurv

#pragma once

// Curvature of a surface sample at a point from shrinking quadruples, angle measure from distances
// along two geodesics, and comparison-triangle checks against a model surface.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "detail/stats.hpp"
#include "embedding_curvature.hpp"
#include "errors.hpp"
#include "metric_core.hpp"
#include "model_space.hpp"
#include "surface.hpp"

namespace metcurv {

struct QuadrupleDrawOptions
{
    bool sd_only = true;
    double min_flat_angle = 1e-3; ///< reject quadruples with a thinner triangle in their flat realization
    double sd_defect = 0.02;      ///< relative collinearity defect accepted for graph-geodesic triples
    std::size_t max_attempts_per_quad = 50;
};

/// Quadruples of diameter <= scale near point p. sd-quads are labeled (1, 2, 3) along the geodesic with
/// p as the middle point 2 and the apex as 4.
struct QuadrupleDraw
{
    std::vector<MetricQuadruple> quads;
    std::vector<std::string> warnings;
};

namespace detail {

/// Smallest Euclidean triangle angle over the faces of q, ignoring the face listed in skip (if any).
inline double min_flat_angle(const MetricQuadruple& q, std::optional<std::array<std::size_t, 3>> skip = {})
{
    double mn = std::numbers::pi;
    for (std::size_t out = 0; out < 4; ++out) {
        std::array<std::size_t, 3> t{};
        std::size_t k = 0;
        for (std::size_t i = 0; i < 4; ++i)
            if (i != out) t[k++] = i;
        if (skip) {
            auto s = *skip;
            std::sort(s.begin(), s.end());
            if (s == t) continue;
        }
        for (std::size_t a = 0; a < 3; ++a) {
            const std::size_t v = t[a], x = t[(a + 1) % 3], y = t[(a + 2) % 3];
            try {
                mn = std::min(mn, model_angle(0.0, q.d(v, x), q.d(v, y), q.d(x, y), 1e-9));
            } catch (const DomainError&) {
                return 0.0;
            }
        }
    }
    return mn;
}

inline std::optional<MetricQuadruple> quad_from_distances(const std::array<double, 6>& d)
{
    try {
        return MetricQuadruple(d);
    } catch (const Error&) {
        return std::nullopt;
    }
}

} // namespace detail

inline QuadrupleDraw draw_quadruples(const SurfaceSample& sample, std::size_t p, double scale, std::size_t count,
                                     std::uint64_t seed, const QuadrupleDrawOptions& opt = {})
{
    if (!(scale > 0)) throw ArgumentError("draw_quadruples: scale must be > 0");
    if (p >= sample.size()) throw ArgumentError("draw_quadruples: point index out of range");
    QuadrupleDraw out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    constexpr double tau = 2.0 * std::numbers::pi;
    const std::array<std::size_t, 3> geo{0, 1, 2};
    auto accept = [&](const MetricQuadruple& q, bool sd) {
        if (q.diameter() > scale * (1 + 1e-12) || q.min_distance() <= 0) return false;
        return detail::min_flat_angle(q, sd ? std::optional(geo) : std::nullopt) >= opt.min_flat_angle;
    };
    const std::size_t max_attempts = count * opt.max_attempts_per_quad;

    if (const auto* surf = sample.surface()) {
        const SurfacePoint c = sample.params()[p];
        for (std::size_t att = 0; att < max_attempts && out.quads.size() < count; ++att) {
            std::array<SurfacePoint, 4> pts;
            if (opt.sd_only) {
                const double a = scale * (0.25 + 0.25 * u01(rng));
                const double b = scale * (0.25 + 0.25 * u01(rng));
                const double h = scale * (0.25 + 0.25 * u01(rng));
                const double phi = tau * u01(rng);
                const double psi = std::numbers::pi * (1.0 / 6.0 + (2.0 / 3.0) * u01(rng));
                pts = {surf->exp(c, phi + std::numbers::pi, a), c, surf->exp(c, phi, b), surf->exp(c, phi + psi, h)};
            } else {
                for (auto& x : pts) x = surf->exp(c, tau * u01(rng), 0.5 * scale * std::sqrt(u01(rng)));
            }
            std::array<double, 6> d{};
            try {
                for (std::size_t i = 0; i < 4; ++i)
                    for (std::size_t j = i + 1; j < 4; ++j) d[pair_index(i, j, 4)] = surf->distance(pts[i], pts[j]);
            } catch (const DomainError&) {
                continue;
            }
            if (auto q = detail::quad_from_distances(d); q && accept(*q, opt.sd_only)) out.quads.push_back(*q);
        }
    } else {
        const auto row_p = sample.distances_from(p);
        std::vector<std::size_t> ball;
        for (std::size_t j = 0; j < row_p.size(); ++j)
            if (j != p && row_p[j] <= 0.5 * scale) ball.push_back(j);
        if (ball.size() < 3) {
            out.warnings.push_back("fewer than 4 points within scale " + std::to_string(scale));
            return out;
        }
        std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
        for (std::size_t att = 0; att < max_attempts && out.quads.size() < count; ++att) {
            std::array<std::size_t, 4> id{};
            if (opt.sd_only) {
                const std::size_t x = ball[pick(rng)];
                if (row_p[x] < 0.25 * scale) continue;
                const auto row_x = sample.distances_from(x);
                std::vector<std::size_t> ys;
                for (std::size_t y : ball) {
                    if (y == x || row_p[y] < 0.25 * scale) continue;
                    const double span = row_x[y];
                    if (row_x[p] + row_p[y] - span <= opt.sd_defect * span) ys.push_back(y);
                }
                if (ys.empty()) continue;
                const std::size_t y = ys[std::uniform_int_distribution<std::size_t>(0, ys.size() - 1)(rng)];
                const std::size_t z = ball[pick(rng)];
                id = {x, p, y, z};
            } else {
                id = {ball[pick(rng)], ball[pick(rng)], ball[pick(rng)], ball[pick(rng)]};
                if (u01(rng) < 0.25) id[0] = p;
            }
            std::array<double, 6> d{};
            bool distinct = true;
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = i + 1; j < 4; ++j) {
                    if (id[i] == id[j]) distinct = false;
                    d[pair_index(i, j, 4)] = sample.distance(id[i], id[j]);
                }
            if (!distinct) continue;
            if (auto q = detail::quad_from_distances(d); q && accept(*q, opt.sd_only)) out.quads.push_back(*q);
        }
    }
    if (out.quads.size() < count)
        out.warnings.push_back("only " + std::to_string(out.quads.size()) + " of " + std::to_string(count) +
                               " quadruples drawn at scale " + std::to_string(scale));
    return out;
}

struct WaldEstimate
{
    double kappa = std::numeric_limits<double>::quiet_NaN(); ///< median of the admissible roots
    std::size_t quadruple_count = 0;                         ///< quadruples with at least one admissible root
    std::size_t root_count = 0;
    double scale = 0.0;      ///< maximal quadruple diameter used
    double dispersion = 0.0; ///< interquartile range of the per-quadruple roots
    bool skipped = false;
    std::vector<std::string> warnings;
};

struct WaldOptions
{
    std::size_t quads_per_scale = 64;
    bool sd_only = true;
    std::uint64_t seed = 1;
    SolverOptions solver{};
    QuadrupleDrawOptions draw{};
};

/// Per-scale curvature estimates at sample point p. Scales must be decreasing.
inline std::vector<WaldEstimate> wald_curvature_at_point(const SurfaceSample& sample, std::size_t p,
                                                         const std::vector<double>& scales, const WaldOptions& opt = {})
{
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (!(scales[i] < scales[i - 1])) throw ArgumentError("wald_curvature_at_point: scales must be decreasing");
    std::vector<WaldEstimate> out;
    auto draw_opt = opt.draw;
    draw_opt.sd_only = opt.sd_only;
    for (std::size_t si = 0; si < scales.size(); ++si) {
        WaldEstimate est;
        est.scale = scales[si];
        auto draw = draw_quadruples(sample, p, scales[si], opt.quads_per_scale, opt.seed + 7919 * si + 104729 * p, draw_opt);
        est.warnings = std::move(draw.warnings);
        std::vector<double> roots;
        std::size_t multi = 0;
        for (const auto& q : draw.quads) {
            const auto sol = solve_embedding_curvature(q, opt.solver);
            const auto adm = sol.admissible_roots();
            if (adm.empty()) continue;
            ++est.quadruple_count;
            if (adm.size() > 1) ++multi;
            for (const auto& r : adm) roots.push_back(r.kappa);
        }
        if (opt.sd_only && multi > 0)
            est.warnings.push_back(std::to_string(multi) + " sd-quads returned more than one admissible root");
        est.root_count = roots.size();
        if (roots.empty()) {
            est.skipped = true;
            est.warnings.push_back("no admissible roots at scale " + std::to_string(scales[si]));
        } else {
            est.kappa = detail::median(roots);
            est.dispersion = detail::iqr(roots);
        }
        out.push_back(std::move(est));
    }
    return out;
}

// ---------------------------------------------------------------------------------------------------------------
// Points along geodesics

namespace detail {

/// A point at arc length x from a along the (approximate) geodesic towards b.
struct GeodesicPoint
{
    std::optional<SurfacePoint> param; ///< analytic samples
    std::size_t vertex = 0;            ///< mesh samples
    double arclength = 0.0;            ///< actual distance from a
};

inline GeodesicPoint point_along(const SurfaceSample& s, std::size_t a, std::size_t b, double x,
                                 const std::vector<std::size_t>* path = nullptr)
{
    if (const auto* surf = s.surface()) {
        const auto lg = surf->log(s.params()[a], s.params()[b]);
        return {surf->exp(s.params()[a], lg.heading, x), 0, x};
    }
    if (s.kind() != SurfaceSample::Kind::mesh)
        throw ArgumentError("geodesic points need an analytic or mesh sample");
    std::vector<std::size_t> own;
    if (!path) {
        own = s.shortest_path(a, b);
        path = &own;
    }
    double acc = 0.0, best_gap = std::abs(x);
    GeodesicPoint g{std::nullopt, a, 0.0};
    for (std::size_t i = 1; i < path->size(); ++i) {
        acc += detail::distance(s.vertices()[(*path)[i - 1]], s.vertices()[(*path)[i]]);
        if (std::abs(acc - x) < best_gap) {
            best_gap = std::abs(acc - x);
            g = {std::nullopt, (*path)[i], acc};
        }
    }
    return g;
}

inline double between(const SurfaceSample& s, const GeodesicPoint& x, const GeodesicPoint& y)
{
    if (x.param && y.param) return s.surface()->distance(*x.param, *y.param);
    return s.distance(x.vertex, y.vertex);
}

} // namespace detail

struct AngleMeasure
{
    double angle = 0.0;
    std::vector<double> x;      ///< arc lengths actually used
    std::vector<double> ratio;  ///< d(x)/x per scale
    double limit = 0.0;         ///< extrapolated d(x)/x at x -> 0
};

/// Angle at p between the geodesics towards q and r: 2 asin(L/2) with L the x -> 0 limit of d(x)/x,
/// d(x) being the distance between the points at arc length x on both geodesics. The limit is a
/// quadratic Richardson extrapolation of the two smallest scales.
inline AngleMeasure angle_measure(const SurfaceSample& s, std::size_t p, std::size_t q, std::size_t r,
                                  const std::vector<double>& x_values, double monotone_tol = 1e-6)
{
    if (x_values.size() < 2) throw ArgumentError("angle_measure: need at least two scales");
    for (std::size_t i = 1; i < x_values.size(); ++i)
        if (!(x_values[i] < x_values[i - 1] && x_values[i] > 0))
            throw ArgumentError("angle_measure: scales must be positive and decreasing");
    const double reach = std::min(s.distance(p, q), s.distance(p, r));
    if (x_values.front() > reach * (1 + 1e-12)) throw ArgumentError("angle_measure: scale exceeds geodesic length");

    std::vector<std::size_t> path_q, path_r;
    if (s.kind() == SurfaceSample::Kind::mesh) {
        path_q = s.shortest_path(p, q);
        path_r = s.shortest_path(p, r);
    }
    AngleMeasure m;
    for (double x : x_values) {
        const auto a = detail::point_along(s, p, q, x, path_q.empty() ? nullptr : &path_q);
        const auto b = detail::point_along(s, p, r, x, path_r.empty() ? nullptr : &path_r);
        const double len = 0.5 * (a.arclength + b.arclength);
        if (!(len > 0)) throw UnstableEstimateError("angle_measure: scale below the sample resolution");
        m.x.push_back(len);
        m.ratio.push_back(detail::between(s, a, b) / len);
    }
    // the sequence must approach its limit monotonically (up to noise)
    int dir = 0;
    for (std::size_t i = 1; i < m.ratio.size(); ++i) {
        const double step = m.ratio[i] - m.ratio[i - 1];
        if (std::abs(step) <= monotone_tol * std::max(1.0, std::abs(m.ratio[i]))) continue;
        const int sgn = step > 0 ? 1 : -1;
        if (dir != 0 && sgn != dir) throw UnstableEstimateError("angle_measure: d(x)/x is not monotone in x");
        dir = sgn;
    }
    const std::size_t n = m.x.size();
    const double x1 = m.x[n - 2], x2 = m.x[n - 1];
    const double r1 = m.ratio[n - 2], r2 = m.ratio[n - 1];
    m.limit = (x1 * x1 == x2 * x2) ? r2 : (r2 * x1 * x1 - r1 * x2 * x2) / (x1 * x1 - x2 * x2);
    m.angle = 2.0 * std::asin(std::clamp(0.5 * m.limit, 0.0, 1.0));
    return m;
}

// ---------------------------------------------------------------------------------------------------------------
// Comparison triangles

struct RinowWitness
{
    std::size_t p = 0, q = 0, r = 0;
    double s = 0.0, t = 0.0; ///< x at fraction s along pq, y at fraction t along pr
    double measured = 0.0;   ///< d(x, y) in the sample
    double model = 0.0;      ///< the same distance in the comparison triangle of S_k
};

struct RinowReport
{
    double fraction_leq = 0.0; ///< share of tested triangles with d(x,y) <= model + tol
    double fraction_geq = 0.0; ///< share with d(x,y) >= model - tol
    std::size_t tested = 0;
    std::size_t skipped = 0;   ///< triangles too large for S_k or degenerate
    std::vector<RinowWitness> witnesses;
};

struct RinowOptions
{
    double max_side = 0.5;         ///< triangle vertices are drawn within this distance of p
    std::uint64_t seed = 1;
    std::size_t max_witnesses = 16;
};

/// Tallies how often the sample is thinner (<=) or fatter (>=) than comparison triangles in S_k.
inline RinowReport rinow_region_check(const SurfaceSample& s, double kappa, std::size_t triangle_count, double tol,
                                      const RinowOptions& opt = {})
{
    if (s.kind() == SurfaceSample::Kind::matrix)
        throw ArgumentError("rinow_region_check: needs a sample with geodesics (analytic or mesh)");
    RinowReport rep;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick_p(0, s.size() - 1);
    std::size_t leq = 0, geq = 0;
    const std::size_t max_attempts = 20 * triangle_count + 100;
    for (std::size_t att = 0; att < max_attempts && rep.tested + rep.skipped < triangle_count; ++att) {
        const std::size_t p = pick_p(rng);
        const auto ball = s.ball(p, opt.max_side);
        if (ball.size() < 2) continue;
        std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
        const std::size_t q = ball[pick(rng)], r = ball[pick(rng)];
        if (q == r) continue;
        const double pq = s.distance(p, q), pr = s.distance(p, r), qr = s.distance(q, r);
        if (kappa > 0 && pq + pr + qr >= 2.0 * model_diameter(kappa)) {
            ++rep.skipped;
            continue;
        }
        const double sf = u01(rng), tf = u01(rng);
        double model = 0.0, measured = 0.0;
        try {
            const double alpha = model_angle(kappa, pq, pr, qr);
            const auto x = detail::point_along(s, p, q, sf * pq);
            const auto y = detail::point_along(s, p, r, tf * pr);
            measured = detail::between(s, x, y);
            model = model_side(kappa, x.arclength, y.arclength, alpha);
        } catch (const DomainError&) {
            ++rep.skipped;
            continue;
        }
        ++rep.tested;
        const bool le = measured <= model + tol, ge = measured >= model - tol;
        leq += le;
        geq += ge;
        if ((!le || !ge) && rep.witnesses.size() < opt.max_witnesses)
            rep.witnesses.push_back({p, q, r, sf, tf, measured, model});
    }
    if (rep.tested > 0) {
        rep.fraction_leq = static_cast<double>(leq) / static_cast<double>(rep.tested);
        rep.fraction_geq = static_cast<double>(geq) / static_cast<double>(rep.tested);
    }
    return rep;
}

} // namespace metcurv

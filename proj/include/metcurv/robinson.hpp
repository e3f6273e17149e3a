#pragma once

// Rational approximation K(Q) of the embedding curvature of an sd-quad, its error bound, the
// closed forms for symmetric configurations, and per-scale Gauss curvature estimates on samples.
//
// Labels: p1, p2, p3 lie on a geodesic with p2 between them, p4 is the apex. The angles a = <(p1 p2 p4)
// and a' = <(p3 p2 p4) are those of the flat triangles with the same side lengths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "detail/stats.hpp"
#include "embedding_curvature.hpp"
#include "errors.hpp"
#include "metric_core.hpp"
#include "model_space.hpp"
#include "surface.hpp"
#include "wald.hpp"

namespace metcurv {

/// Angle opposite `opp` in the flat triangle with sides a, b, opp.
inline double euclidean_angle(double a, double b, double opp) { return model_angle(0.0, a, b, opp); }

/// A metric quadruple whose points 1, 2, 3 lie on a common geodesic (d13 = d12 + d23 up to a relative defect).
class SdQuad
{
public:
    explicit SdQuad(const MetricQuadruple& q, double rel_tol = 0.02) : q_(q)
    {
        const double d12 = q.d(0, 1), d23 = q.d(1, 2), d13 = q.d(0, 2);
        if (!(d12 > 0 && d23 > 0)) throw ArgumentError("SdQuad: geodesic points must be distinct");
        if (std::abs(d13 - d12 - d23) > rel_tol * d13)
            throw ArgumentError("SdQuad: points 1, 2, 3 are not on a common geodesic");
        if (!strict(d12, q.d(0, 3), q.d(1, 3)) || !strict(d23, q.d(1, 3), q.d(2, 3)))
            throw ArgumentError("SdQuad: apex triangles must be non-degenerate");
    }

    /// Relabels q so that its best geodesic triple becomes (1, 2, 3); nullopt when q has none within rel_tol.
    static std::optional<SdQuad> find(const MetricQuadruple& q, double rel_tol = 0.02)
    {
        std::optional<SdQuad> best;
        double best_defect = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < 4; ++m)
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t b = a + 1; b < 4; ++b) {
                    if (a == m || b == m) continue;
                    const double defect = (q.d(a, m) + q.d(m, b) - q.d(a, b)) / q.d(a, b);
                    if (std::abs(defect) > rel_tol || std::abs(defect) >= best_defect) continue;
                    try {
                        best = SdQuad(q.permuted({a, m, b, 6 - a - b - m}), rel_tol);
                        best_defect = std::abs(defect);
                    } catch (const ArgumentError&) {
                    }
                }
        return best;
    }

    const MetricQuadruple& quad() const { return q_; }
    double d12() const { return q_.d(0, 1); }
    double d13() const { return q_.d(0, 2); }
    double d14() const { return q_.d(0, 3); }
    double d23() const { return q_.d(1, 2); }
    double d24() const { return q_.d(1, 3); }
    double d34() const { return q_.d(2, 3); }

    double angle2() const { return euclidean_angle(d12(), d24(), d14()); }
    double angle2p() const { return euclidean_angle(d23(), d24(), d34()); }

private:
    static bool strict(double a, double b, double c) { return a + b > c && a + c > b && b + c > a; }

    MetricQuadruple q_;
};

struct RobinsonResult
{
    double K = 0.0;
    double error_bound = 0.0;             ///< 4 K^2 diam^2 / lambda
    double error_bound_fixed_point = 0.0; ///< same with |kappa| <= |K| + error_bound fed back once
    double lambda = 0.0;
    double S = 0.0; ///< larger semi-perimeter of the two apex triangles
};

/// Conditioning measure lambda(Q) = d24 (d12 sin a + d23 sin a') / S^2; scale invariant, zero only when both
/// apex triangles are flat.
inline double robinson_lambda(const SdQuad& q)
{
    const double p = 0.5 * (q.d12() + q.d14() + q.d24());
    const double pp = 0.5 * (q.d23() + q.d34() + q.d24());
    const double S = std::max(p, pp);
    return q.d24() * (q.d12() * std::sin(q.angle2()) + q.d23() * std::sin(q.angle2p())) / (S * S);
}

inline RobinsonResult robinson_K(const SdQuad& q, double lambda_tol = 1e-12)
{
    RobinsonResult r;
    const double a = q.angle2(), ap = q.angle2p();
    const double p = 0.5 * (q.d12() + q.d14() + q.d24());
    const double pp = 0.5 * (q.d23() + q.d34() + q.d24());
    r.S = std::max(p, pp);
    r.lambda = robinson_lambda(q);
    if (!(r.lambda > lambda_tol)) throw IllConditionedError("robinson_K: quadruple is too close to linear");
    const double sa = std::sin(a), sap = std::sin(ap);
    r.K = 6.0 * (std::cos(a) + std::cos(ap)) / (q.d24() * (q.d12() * sa * sa + q.d23() * sap * sap));
    const double diam2 = q.quad().diameter() * q.quad().diameter();
    r.error_bound = 4.0 * r.K * r.K * diam2 / r.lambda;
    const double k1 = std::abs(r.K) + r.error_bound;
    r.error_bound_fixed_point = 4.0 * k1 * k1 * diam2 / r.lambda;
    return r;
}

/// Distance-only form for d12 = d23.
inline double robinson_K_isoceles(const SdQuad& q, double rel_tol = 1e-9)
{
    if (std::abs(q.d12() - q.d23()) > rel_tol * std::max(q.d12(), q.d23()))
        throw ArgumentError("robinson_K_isoceles: needs d12 = d23");
    const double a2 = q.d12() * q.d12(), b2 = q.d24() * q.d24();
    const double x2 = q.d14() * q.d14(), y2 = q.d34() * q.d34();
    const double u = a2 + b2 - x2, v = a2 + b2 - y2;
    const double den = 8.0 * a2 * b2 - u * u - v * v;
    if (den == 0.0) throw IllConditionedError("robinson_K_isoceles: quadruple is linear");
    return 12.0 * (2.0 * a2 + 2.0 * b2 - x2 - y2) / den;
}

struct RightCaseK
{
    double angle_form = 0.0;    ///< 6 cos a / (d12^2 (1 + sin^2 a))
    double distance_form = 0.0; ///< 12 (2 d^2 - d14^2) / (4 d^4 + 4 d^2 d14^2 - d14^4)
};

/// Closed forms for d12 = d23 = d24 and d34^2 = 2 d12^2 (the angle a' is then a right angle).
inline RightCaseK robinson_K_right(const SdQuad& q, double rel_tol = 1e-9)
{
    const double d = q.d12();
    if (std::abs(q.d23() - d) > rel_tol * d || std::abs(q.d24() - d) > rel_tol * d ||
        std::abs(q.d34() * q.d34() - 2.0 * d * d) > rel_tol * 2.0 * d * d)
        throw ArgumentError("robinson_K_right: needs d12 = d23 = d24 and d34^2 = 2 d12^2");
    RightCaseK r;
    const double a = q.angle2(), s = std::sin(a);
    r.angle_form = 6.0 * std::cos(a) / (d * d * (1.0 + s * s));
    const double d2 = d * d, x2 = q.d14() * q.d14();
    r.distance_form = 12.0 * (2.0 * d2 - x2) / (4.0 * d2 * d2 + 4.0 * d2 * x2 - x2 * x2);
    return r;
}

struct RobinsonSample
{
    MetricQuadruple quad;
    RobinsonResult result;
};

struct ConvergenceRow
{
    double scale = 0.0;
    double median_K = std::numeric_limits<double>::quiet_NaN();
    double iqr = std::numeric_limits<double>::quiet_NaN();
    double max_error_bound = std::numeric_limits<double>::quiet_NaN();
    std::size_t n_quads = 0;   ///< quadruples above the conditioning floor
    std::size_t excluded = 0;  ///< below the floor or ill-conditioned
    std::vector<RobinsonSample> samples;
    std::vector<std::string> warnings;
};

struct GaussEstimateOptions
{
    std::size_t quads_per_scale = 64;
    double lambda_floor = 0.05;
    std::uint64_t seed = 1;
    QuadrupleDrawOptions draw{};
};

struct ConvergenceTable
{
    std::vector<ConvergenceRow> rows;
    bool bound_shrinks = true; ///< max_error_bound decreases with the scale
};

/// Median K over sd-quads at each (decreasing) scale around sample point p.
inline ConvergenceTable gauss_estimate(const SurfaceSample& sample, std::size_t p, const std::vector<double>& scales,
                                       const GaussEstimateOptions& opt = {})
{
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (!(scales[i] < scales[i - 1])) throw ArgumentError("gauss_estimate: scales must be decreasing");
    ConvergenceTable table;
    auto draw_opt = opt.draw;
    draw_opt.sd_only = true;
    for (std::size_t si = 0; si < scales.size(); ++si) {
        ConvergenceRow row;
        row.scale = scales[si];
        auto draw = draw_quadruples(sample, p, scales[si], opt.quads_per_scale, opt.seed + 7919 * si + 104729 * p, draw_opt);
        row.warnings = std::move(draw.warnings);
        std::vector<double> ks;
        double max_bound = 0.0;
        for (const auto& q : draw.quads) {
            try {
                const SdQuad sd(q, draw_opt.sd_defect);
                const auto r = robinson_K(sd);
                if (r.lambda < opt.lambda_floor) {
                    ++row.excluded;
                    continue;
                }
                ks.push_back(r.K);
                max_bound = std::max(max_bound, r.error_bound);
                row.samples.push_back({q, r});
            } catch (const Error&) {
                ++row.excluded;
            }
        }
        row.n_quads = ks.size();
        if (ks.empty()) {
            row.warnings.push_back("no usable sd-quads at scale " + std::to_string(scales[si]));
        } else {
            row.median_K = detail::median(ks);
            row.iqr = detail::iqr(ks);
            row.max_error_bound = max_bound;
        }
        table.rows.push_back(std::move(row));
    }
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const double a = table.rows[i - 1].max_error_bound, b = table.rows[i].max_error_bound;
        if (!(b < a)) table.bound_shrinks = false;
    }
    return table;
}

/// CSV with header scale,median_K,iqr,max_error_bound,n_quads.
inline void write_convergence_csv(std::ostream& os, const ConvergenceTable& t)
{
    os << "scale,median_K,iqr,max_error_bound,n_quads\n";
    const auto flags = os.flags();
    const auto prec = os.precision(17);
    for (const auto& r : t.rows)
        os << r.scale << ',' << r.median_K << ',' << r.iqr << ',' << r.max_error_bound << ',' << r.n_quads << '\n';
    os.precision(prec);
    os.flags(flags);
}

} // namespace metcurv

#pragma once

// Embedding (Wald) curvature of a metric quadruple: the curvature k of the model surface S_k
// into which the quadruple embeds isometrically. Three regimes:
//   k = 0 : D(Q) = 0                       (Cayley-Menger determinant)
//   k < 0 : det(cosh(sqrt(-k) d_ij)) = 0
//   k > 0 : det(cos(sqrt(k) d_ij)) = 0, sqrt(k) d_ij <= pi, principal 3-minors >= 0
//
// Near k = 0 both trigonometric determinants behave like (k/2)^3 D(Q). The solver scans the
// normalized residual r(k) / ((k/2)^3 diam^6), which is continuous across k = 0 where it equals
// D(Q) / diam^6.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "detail/linalg.hpp"
#include "metric_core.hpp"
#include "model_space.hpp"
#include "root_finding.hpp"

namespace metcurv {

enum class CurvatureCase
{
    flat,
    spherical,
    hyperbolic,
};

inline const char* to_string(CurvatureCase c)
{
    switch (c) {
    case CurvatureCase::flat: return "flat";
    case CurvatureCase::spherical: return "spherical";
    case CurvatureCase::hyperbolic: return "hyperbolic";
    }
    return "?";
}

struct CurvatureRoot
{
    double kappa = 0.0;
    CurvatureCase kind = CurvatureCase::flat;
    double residual = 0.0;     ///< determinant of the regime at kappa (D(Q) for the flat case)
    bool admissible = true;    ///< distance bound and principal-minor conditions satisfied
    bool tangential = false;   ///< found as a touching zero without sign change: low confidence
};

struct CurvatureSolution
{
    std::vector<CurvatureRoot> roots; ///< ascending in kappa
    double scan_min = 0.0;
    double scan_max = 0.0;
    std::size_t scan_resolution = 0;
    std::vector<std::string> warnings;

    std::vector<CurvatureRoot> admissible_roots() const
    {
        std::vector<CurvatureRoot> out;
        for (const auto& r : roots)
            if (r.admissible) out.push_back(r);
        return out;
    }
};

namespace detail {

/// E_ij = 1 - f(d_ij) for the trigonometric matrix f(d_ij) with f = cos(s d) or cosh(s d).
inline std::array<double, 16> one_minus_matrix(const MetricQuadruple& q, double kappa)
{
    std::array<double, 16> e{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j) continue;
            const double d = q.d(i, j);
            if (kappa > 0) {
                const double s = std::sin(0.5 * std::sqrt(kappa) * d);
                e[i * 4 + j] = 2.0 * s * s;
            } else {
                const double s = std::sinh(0.5 * std::sqrt(-kappa) * d);
                e[i * 4 + j] = -2.0 * s * s;
            }
        }
    return e;
}

inline std::array<double, 16> trig_matrix(const MetricQuadruple& q, double kappa)
{
    auto e = one_minus_matrix(q, kappa);
    std::array<double, 16> m{};
    for (std::size_t i = 0; i < 16; ++i) m[i] = 1.0 - e[i];
    return m;
}

inline double trig_residual(const MetricQuadruple& q, double kappa)
{
    return det_ones_minus(one_minus_matrix(q, kappa), 4);
}

inline double min_principal_minor3(const std::array<double, 16>& m)
{
    double mn = std::numeric_limits<double>::infinity();
    for (std::size_t skip = 0; skip < 4; ++skip) {
        std::array<std::size_t, 3> idx{};
        std::size_t t = 0;
        for (std::size_t i = 0; i < 4; ++i)
            if (i != skip) idx[t++] = i;
        mn = std::min(mn, principal_minor(m, 4, idx));
    }
    return mn;
}

} // namespace detail

/// D(Q); zero certifies embedding curvature 0.
inline double flat_residual(const MetricQuadruple& q) { return cayley_menger_det(q); }

struct SphericalResidual
{
    double value = 0.0;        ///< det(cos(sqrt(k) d_ij))
    bool distances_ok = false; ///< sqrt(k) d_ij <= pi for all six distances
    bool minors_ok = false;    ///< every principal 3x3 minor >= -minor_tol
    double min_minor = 0.0;

    bool admissible() const { return distances_ok && minors_ok; }
};

inline SphericalResidual spherical_residual(const MetricQuadruple& q, double kappa, double minor_tol = 1e-9)
{
    if (!(kappa > 0)) throw ArgumentError("spherical_residual: kappa must be > 0");
    SphericalResidual r;
    r.value = detail::trig_residual(q, kappa);
    r.distances_ok = std::sqrt(kappa) * q.diameter() <= std::numbers::pi * (1 + 1e-12);
    r.min_minor = detail::min_principal_minor3(detail::trig_matrix(q, kappa));
    r.minors_ok = r.min_minor >= -minor_tol;
    return r;
}

/// det(cosh(sqrt(-k) d_ij)).
inline double hyperbolic_residual(const MetricQuadruple& q, double kappa)
{
    if (!(kappa < 0)) throw ArgumentError("hyperbolic_residual: kappa must be < 0");
    return detail::trig_residual(q, kappa);
}

/// Residual of the regime selected by the sign of kappa (D(Q) at kappa = 0).
inline double embedding_residual(const MetricQuadruple& q, double kappa)
{
    if (kappa == 0.0) return flat_residual(q);
    return detail::trig_residual(q, kappa);
}

/// Scale-free residual r(k) / ((k/2)^3 diam^6), continuous through k = 0 where it equals D(Q)/diam^6.
inline double normalized_residual(const MetricQuadruple& q, double kappa)
{
    const double d6 = std::pow(q.diameter(), 6);
    if (kappa == 0.0) return flat_residual(q) / d6;
    const double t = 0.5 * kappa;
    return embedding_residual(q, kappa) / (t * t * t * d6);
}

struct SolverOptions
{
    std::optional<double> kappa_min;  ///< default -(pi/diam)^2
    std::optional<double> kappa_max;  ///< default +(pi/diam)^2
    std::size_t n_steps = 512;
    double tol = 1e-12;               ///< on the normalized residual
    double flat_rel = 1e-12;          ///< |D| <= flat_rel * diam^6 counts as D = 0
    double tangent_tol = 1e-12;       ///< touching zeros below this (normalized) are reported, flagged tangential
    double minor_tol = 1e-9;
    bool keep_inadmissible = false;   ///< also report roots failing the spherical constraints
    int max_iter = 80;
};

namespace detail {

inline CurvatureRoot make_root(const MetricQuadruple& q, double kappa, const SolverOptions& opt)
{
    CurvatureRoot r;
    r.kappa = kappa;
    if (kappa > 0) {
        r.kind = CurvatureCase::spherical;
        const auto s = spherical_residual(q, kappa, opt.minor_tol);
        r.residual = s.value;
        r.admissible = s.admissible();
    } else if (kappa < 0) {
        r.kind = CurvatureCase::hyperbolic;
        r.residual = hyperbolic_residual(q, kappa);
        r.admissible = min_principal_minor3(trig_matrix(q, kappa)) >= -opt.minor_tol;
    } else {
        r.kind = CurvatureCase::flat;
        r.residual = flat_residual(q);
        r.admissible = true;
    }
    return r;
}

/// Golden-section minimization of |f| on [a, b].
template <class F>
double minimize_abs(F&& f, double a, double b, int iters = 80)
{
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = std::abs(f(c)), fd = std::abs(f(d));
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = std::abs(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = std::abs(f(d));
        }
    }
    return fc < fd ? c : d;
}

/// Vertex of the extremum of a smooth f near k: repeated three-point parabola fits with shrinking spacing.
/// Near a double root f itself is swamped by rounding, but its curvature at spacing h is not.
template <class F>
double refine_extremum(F&& f, double k, double h, double lo, double hi)
{
    for (int it = 0; it < 40; ++it) {
        const double fm = f(k - h), f0 = f(k), fp = f(k + h);
        const double den = fm - 2.0 * f0 + fp;
        const double noise = std::max(1e-13 * std::max({std::abs(fm), std::abs(f0), std::abs(fp)}), 1e-15);
        if (std::abs(den) <= noise) break;
        const double step = std::clamp(h * (fm - fp) / (2.0 * den), -h, h);
        k = std::clamp(k + step, lo, hi);
        if (std::abs(step) < 0.25 * h) h *= 0.25;
        if (h < 1e-12 * std::max(1.0, std::abs(k))) break;
    }
    return k;
}

} // namespace detail

/// All embedding curvatures of a non-degenerate quadruple: grid scan of the normalized residual,
/// bisection of every sign change, a flat root when D(Q) vanishes, and touching zeros flagged as
/// tangential. An empty root set is a legitimate outcome.
inline CurvatureSolution solve_embedding_curvature(const MetricQuadruple& q, const SolverOptions& opt = {})
{
    if (q.min_distance() <= 0.0) throw ArgumentError("solve_embedding_curvature: degenerate quadruple (zero distance)");
    if (opt.n_steps < 2) throw ArgumentError("solve_embedding_curvature: need at least 2 grid steps");

    const double cap = std::pow(std::numbers::pi / q.diameter(), 2);
    CurvatureSolution sol;
    sol.scan_min = opt.kappa_min.value_or(-cap);
    sol.scan_max = opt.kappa_max.value_or(cap);
    sol.scan_resolution = opt.n_steps;
    if (!(sol.scan_min < sol.scan_max)) throw ArgumentError("solve_embedding_curvature: empty scan range");

    const bool flat = std::abs(flat_residual(q)) <= flat_threshold(q, opt.flat_rel);
    auto g = [&](double k) {
        if (k == 0.0 && flat) return 0.0;
        return normalized_residual(q, k);
    };

    const auto grid = uniform_grid(sol.scan_min, sol.scan_max, opt.n_steps);
    std::vector<double> val(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) val[i] = g(grid[i]);

    std::vector<CurvatureRoot> found;
    auto push = [&](double k, bool tangential) {
        auto r = detail::make_root(q, k, opt);
        r.tangential = tangential;
        found.push_back(r);
    };

    if (flat && sol.scan_min <= 0.0 && sol.scan_max >= 0.0) push(0.0, false);

    for (std::size_t i = 0; i < grid.size(); ++i)
        if (val[i] == 0.0 && grid[i] != 0.0) push(grid[i], false);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double a = val[i], b = val[i + 1];
        if (a != 0.0 && b != 0.0 && (a < 0) != (b < 0)) push(bisect(g, grid[i], grid[i + 1], opt.tol, opt.max_iter).x, false);
    }

    // Touching zeros: grid-local minima of |g| with no sign change nearby.
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double a = val[i - 1], m = val[i], b = val[i + 1];
        if (m == 0.0 || a == 0.0 || b == 0.0) continue;
        if ((a < 0) != (m < 0) || (m < 0) != (b < 0)) continue;
        if (!(std::abs(m) <= std::abs(a) && std::abs(m) <= std::abs(b))) continue;
        double k = detail::minimize_abs(g, grid[i - 1], grid[i + 1]);
        k = detail::refine_extremum(g, k, 0.25 * (grid[i + 1] - grid[i - 1]), grid[i - 1], grid[i + 1]);
        if (std::abs(g(k)) <= opt.tangent_tol && !(flat && std::abs(k) * q.diameter() * q.diameter() < 1e-6))
            push(k, true);
    }

    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.kappa < y.kappa; });
    for (const auto& r : found)
        if (r.admissible || opt.keep_inadmissible) sol.roots.push_back(r);
    return sol;
}

/// Whether the quadruple, realized in S_k, has a vertex p with angle(q,p,r) + angle(q,p,s) + angle(s,p,r) = 2 pi,
/// i.e. a vertex lying inside the triangle of the other three. Throws DomainError when the quadruple does not
/// embed in S_k.
inline bool is_planar_quadruple(const MetricQuadruple& q, double kappa, double tol = 1e-6, double residual_tol = 1e-6)
{
    const bool embeds = kappa == 0.0 ? std::abs(flat_residual(q)) <= flat_threshold(q, residual_tol)
                                     : std::abs(normalized_residual(q, kappa)) <= residual_tol;
    if (!embeds) throw DomainError("is_planar_quadruple: quadruple does not embed in S_k", kappa);
    for (std::size_t p = 0; p < 4; ++p) {
        std::array<std::size_t, 3> o{};
        std::size_t t = 0;
        for (std::size_t i = 0; i < 4; ++i)
            if (i != p) o[t++] = i;
        double sum = 0.0;
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = a + 1; b < 3; ++b)
                sum += model_angle(kappa, q.d(p, o[a]), q.d(p, o[b]), q.d(o[a], o[b]));
        if (std::abs(sum - 2.0 * std::numbers::pi) <= tol) return true;
    }
    return false;
}

/// classify_quadruple with the planarity flag evaluated in S_k.
inline QuadrupleClass classify_with_planarity(const MetricQuadruple& q, double tol, double kappa)
{
    auto c = classify_quadruple(q, tol);
    if (!c.is_linear && !c.is_degenerate) c.is_planar = is_planar_quadruple(q, kappa);
    return c;
}

} // namespace metcurv

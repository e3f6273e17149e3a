#pragma once

// Metric curvature of sampled curves: Menger (inverse circumradius of three points), Alt (its limit at a
// point) and Haantjes (from the excess of arc length over chord). Templated on the floating type so that
// convergence studies at very fine spacing can run in long double.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace metcurv {

/// 1 / circumradius of a triangle with sides a, b, c (Heron with Kahan's ordering). Zero for collinear points.
template <class Real = double>
Real menger_curvature(Real a, Real b, Real c, Real rel_tol = Real(1e-12))
{
    if (!(a >= 0 && b >= 0 && c >= 0)) throw DomainError("menger_curvature: sides must be >= 0");
    std::array<Real, 3> s{a, b, c};
    std::sort(s.begin(), s.end(), std::greater<>());
    const Real x = s[0], y = s[1], z = s[2];
    if (z == 0) {
        if (x - y > rel_tol * x) throw DomainError("menger_curvature: triangle inequality violated");
        return Real(0);
    }
    const Real excess = z - (x - y);
    if (excess < -rel_tol * x) throw DomainError("menger_curvature: triangle inequality violated");
    const Real prod = (x + (y + z)) * std::max(excess, Real(0)) * (z + (x - y)) * (x + (y - z));
    return std::sqrt(prod) / (a * b * c);
}

/// Ordered curve samples with a chord metric. Chords default to Euclidean distances between the points;
/// an explicit chord matrix models curves in another ambient metric.
template <class Real = double>
class PolylineCurve
{
public:
    using Point = std::array<Real, 3>;

    explicit PolylineCurve(std::vector<Point> pts) : pts_(std::move(pts)) { build(); }

    /// Row-major n x n chord matrix; points are optional (may be empty).
    PolylineCurve(std::vector<Point> pts, std::vector<Real> chords, std::size_t n)
        : pts_(std::move(pts)), chords_(std::move(chords)), n_(n)
    {
        if (chords_.size() != n * n) throw ArgumentError("PolylineCurve: chord matrix size mismatch");
        if (!pts_.empty() && pts_.size() != n) throw ArgumentError("PolylineCurve: point count mismatch");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (chords_[i * n + j] != chords_[j * n + i] || !(chords_[i * n + j] >= 0))
                    throw ArgumentError("PolylineCurve: chord matrix must be symmetric and non-negative");
        build();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (chord(i, j) > (arclen_[j] - arclen_[i]) * (1 + Real(1e-9)))
                    throw DataError("PolylineCurve: chord exceeds the arc length between samples");
    }

    std::size_t size() const { return n_; }
    const std::vector<Point>& points() const { return pts_; }
    const std::vector<Real>& arclen() const { return arclen_; }

    Real chord(std::size_t i, std::size_t j) const
    {
        if (!chords_.empty()) return chords_[i * n_ + j];
        Real s = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            const Real d = pts_[i][k] - pts_[j][k];
            s += d * d;
        }
        return std::sqrt(s);
    }

    /// Index whose arc-length position is closest to s.
    std::size_t nearest(Real s) const
    {
        auto it = std::lower_bound(arclen_.begin(), arclen_.end(), s);
        if (it == arclen_.end()) return n_ - 1;
        auto i = static_cast<std::size_t>(it - arclen_.begin());
        if (i > 0 && s - arclen_[i - 1] < arclen_[i] - s) --i;
        return i;
    }

private:
    void build()
    {
        if (chords_.empty()) n_ = pts_.size();
        if (n_ < 3) throw ArgumentError("PolylineCurve: need at least 3 points");
        arclen_.assign(n_, Real(0));
        for (std::size_t i = 1; i < n_; ++i) {
            const Real seg = chord(i - 1, i);
            if (!(seg > 0)) throw DataError("PolylineCurve: consecutive samples coincide");
            arclen_[i] = arclen_[i - 1] + seg;
        }
    }

    std::vector<Point> pts_;
    std::vector<Real> chords_;
    std::size_t n_ = 0;
    std::vector<Real> arclen_;
};

template <class Real = double>
struct CurveEstimate
{
    Real value = 0;              ///< extrapolated curvature
    std::vector<Real> windows;   ///< realized half-widths (arc length), in schedule order
    std::vector<Real> raw;       ///< per-window curvature (Haantjes: kappa^2 before the root)
    Real extrapolation_change = 0; ///< |extrapolated - finest raw|, in curvature units
};

namespace detail {

template <class Real>
std::pair<std::size_t, std::size_t> window_ends(const PolylineCurve<Real>& c, std::size_t p, Real w)
{
    const Real s = c.arclen()[p];
    const std::size_t q = c.nearest(s - w), r = c.nearest(s + w);
    if (q >= p || r <= p) throw ArgumentError("curve window below the sample spacing");
    if (s - w < c.arclen().front() - w * Real(1e-9) || s + w > c.arclen().back() + w * Real(1e-9))
        throw ArgumentError("curve window extends past the curve ends");
    return {q, r};
}

template <class Real>
void check_schedule(const std::vector<Real>& w, std::size_t n_points, std::size_t p)
{
    if (w.size() < 2) throw ArgumentError("window schedule needs at least two windows");
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!(w[i] < w[i - 1] && w[i] > 0)) throw ArgumentError("window schedule must be positive and decreasing");
    if (p == 0 || p + 1 >= n_points) throw ArgumentError("curvature point must be interior");
}

/// Richardson extrapolation to h -> 0 of values with error O(h^2).
template <class Real>
Real richardson2(Real h1, Real v1, Real h2, Real v2)
{
    const Real a = h1 * h1, b = h2 * h2;
    return a == b ? v2 : (v2 * a - v1 * b) / (a - b);
}

/// Arc length from i to j with the polygon bias removed: (4 l_h - l_2h) / 3, done on each half of the window.
template <class Real>
Real corrected_arc(const PolylineCurve<Real>& c, std::size_t i, std::size_t j)
{
    const Real fine = c.arclen()[j] - c.arclen()[i];
    Real coarse = 0;
    std::size_t k = i;
    for (; k + 2 <= j; k += 2) coarse += c.chord(k, k + 2);
    if (k < j) coarse += c.chord(k, j);
    return (Real(4) * fine - coarse) / Real(3);
}

} // namespace detail

/// Menger curvature of (q, p, r) over shrinking symmetric windows around p, extrapolated to zero width.
template <class Real = double>
CurveEstimate<Real> alt_curvature(const PolylineCurve<Real>& c, std::size_t p, const std::vector<Real>& windows)
{
    detail::check_schedule(windows, c.size(), p);
    CurveEstimate<Real> e;
    for (Real w : windows) {
        const auto [q, r] = detail::window_ends(c, p, w);
        e.windows.push_back(Real(0.5) * (c.arclen()[r] - c.arclen()[q]));
        e.raw.push_back(menger_curvature<Real>(c.chord(q, p), c.chord(p, r), c.chord(q, r)));
    }
    const std::size_t n = e.raw.size();
    const Real k1 = e.raw[n - 2], k2 = e.raw[n - 1];
    const Real big = std::max(std::abs(k1), std::abs(k2));
    if (big > 0 && std::abs(k2 - k1) > Real(0.5) * big)
        throw UnstableEstimateError("alt_curvature: estimates do not settle at the finest windows");
    e.value = std::max(Real(0), detail::richardson2(e.windows[n - 2], k1, e.windows[n - 1], k2));
    e.extrapolation_change = std::abs(e.value - k2);
    return e;
}

/// sqrt(24 (l - d) / l^3) over shrinking windows, l being the arc length and d the chord of the window.
template <class Real = double>
CurveEstimate<Real> haantjes_curvature(const PolylineCurve<Real>& c, std::size_t p, const std::vector<Real>& windows)
{
    detail::check_schedule(windows, c.size(), p);
    CurveEstimate<Real> e;
    for (Real w : windows) {
        const auto [q, r] = detail::window_ends(c, p, w);
        const Real l = detail::corrected_arc(c, q, p) + detail::corrected_arc(c, p, r);
        const Real d = c.chord(q, r);
        const Real v = Real(24) * (l - d) / (l * l * l);
        const Real noise = Real(24) * Real(1e3) * std::numeric_limits<Real>::epsilon() / (l * l);
        if (v < -noise) throw DataError("haantjes_curvature: chord longer than arc");
        e.windows.push_back(Real(0.5) * (c.arclen()[r] - c.arclen()[q]));
        e.raw.push_back(v);
    }
    const std::size_t n = e.raw.size();
    const Real sq = detail::richardson2(e.windows[n - 2], e.raw[n - 2], e.windows[n - 1], e.raw[n - 1]);
    e.value = std::sqrt(std::max(Real(0), sq));
    e.extrapolation_change = std::abs(e.value - std::sqrt(std::max(Real(0), e.raw[n - 1])));
    return e;
}

template <class Real = double>
struct ConsistencyReport
{
    CurveEstimate<Real> alt;
    CurveEstimate<Real> haantjes;
    Real gap = 0;
    bool consistent = true; ///< gap within the combined extrapolation change (plus a rounding floor)
};

template <class Real = double>
ConsistencyReport<Real> curvature_consistency(const PolylineCurve<Real>& c, std::size_t p,
                                              const std::vector<Real>& windows, Real abs_floor = Real(1e-9))
{
    ConsistencyReport<Real> r;
    r.alt = alt_curvature(c, p, windows);
    r.haantjes = haantjes_curvature(c, p, windows);
    r.gap = std::abs(r.alt.value - r.haantjes.value);
    r.consistent = r.gap <= r.alt.extrapolation_change + r.haantjes.extrapolation_change + abs_floor;
    return r;
}

} // namespace metcurv

#pragma once

// Surface samples with an intrinsic distance oracle.
//
// Three flavours share one interface:
//   analytic : points on a built-in surface (sphere, plane, cylinder, torus) with geodesic distances
//              computed from the surface itself, plus an exponential map for building quadruples on
//              exact geodesics;
//   mesh     : triangle mesh, distances are shortest paths in the edge graph;
//   matrix   : abstract points with a user-supplied distance matrix.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "detail/linalg.hpp"
#include "errors.hpp"
#include "metric_core.hpp"

namespace metcurv {

using detail::Vec3;

/// Parameter coordinates (u, v) of a point on an analytic surface. Their meaning is surface specific:
/// longitude/latitude on the sphere, (x, y) on the plane, (angle, height) on the cylinder,
/// (big-circle angle, tube angle) on the torus.
struct SurfacePoint
{
    double u = 0.0, v = 0.0;
};

/// Tangent direction at a point, as heading angle in the surface's local orthonormal frame, plus length.
struct TangentVector
{
    double heading = 0.0;
    double length = 0.0;
};

class AnalyticSurface
{
public:
    virtual ~AnalyticSurface() = default;

    virtual std::string name() const = 0;
    virtual Vec3 embed(SurfacePoint p) const = 0;
    /// Point reached from p by the unit-speed geodesic with the given heading after arc length t.
    virtual SurfacePoint exp(SurfacePoint p, double heading, double t) const = 0;
    /// Initial heading and length of the minimizing geodesic from p to q.
    virtual TangentVector log(SurfacePoint p, SurfacePoint q) const = 0;
    virtual double distance(SurfacePoint p, SurfacePoint q) const { return log(p, q).length; }
    virtual double gauss_curvature(SurfacePoint p) const = 0;
    /// False when distances come from a numerical approximation.
    virtual bool exact_distances() const { return true; }
};

namespace detail {

inline double wrap_pi(double a)
{
    a = std::remainder(a, 2.0 * std::numbers::pi);
    return a;
}

} // namespace detail

class Sphere final : public AnalyticSurface
{
public:
    explicit Sphere(double radius = 1.0) : r_(radius)
    {
        if (!(radius > 0)) throw ArgumentError("Sphere: radius must be > 0");
    }
    double radius() const { return r_; }

    std::string name() const override { return "sphere"; }

    static Vec3 unit(SurfacePoint p)
    {
        return {std::cos(p.v) * std::cos(p.u), std::cos(p.v) * std::sin(p.u), std::sin(p.v)};
    }
    static SurfacePoint from_unit(Vec3 n)
    {
        return {std::atan2(n.y, n.x), std::atan2(n.z, std::hypot(n.x, n.y))};
    }

    Vec3 embed(SurfacePoint p) const override { return r_ * unit(p); }

    SurfacePoint exp(SurfacePoint p, double heading, double t) const override
    {
        const auto [e1, e2] = frame(p);
        const Vec3 dir = std::cos(heading) * e1 + std::sin(heading) * e2;
        const double a = t / r_;
        return from_unit(std::cos(a) * unit(p) + std::sin(a) * dir);
    }

    TangentVector log(SurfacePoint p, SurfacePoint q) const override
    {
        const Vec3 n = unit(p), m = unit(q);
        const auto [e1, e2] = frame(p);
        const Vec3 tang = m - dot(n, m) * n;
        return {std::atan2(dot(tang, e2), dot(tang, e1)), r_ * angle_between(n, m)};
    }

    double distance(SurfacePoint p, SurfacePoint q) const override { return r_ * angle_between(unit(p), unit(q)); }
    double gauss_curvature(SurfacePoint) const override { return 1.0 / (r_ * r_); }

private:
    // east, north
    static std::pair<Vec3, Vec3> frame(SurfacePoint p)
    {
        const Vec3 east{-std::sin(p.u), std::cos(p.u), 0.0};
        const Vec3 north{-std::sin(p.v) * std::cos(p.u), -std::sin(p.v) * std::sin(p.u), std::cos(p.v)};
        return {east, north};
    }

    double r_;
};

/// The Euclidean plane. The sample region (w x h) only bounds where points are drawn.
class Plane final : public AnalyticSurface
{
public:
    std::string name() const override { return "plane"; }
    Vec3 embed(SurfacePoint p) const override { return {p.u, p.v, 0.0}; }
    SurfacePoint exp(SurfacePoint p, double heading, double t) const override
    {
        return {p.u + t * std::cos(heading), p.v + t * std::sin(heading)};
    }
    TangentVector log(SurfacePoint p, SurfacePoint q) const override
    {
        const double dx = q.u - p.u, dy = q.v - p.v;
        return {std::atan2(dy, dx), std::hypot(dx, dy)};
    }
    double gauss_curvature(SurfacePoint) const override { return 0.0; }
};

/// Infinite circular cylinder of radius R; u is the angle, v the height. Distances are those of the
/// developed plane, minimized over windings.
class Cylinder final : public AnalyticSurface
{
public:
    explicit Cylinder(double radius = 1.0) : r_(radius)
    {
        if (!(radius > 0)) throw ArgumentError("Cylinder: radius must be > 0");
    }
    double radius() const { return r_; }

    std::string name() const override { return "cylinder"; }
    Vec3 embed(SurfacePoint p) const override { return {r_ * std::cos(p.u), r_ * std::sin(p.u), p.v}; }
    SurfacePoint exp(SurfacePoint p, double heading, double t) const override
    {
        return {detail::wrap_pi(p.u + t * std::cos(heading) / r_), p.v + t * std::sin(heading)};
    }
    TangentVector log(SurfacePoint p, SurfacePoint q) const override
    {
        const double dx = r_ * detail::wrap_pi(q.u - p.u), dy = q.v - p.v;
        return {std::atan2(dy, dx), std::hypot(dx, dy)};
    }
    double gauss_curvature(SurfacePoint) const override { return 0.0; }

private:
    double r_;
};

/// Torus of revolution with tube radius r around a circle of radius R > r. u runs along the big circle,
/// v around the tube (v = 0 on the outer equator). Geodesics are integrated with RK4; distances come from
/// shooting and are approximate.
class Torus final : public AnalyticSurface
{
public:
    Torus(double R = 2.0, double r = 1.0) : R_(R), r_(r)
    {
        if (!(r > 0 && R > r)) throw ArgumentError("Torus: need R > r > 0");
    }
    double major() const { return R_; }
    double minor() const { return r_; }

    std::string name() const override { return "torus"; }
    bool exact_distances() const override { return false; }

    Vec3 embed(SurfacePoint p) const override
    {
        const double w = R_ + r_ * std::cos(p.v);
        return {w * std::cos(p.u), w * std::sin(p.u), r_ * std::sin(p.v)};
    }

    double gauss_curvature(SurfacePoint p) const override
    {
        return std::cos(p.v) / (r_ * (R_ + r_ * std::cos(p.v)));
    }

    SurfacePoint exp(SurfacePoint p, double heading, double t) const override
    {
        // state: u, v, du/ds, dv/ds for unit speed
        std::array<double, 4> y{p.u, p.v, std::cos(heading) / (R_ + r_ * std::cos(p.v)), std::sin(heading) / r_};
        if (t < 0) {
            y[2] = -y[2];
            y[3] = -y[3];
        }
        const double len = std::abs(t);
        const auto steps = static_cast<std::size_t>(std::max(8.0, std::ceil(len / (step_ * r_))));
        const double h = len / static_cast<double>(steps);
        for (std::size_t i = 0; i < steps; ++i) {
            const auto k1 = rhs(y);
            const auto k2 = rhs(axpy(y, 0.5 * h, k1));
            const auto k3 = rhs(axpy(y, 0.5 * h, k2));
            const auto k4 = rhs(axpy(y, h, k3));
            for (std::size_t j = 0; j < 4; ++j) y[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        }
        return {detail::wrap_pi(y[0]), detail::wrap_pi(y[1])};
    }

    TangentVector log(SurfacePoint p, SurfacePoint q) const override
    {
        const double w = R_ + r_ * std::cos(p.v);
        const double du0 = detail::wrap_pi(q.u - p.u), dv0 = detail::wrap_pi(q.v - p.v);
        constexpr double tau = 2.0 * std::numbers::pi;
        // flat-metric guesses over neighbouring windings, nearest first
        std::vector<TangentVector> guesses;
        for (int ku = -1; ku <= 1; ++ku)
            for (int kv = -1; kv <= 1; ++kv) {
                const double x = w * (du0 + ku * tau), y = r_ * (dv0 + kv * tau);
                guesses.push_back({std::atan2(y, x), std::hypot(x, y)});
            }
        std::sort(guesses.begin(), guesses.end(), [](const auto& a, const auto& b) { return a.length < b.length; });
        std::optional<TangentVector> best;
        for (const auto& g : guesses) {
            if (best && g.length > 1.5 * best->length) break;
            if (auto s = shoot(p, q, g))
                if (!best || s->length < best->length) best = s;
            if (best && g.length < 0.25 * (R_ - r_)) break; // short geodesic: the local guess is the answer
        }
        if (!best) throw DomainError("Torus::log: geodesic shooting did not converge");
        return *best;
    }

private:
    std::array<double, 4> rhs(const std::array<double, 4>& y) const
    {
        const double c = std::cos(y[1]), s = std::sin(y[1]);
        const double w = R_ + r_ * c;
        return {y[2], y[3], 2.0 * r_ * s / w * y[2] * y[3], -w * s / r_ * y[2] * y[2]};
    }
    static std::array<double, 4> axpy(std::array<double, 4> y, double a, const std::array<double, 4>& k)
    {
        for (std::size_t j = 0; j < 4; ++j) y[j] += a * k[j];
        return y;
    }

    std::array<double, 2> miss(SurfacePoint p, SurfacePoint q, double heading, double t) const
    {
        const auto e = exp(p, heading, t);
        return {detail::wrap_pi(e.u - q.u) * (R_ + r_ * std::cos(q.v)), detail::wrap_pi(e.v - q.v) * r_};
    }

    std::optional<TangentVector> shoot(SurfacePoint p, SurfacePoint q, TangentVector guess) const
    {
        if (guess.length == 0.0) return TangentVector{0.0, 0.0};
        double a = guess.heading, t = guess.length;
        const double scale = std::max(t, 1e-300);
        for (int it = 0; it < 40; ++it) {
            const auto f = miss(p, q, a, t);
            const double err = std::hypot(f[0], f[1]);
            if (err <= 1e-13 * std::max(1.0, scale)) return TangentVector{a, t};
            const double ha = 1e-7, ht = 1e-7 * std::max(t, 1e-3);
            const auto fa = miss(p, q, a + ha, t);
            const auto ft = miss(p, q, a, t + ht);
            const double j00 = (fa[0] - f[0]) / ha, j10 = (fa[1] - f[1]) / ha;
            const double j01 = (ft[0] - f[0]) / ht, j11 = (ft[1] - f[1]) / ht;
            const double det = j00 * j11 - j01 * j10;
            if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
            const double da = (j11 * f[0] - j01 * f[1]) / det;
            const double dt = (-j10 * f[0] + j00 * f[1]) / det;
            a -= da;
            t -= dt;
            if (!(t > 0) || !std::isfinite(t)) return std::nullopt;
        }
        const auto f = miss(p, q, a, t);
        if (std::hypot(f[0], f[1]) <= 1e-10 * std::max(1.0, scale)) return TangentVector{a, t};
        return std::nullopt;
    }

    double R_, r_;
    double step_ = 0.002;
};

/// Undirected weighted edge-graph adjacency.
struct EdgeGraph
{
    std::vector<std::vector<std::pair<std::size_t, double>>> adj;

    std::size_t size() const { return adj.size(); }

    void add_edge(std::size_t a, std::size_t b, double w)
    {
        for (const auto& [n, _] : adj[a])
            if (n == b) return;
        adj[a].emplace_back(b, w);
        adj[b].emplace_back(a, w);
    }

    std::size_t edge_count() const
    {
        std::size_t c = 0;
        for (const auto& a : adj) c += a.size();
        return c / 2;
    }

    /// Single-source shortest paths; optional predecessor output.
    std::vector<double> dijkstra(std::size_t src, std::vector<std::size_t>* pred = nullptr,
                                 double cutoff = std::numeric_limits<double>::infinity()) const
    {
        constexpr auto inf = std::numeric_limits<double>::infinity();
        constexpr auto none = std::numeric_limits<std::size_t>::max();
        std::vector<double> dist(adj.size(), inf);
        if (pred) pred->assign(adj.size(), none);
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[src] = 0.0;
        pq.emplace(0.0, src);
        while (!pq.empty()) {
            const auto [d, u] = pq.top();
            pq.pop();
            if (d > dist[u] || d > cutoff) continue;
            for (const auto& [v, w] : adj[u]) {
                const double nd = d + w;
                if (nd < dist[v]) {
                    dist[v] = nd;
                    if (pred) (*pred)[v] = u;
                    pq.emplace(nd, v);
                }
            }
        }
        return dist;
    }

    /// Throws ConnectivityError naming a vertex unreachable from vertex 0.
    void require_connected() const
    {
        if (adj.empty()) return;
        const auto d = dijkstra(0);
        for (std::size_t i = 0; i < d.size(); ++i)
            if (!std::isfinite(d[i])) throw ConnectivityError("graph is not connected", 0, i);
    }
};

class SurfaceSample
{
public:
    enum class Kind
    {
        analytic,
        mesh,
        matrix,
    };

    static SurfaceSample from_analytic(std::shared_ptr<const AnalyticSurface> surface, std::vector<SurfacePoint> pts)
    {
        if (!surface) throw ArgumentError("SurfaceSample: null surface");
        SurfaceSample s;
        s.kind_ = Kind::analytic;
        s.surface_ = std::move(surface);
        s.params_ = std::move(pts);
        s.vertices_.reserve(s.params_.size());
        for (const auto& p : s.params_) s.vertices_.push_back(s.surface_->embed(p));
        return s;
    }

    /// Triangle mesh; the edge graph must be connected.
    static SurfaceSample from_mesh(std::vector<Vec3> vertices, std::vector<std::array<std::size_t, 3>> faces)
    {
        SurfaceSample s;
        s.kind_ = Kind::mesh;
        s.vertices_ = std::move(vertices);
        s.faces_ = std::move(faces);
        s.graph_.adj.resize(s.vertices_.size());
        for (const auto& f : s.faces_) {
            for (std::size_t k = 0; k < 3; ++k) {
                const std::size_t a = f[k], b = f[(k + 1) % 3];
                if (a >= s.vertices_.size() || b >= s.vertices_.size())
                    throw DataError("face references a vertex out of range");
                if (a == b) throw DataError("face with repeated vertex");
                s.graph_.add_edge(a, b, detail::distance(s.vertices_[a], s.vertices_[b]));
            }
        }
        s.graph_.require_connected();
        return s;
    }

    static SurfaceSample from_metric(FiniteMetricSpace space)
    {
        SurfaceSample s;
        s.kind_ = Kind::matrix;
        s.metric_ = std::make_shared<FiniteMetricSpace>(std::move(space));
        return s;
    }

    Kind kind() const { return kind_; }
    std::size_t size() const
    {
        return kind_ == Kind::matrix ? metric_->size() : (kind_ == Kind::analytic ? params_.size() : vertices_.size());
    }
    bool approximate() const { return kind_ == Kind::mesh || (surface_ && !surface_->exact_distances()); }

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<std::array<std::size_t, 3>>& faces() const { return faces_; }
    const EdgeGraph& graph() const { return graph_; }
    const AnalyticSurface* surface() const { return surface_.get(); }
    const std::vector<SurfacePoint>& params() const { return params_; }

    double distance(std::size_t i, std::size_t j) const
    {
        check(i);
        check(j);
        switch (kind_) {
        case Kind::analytic: return i == j ? 0.0 : surface_->distance(params_[i], params_[j]);
        case Kind::matrix: return (*metric_)(i, j);
        case Kind::mesh: return graph_.dijkstra(i)[j];
        }
        return 0.0;
    }

    std::vector<double> distances_from(std::size_t i, double cutoff = std::numeric_limits<double>::infinity()) const
    {
        check(i);
        if (kind_ == Kind::mesh) return graph_.dijkstra(i, nullptr, cutoff);
        std::vector<double> d(size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = distance(i, j);
        return d;
    }

    /// Indices j != i with distance(i, j) <= radius, ascending.
    std::vector<std::size_t> ball(std::size_t i, double radius) const
    {
        const auto d = distances_from(i, radius);
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < d.size(); ++j)
            if (j != i && d[j] <= radius) out.push_back(j);
        return out;
    }

    /// Vertex sequence of a shortest edge path (mesh samples only).
    std::vector<std::size_t> shortest_path(std::size_t a, std::size_t b) const
    {
        if (kind_ != Kind::mesh) throw ArgumentError("shortest_path: only defined for mesh samples");
        check(a);
        check(b);
        std::vector<std::size_t> pred;
        graph_.dijkstra(a, &pred);
        std::vector<std::size_t> path{b};
        while (path.back() != a) {
            const auto p = pred[path.back()];
            if (p == std::numeric_limits<std::size_t>::max()) throw ConnectivityError("no path", a, b);
            path.push_back(p);
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    FiniteMetricSpace to_metric_space() const
    {
        const std::size_t n = size();
        std::vector<double> m(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = distances_from(i);
            std::copy(row.begin(), row.end(), m.begin() + static_cast<std::ptrdiff_t>(i * n));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) m[j * n + i] = m[i * n + j];
        return FiniteMetricSpace(FiniteMetricSpace::default_labels(n), std::move(m), trusted_triangles);
    }

private:
    void check(std::size_t i) const
    {
        if (i >= size()) throw ArgumentError("point index out of range");
    }

    Kind kind_ = Kind::matrix;
    std::shared_ptr<const AnalyticSurface> surface_;
    std::vector<SurfacePoint> params_;
    std::vector<Vec3> vertices_;
    std::vector<std::array<std::size_t, 3>> faces_;
    EdgeGraph graph_;
    std::shared_ptr<const FiniteMetricSpace> metric_;
};

} // namespace metcurv

#pragma once

// Distances between finite metric spaces (Hausdorff, Lipschitz, Gromov-Hausdorff), nets, almost-isometries,
// and the net-graph approximation of a sampled length space.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "metric_core.hpp"
#include "surface.hpp"

namespace metcurv {

/// A map between finite spaces: f[i] is the image of point i.
using PointMap = std::vector<std::size_t>;

inline double hausdorff_distance(std::span<const std::size_t> A, std::span<const std::size_t> B,
                                 const FiniteMetricSpace& X)
{
    if (A.empty() || B.empty()) throw ArgumentError("hausdorff_distance: sets must be non-empty");
    for (auto i : A)
        if (i >= X.size()) throw ArgumentError("hausdorff_distance: index out of range");
    for (auto i : B)
        if (i >= X.size()) throw ArgumentError("hausdorff_distance: index out of range");
    auto directed = [&](std::span<const std::size_t> P, std::span<const std::size_t> Q) {
        double h = 0.0;
        for (auto p : P) {
            double m = std::numeric_limits<double>::infinity();
            for (auto q : Q) m = std::min(m, X(p, q));
            h = std::max(h, m);
        }
        return h;
    };
    return std::max(directed(A, B), directed(B, A));
}

namespace detail {

inline void check_map(const PointMap& f, const FiniteMetricSpace& X, const FiniteMetricSpace& Y)
{
    if (f.size() != X.size()) throw ArgumentError("map must assign an image to every point");
    for (auto y : f)
        if (y >= Y.size()) throw ArgumentError("map image out of range");
}

} // namespace detail

/// max over x != x' of d_Y(f x, f x') / d_X(x, x'); 0 for spaces with fewer than two points.
inline double dilatation(const PointMap& f, const FiniteMetricSpace& X, const FiniteMetricSpace& Y)
{
    detail::check_map(f, X, Y);
    double dil = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j) {
            const double dy = Y(f[i], f[j]), dx = X(i, j);
            if (dy == 0.0) continue;
            if (dx == 0.0) return std::numeric_limits<double>::infinity();
            dil = std::max(dil, dy / dx);
        }
    return dil;
}

/// Distortion of a map: max |d_Y(f x, f x') - d_X(x, x')|.
inline double map_distortion(const PointMap& f, const FiniteMetricSpace& X, const FiniteMetricSpace& Y)
{
    detail::check_map(f, X, Y);
    double dis = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j) dis = std::max(dis, std::abs(Y(f[i], f[j]) - X(i, j)));
    return dis;
}

struct LipschitzDistance
{
    enum class Kind
    {
        finite,
        infinite,
    };
    Kind kind = Kind::infinite;
    double value = 0.0; ///< meaningful only when finite
    PointMap bijection; ///< an optimal bijection when finite

    bool is_infinite() const { return kind == Kind::infinite; }
};

/// min over bijections f of log max(dil f, dil f^-1). Spaces of different size are infinitely far apart.
inline LipschitzDistance lipschitz_distance(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                            std::size_t max_points = 10)
{
    LipschitzDistance out;
    if (X.size() != Y.size()) return out;
    if (X.size() > max_points)
        throw CapacityError("lipschitz_distance: exhaustive search limited to " + std::to_string(max_points) +
                            " points; use gh_bounds instead");
    const std::size_t n = X.size();
    PointMap f(n), inv(n);
    std::iota(f.begin(), f.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        for (std::size_t i = 0; i < n; ++i) inv[f[i]] = i;
        const double c = std::max(dilatation(f, X, Y), dilatation(inv, Y, X));
        if (c < best) {
            best = c;
            out.bijection = f;
        }
    } while (std::next_permutation(f.begin(), f.end()));
    if (!std::isfinite(best)) return out;
    out.kind = LipschitzDistance::Kind::finite;
    out.value = n < 2 ? 0.0 : std::log(best);
    return out;
}

/// A relation between X and Y covering both sides.
struct Correspondence
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    void validate(std::size_t nx, std::size_t ny) const
    {
        std::vector<char> cx(nx, 0), cy(ny, 0);
        for (const auto& [x, y] : pairs) {
            if (x >= nx || y >= ny) throw ArgumentError("correspondence index out of range");
            cx[x] = cy[y] = 1;
        }
        if (std::find(cx.begin(), cx.end(), 0) != cx.end() || std::find(cy.begin(), cy.end(), 0) != cy.end())
            throw ArgumentError("correspondence must cover every point of both spaces");
    }

    /// Graph of a surjective map.
    static Correspondence from_map(const PointMap& f)
    {
        Correspondence r;
        for (std::size_t i = 0; i < f.size(); ++i) r.pairs.emplace_back(i, f[i]);
        return r;
    }
};

inline double distortion(const Correspondence& r, const FiniteMetricSpace& X, const FiniteMetricSpace& Y)
{
    r.validate(X.size(), Y.size());
    double dis = 0.0;
    for (std::size_t a = 0; a < r.pairs.size(); ++a)
        for (std::size_t b = a + 1; b < r.pairs.size(); ++b) {
            const auto [x, y] = r.pairs[a];
            const auto [u, v] = r.pairs[b];
            dis = std::max(dis, std::abs(X(x, u) - Y(y, v)));
        }
    return dis;
}

struct GHResult
{
    double distance = 0.0;
    Correspondence correspondence; ///< an optimal correspondence (first in search order)
};

namespace detail {

// Grows a correspondence one pair at a time, keeping its running distortion.
struct CorrespondenceBuilder
{
    const FiniteMetricSpace& X;
    const FiniteMetricSpace& Y;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    double cost_of(std::size_t x, std::size_t y) const
    {
        double c = 0.0;
        for (const auto& [u, v] : pairs) c = std::max(c, std::abs(X(x, u) - Y(y, v)));
        return c;
    }
};

} // namespace detail

/// Upper bound by greedy correspondence: every point is matched to the partner that raises the
/// distortion least, seeded from each possible image of a diameter endpoint.
inline double gh_upper_greedy(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, Correspondence* best_out = nullptr)
{
    if (X.size() == 0 || Y.size() == 0) throw ArgumentError("gh: spaces must be non-empty");
    std::size_t x0 = 0;
    const double diam = X.diameter();
    for (std::size_t i = X.size(); i-- > 0;)
        for (std::size_t j = 0; j < X.size(); ++j)
            if (X(i, j) == diam) x0 = i;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t y0 = 0; y0 < Y.size(); ++y0) {
        detail::CorrespondenceBuilder b{X, Y, {{x0, y0}}};
        double dis = 0.0;
        for (std::size_t x = 0; x < X.size(); ++x) {
            if (x == x0) continue;
            std::size_t arg = 0;
            double m = std::numeric_limits<double>::infinity();
            for (std::size_t y = 0; y < Y.size(); ++y)
                if (const double c = b.cost_of(x, y); c < m) {
                    m = c;
                    arg = y;
                }
            b.pairs.emplace_back(x, arg);
            dis = std::max(dis, m);
        }
        for (std::size_t y = 0; y < Y.size(); ++y) {
            bool covered = false;
            for (const auto& pr : b.pairs) covered |= pr.second == y;
            if (covered) continue;
            std::size_t arg = 0;
            double m = std::numeric_limits<double>::infinity();
            for (std::size_t x = 0; x < X.size(); ++x)
                if (const double c = b.cost_of(x, y); c < m) {
                    m = c;
                    arg = x;
                }
            b.pairs.emplace_back(arg, y);
            dis = std::max(dis, m);
        }
        if (dis < best) {
            best = dis;
            if (best_out) best_out->pairs = b.pairs;
        }
    }
    return 0.5 * best;
}

/// Exact d_GH = 1/2 min distortion, by branch and bound over a map X -> Y followed by a map Y -> X
/// (the union of their graphs is a correspondence, and every correspondence contains such a union).
inline GHResult gh_distance_exact(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, std::size_t cap = 6)
{
    if (X.size() == 0 || Y.size() == 0) throw ArgumentError("gh_distance_exact: spaces must be non-empty");
    if (X.size() > cap || Y.size() > cap)
        throw CapacityError("gh_distance_exact: more than " + std::to_string(cap) + " points per side; use gh_bounds");
    const double lower = std::abs(X.diameter() - Y.diameter());
    GHResult res;
    double best = 2.0 * gh_upper_greedy(X, Y, &res.correspondence);
    const std::size_t nx = X.size(), ny = Y.size();
    detail::CorrespondenceBuilder b{X, Y, {}};
    bool done = best <= lower;

    std::function<void(std::size_t, double)> rec = [&](std::size_t k, double dis) {
        if (done) return;
        if (k == nx + ny) {
            if (dis < best) {
                best = dis;
                res.correspondence.pairs = b.pairs;
                done = best <= lower;
            }
            return;
        }
        const bool forward = k < nx;
        const std::size_t src = forward ? k : k - nx;
        const std::size_t m = forward ? ny : nx;
        for (std::size_t t = 0; t < m && !done; ++t) {
            const std::size_t x = forward ? src : t, y = forward ? t : src;
            const double c = std::max(dis, b.cost_of(x, y));
            if (c >= best) continue;
            b.pairs.emplace_back(x, y);
            rec(k + 1, c);
            b.pairs.pop_back();
        }
    };
    rec(0, 0.0);
    res.distance = 0.5 * best;
    return res;
}

/// Covering radius of a subset: max over x of d(x, A).
inline double covering_radius(std::span<const std::size_t> A, const FiniteMetricSpace& X)
{
    if (A.empty()) throw ArgumentError("covering_radius: empty subset");
    double gap = 0.0;
    for (std::size_t x = 0; x < X.size(); ++x) {
        double m = std::numeric_limits<double>::infinity();
        for (auto a : A) m = std::min(m, X(x, a));
        gap = std::max(gap, m);
    }
    return gap;
}

struct NetPair
{
    std::vector<std::size_t> x_net, y_net; ///< matched nets: x_net[i] corresponds to y_net[i]
    double eps = 0.0;                      ///< both nets cover their spaces at radius eps
};

struct GHBounds
{
    double lower = 0.0;
    double upper = 0.0;
};

/// lower = |diam X - diam Y| / 2; upper from the greedy correspondence and, when given, from matched nets
/// (2 eps + max net distance mismatch).
inline GHBounds gh_bounds(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                          const std::optional<NetPair>& nets = std::nullopt)
{
    GHBounds b;
    b.lower = 0.5 * std::abs(X.diameter() - Y.diameter());
    b.upper = gh_upper_greedy(X, Y);
    if (nets) {
        const auto& n = *nets;
        if (n.x_net.size() != n.y_net.size() || n.x_net.empty()) throw ArgumentError("gh_bounds: nets must match");
        double delta = 0.0;
        for (std::size_t i = 0; i < n.x_net.size(); ++i)
            for (std::size_t j = i + 1; j < n.x_net.size(); ++j)
                delta = std::max(delta, std::abs(X(n.x_net[i], n.x_net[j]) - Y(n.y_net[i], n.y_net[j])));
        if (covering_radius(n.x_net, X) > n.eps || covering_radius(n.y_net, Y) > n.eps)
            throw ArgumentError("gh_bounds: nets do not cover at the declared radius");
        b.upper = std::min(b.upper, 2.0 * n.eps + delta);
    }
    b.upper = std::max(b.upper, b.lower);
    return b;
}

struct EpsilonIsometryCheck
{
    bool ok = false;
    double distortion = 0.0;
    double net_gap = 0.0; ///< covering radius of f(X) in Y
    std::optional<std::pair<std::size_t, std::size_t>> distortion_witness; ///< pair of X points exceeding eps
    std::optional<std::size_t> uncovered_witness;                          ///< Y point farther than eps from f(X)
};

inline EpsilonIsometryCheck is_epsilon_isometry(const PointMap& f, const FiniteMetricSpace& X,
                                                const FiniteMetricSpace& Y, double eps)
{
    detail::check_map(f, X, Y);
    EpsilonIsometryCheck r;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j) {
            const double d = std::abs(Y(f[i], f[j]) - X(i, j));
            if (d > r.distortion) r.distortion = d;
            if (d > eps && !r.distortion_witness) r.distortion_witness = std::pair{i, j};
        }
    for (std::size_t y = 0; y < Y.size(); ++y) {
        double m = std::numeric_limits<double>::infinity();
        for (auto fx : f) m = std::min(m, Y(y, fx));
        r.net_gap = std::max(r.net_gap, m);
        if (m > eps && !r.uncovered_witness) r.uncovered_witness = y;
    }
    r.ok = !r.distortion_witness && !r.uncovered_witness;
    return r;
}

struct NetCertificate
{
    std::vector<std::size_t> net_indices; ///< ascending
    double epsilon = 0.0;
    double max_gap = 0.0;
};

/// Greedy set cover: repeatedly take the point whose eps-ball covers the most uncovered points (lowest index on
/// ties). Not minimal in general.
inline NetCertificate epsilon_net(const FiniteMetricSpace& X, double eps)
{
    if (!(eps > 0)) throw ArgumentError("epsilon_net: eps must be > 0");
    const std::size_t n = X.size();
    NetCertificate c;
    c.epsilon = eps;
    if (n == 0) return c;
    std::vector<std::vector<std::size_t>> ball(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (X(i, j) <= eps) ball[i].push_back(j);
    std::vector<std::size_t> gain(n);
    for (std::size_t i = 0; i < n; ++i) gain[i] = ball[i].size();
    std::vector<char> covered(n, 0);
    std::size_t left = n;
    while (left > 0) {
        const auto best = static_cast<std::size_t>(std::max_element(gain.begin(), gain.end()) - gain.begin());
        c.net_indices.push_back(best);
        for (auto j : ball[best]) {
            if (covered[j]) continue;
            covered[j] = 1;
            --left;
            for (auto k : ball[j]) --gain[k]; // symmetric: k covers j iff j covers k
        }
    }
    std::sort(c.net_indices.begin(), c.net_indices.end());
    c.max_gap = covering_radius(c.net_indices, X);
    return c;
}

/// Matched nets x_net in X and y_net in Y cover at radius eps and distort pair distances by less than delta.
inline bool epsilon_delta_check(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                std::span<const std::size_t> x_net, std::span<const std::size_t> y_net, double eps,
                                double delta)
{
    if (x_net.size() != y_net.size()) throw ArgumentError("epsilon_delta_check: nets must have equal size");
    if (x_net.empty()) return false;
    for (auto i : x_net)
        if (i >= X.size()) throw ArgumentError("epsilon_delta_check: index out of range");
    for (auto i : y_net)
        if (i >= Y.size()) throw ArgumentError("epsilon_delta_check: index out of range");
    if (covering_radius(x_net, X) > eps || covering_radius(y_net, Y) > eps) return false;
    for (std::size_t i = 0; i < x_net.size(); ++i)
        for (std::size_t j = 0; j < x_net.size(); ++j)
            if (!(std::abs(X(x_net[i], x_net[j]) - Y(y_net[i], y_net[j])) < delta)) return false;
    return true;
}

struct ApproxGraph
{
    std::vector<std::size_t> vertices;                      ///< net indices into X
    std::vector<std::pair<std::size_t, std::size_t>> edges; ///< positions into `vertices`, d < eps
    std::vector<double> graph_metric;                       ///< row-major |V| x |V| shortest-path distances
    double max_gap = 0.0;                                   ///< max over net pairs of d_G - d_X
    bool dominates = true;                                  ///< d_G >= d_X on every pair
    bool certified = false;                                 ///< d_X <= d_G <= d_X + eps on every pair
    std::vector<std::string> warnings;

    double metric(std::size_t i, std::size_t j) const { return graph_metric[i * vertices.size() + j]; }
};

/// Net graph of a sampled length space: delta-net S, edges between net points closer than eps, weights the
/// sample distances, then all-pairs shortest paths.
inline ApproxGraph build_graph_approximation(const FiniteMetricSpace& X, double eps, double delta)
{
    if (!(eps > 0 && delta > 0)) throw ArgumentError("build_graph_approximation: eps and delta must be > 0");
    ApproxGraph g;
    if (!(delta < eps * eps / (4.0 * X.diameter())))
        g.warnings.push_back("delta >= eps^2 / (4 diam): the convergence hypothesis does not hold");
    g.vertices = epsilon_net(X, delta).net_indices;
    const std::size_t n = g.vertices.size();
    EdgeGraph eg;
    eg.adj.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = X(g.vertices[i], g.vertices[j]);
            if (d < eps) {
                g.edges.emplace_back(i, j);
                eg.add_edge(i, j, d);
            }
        }
    g.graph_metric.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = eg.dijkstra(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(row[j]))
                throw ConnectivityError("build_graph_approximation: net graph is disconnected (eps too small)",
                                        g.vertices[i], g.vertices[j]);
            g.graph_metric[i * n + j] = row[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double dx = X(g.vertices[i], g.vertices[j]);
            const double diff = g.metric(i, j) - dx;
            g.max_gap = std::max(g.max_gap, diff);
            if (diff < -1e-12 * std::max(1.0, dx)) g.dominates = false;
        }
    g.certified = g.dominates && g.max_gap <= eps;
    return g;
}

} // namespace metcurv

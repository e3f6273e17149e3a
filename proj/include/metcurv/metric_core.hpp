#pragma once

// Finite metric data: metric spaces, quadruples, Cayley-Menger determinants,
// simplex volumes and Euclidean realizability.
//
// Sign convention of the bordered Cayley-Menger determinant of k points
// (checked against coordinate constructions in the tests):
//   k = 2:  D =  2 d^2            (> 0)
//   k = 3:  D = -16 Area^2        (< 0 for a proper triangle)
//   k = 4:  D =  288 Vol_simplex^2 = 8 Vol_parallelepiped^2   (> 0 for a proper tetrahedron)
// i.e. sign (-1)^k for a non-degenerate simplex.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "detail/linalg.hpp"
#include "errors.hpp"

namespace metcurv {

/// Absolute-plus-relative tolerance: a violation v is accepted when v <= atol + rtol * scale.
struct Tolerance
{
    double atol = 1e-12;
    double rtol = 1e-9;

    double bound(double scale) const { return atol + rtol * scale; }
};

/// Skip the O(n^3) triangle-inequality pass for distances produced by a trusted generator.
struct TrustedTriangles
{
};
inline constexpr TrustedTriangles trusted_triangles{};

/// Labeled points with a validated symmetric distance matrix (row-major).
class FiniteMetricSpace
{
public:
    FiniteMetricSpace() = default;

    FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist, Tolerance tol = {})
        : labels_(std::move(labels)), dist_(std::move(dist))
    {
        check_shape();
        check_axioms(tol, true);
    }

    FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist, TrustedTriangles, Tolerance tol = {})
        : labels_(std::move(labels)), dist_(std::move(dist))
    {
        check_shape();
        check_axioms(tol, false);
    }

    /// Builds a space labeled "0".."n-1" from a nested matrix.
    static FiniteMetricSpace from_rows(const std::vector<std::vector<double>>& rows, Tolerance tol = {})
    {
        const std::size_t n = rows.size();
        std::vector<double> d;
        d.reserve(n * n);
        for (const auto& r : rows) {
            if (r.size() != n) throw ArgumentError("distance matrix is not square");
            d.insert(d.end(), r.begin(), r.end());
        }
        return FiniteMetricSpace(default_labels(n), std::move(d), tol);
    }

    static std::vector<std::string> default_labels(std::size_t n)
    {
        std::vector<std::string> l(n);
        for (std::size_t i = 0; i < n; ++i) l[i] = std::to_string(i);
        return l;
    }

    std::size_t size() const noexcept { return labels_.size(); }
    double operator()(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<double>& matrix() const noexcept { return dist_; }

    double diameter() const
    {
        double d = 0.0;
        for (double v : dist_) d = std::max(d, v);
        return d;
    }

    FiniteMetricSpace subspace(std::span<const std::size_t> idx) const
    {
        std::vector<std::string> l;
        std::vector<double> d;
        l.reserve(idx.size());
        d.reserve(idx.size() * idx.size());
        for (auto i : idx) {
            if (i >= size()) throw ArgumentError("subspace index out of range");
            l.push_back(labels_[i]);
        }
        for (auto i : idx)
            for (auto j : idx) d.push_back((*this)(i, j));
        return FiniteMetricSpace(std::move(l), std::move(d), trusted_triangles);
    }

private:
    void check_shape() const
    {
        if (dist_.size() != labels_.size() * labels_.size())
            throw ArgumentError("distance matrix size does not match label count");
    }

    void check_axioms(const Tolerance& tol, bool triangles) const
    {
        const std::size_t n = size();
        double scale = 0.0;
        for (double v : dist_) {
            if (!std::isfinite(v)) throw MetricViolation("distance is not finite", 0, 0, 0);
            scale = std::max(scale, std::abs(v));
        }
        const double slack = tol.bound(scale);
        for (std::size_t i = 0; i < n; ++i) {
            if ((*this)(i, i) != 0.0) throw MetricViolation("nonzero diagonal entry", i, i, i);
            for (std::size_t j = i + 1; j < n; ++j) {
                if ((*this)(i, j) < 0.0) throw MetricViolation("negative distance", i, j, j);
                if ((*this)(i, j) != (*this)(j, i)) throw MetricViolation("asymmetric distance", i, j, j);
            }
        }
        if (!triangles) return;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k) + slack)
                        throw MetricViolation("triangle inequality violated: d(" + labels_[i] + "," + labels_[k] +
                                                  ") > d(" + labels_[i] + "," + labels_[j] + ") + d(" +
                                                  labels_[j] + "," + labels_[k] + ")",
                                              i, j, k);
    }

    std::vector<std::string> labels_;
    std::vector<double> dist_;
};

/// Index of the unordered pair {i, j} (i != j, both < k) in lexicographic order 12, 13, ..., 1k, 23, ...
constexpr std::size_t pair_index(std::size_t i, std::size_t j, std::size_t k)
{
    if (i > j) std::swap(i, j);
    return i * k - i * (i + 1) / 2 + (j - i - 1);
}

/// Four points with their six mutual distances. Every sub-triple satisfies the triangle inequality.
class MetricQuadruple
{
public:
    /// Distances in the order d12, d13, d14, d23, d24, d34.
    MetricQuadruple(double d12, double d13, double d14, double d23, double d24, double d34, Tolerance tol = {})
        : d_{d12, d13, d14, d23, d24, d34}
    {
        validate(tol);
    }

    explicit MetricQuadruple(const std::array<double, 6>& d, Tolerance tol = {}) : d_(d) { validate(tol); }

    /// Distances already known to come from a metric (relabelings, rescalings, exact geometry).
    MetricQuadruple(const std::array<double, 6>& d, TrustedTriangles) : d_(d) {}

    static MetricQuadruple from_points(detail::Vec3 p1, detail::Vec3 p2, detail::Vec3 p3, detail::Vec3 p4,
                                       Tolerance tol = {})
    {
        using detail::distance;
        return MetricQuadruple(distance(p1, p2), distance(p1, p3), distance(p1, p4), distance(p2, p3),
                               distance(p2, p4), distance(p3, p4), tol);
    }

    /// Distance between points i and j, zero-based.
    double d(std::size_t i, std::size_t j) const { return i == j ? 0.0 : d_[pair_index(i, j, 4)]; }
    const std::array<double, 6>& distances() const noexcept { return d_; }

    double diameter() const { return *std::max_element(d_.begin(), d_.end()); }
    double min_distance() const { return *std::min_element(d_.begin(), d_.end()); }

    /// Relabeled copy: new point a is old point perm[a].
    MetricQuadruple permuted(const std::array<std::size_t, 4>& perm) const
    {
        std::array<double, 6> nd{};
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = a + 1; b < 4; ++b) nd[pair_index(a, b, 4)] = d(perm[a], perm[b]);
        return MetricQuadruple(nd, trusted_triangles);
    }

    MetricQuadruple scaled(double s) const
    {
        auto nd = d_;
        for (auto& v : nd) v *= s;
        return MetricQuadruple(nd, trusted_triangles);
    }

private:
    void validate(const Tolerance& tol) const
    {
        for (double v : d_)
            if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("quadruple distances must be finite and >= 0");
        const double slack = tol.bound(diameter());
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t k = 0; k < 4; ++k) {
                    if (i == j || j == k || i == k) continue;
                    if (d(i, k) > d(i, j) + d(j, k) + slack)
                        throw MetricViolation("quadruple violates the triangle inequality", i, j, k);
                }
    }

    std::array<double, 6> d_;
};

/// Bordered Cayley-Menger determinant of k points (2 <= k <= 5) given the k(k-1)/2 pairwise distances
/// in lexicographic pair order.
inline double cayley_menger_det(std::span<const double> distances, std::size_t k)
{
    if (k < 2 || k > 5) throw ArgumentError("cayley_menger_det: k must be in 2..5");
    if (distances.size() != k * (k - 1) / 2)
        throw ArgumentError("cayley_menger_det: expected " + std::to_string(k * (k - 1) / 2) + " distances, got " +
                            std::to_string(distances.size()));
    for (double v : distances)
        if (!(v >= 0.0)) throw ArgumentError("cayley_menger_det: distances must be >= 0");
    const std::size_t n = k + 1;
    // squared and eliminated in long double: nearly flat simplices cancel heavily
    std::vector<long double> m(n * n, 1.0L);
    m[0] = 0.0L;
    for (std::size_t i = 0; i < k; ++i) {
        m[(i + 1) * n + (i + 1)] = 0.0L;
        for (std::size_t j = i + 1; j < k; ++j) {
            const long double d = distances[pair_index(i, j, k)];
            m[(i + 1) * n + (j + 1)] = m[(j + 1) * n + (i + 1)] = d * d;
        }
    }
    return static_cast<double>(detail::lu_determinant(std::move(m), n));
}

inline double cayley_menger_det(const MetricQuadruple& q) { return cayley_menger_det(q.distances(), 4); }

/// Threshold under which |D| of a quadruple counts as zero. D is homogeneous of degree 6 in the distances.
inline double flat_threshold(const MetricQuadruple& q, double rel = 1e-9)
{
    return rel * std::pow(q.diameter(), 6);
}

struct SimplexVolume
{
    double parallelepiped = 0.0;
    double simplex = 0.0;
};

/// Volumes of the parallelepiped spanned by the edges at p1 and of the tetrahedron,
/// from D = 8 Vol_par^2. Throws DomainError(D) when D < 0, i.e. the quadruple is not realizable in R^3.
inline SimplexVolume simplex_volume(const MetricQuadruple& q, double rel = 1e-9)
{
    const double D = cayley_menger_det(q);
    if (D < -flat_threshold(q, rel))
        throw DomainError("quadruple is not embeddable in Euclidean 3-space (Cayley-Menger determinant < 0)", D);
    const double par = std::sqrt(std::max(D, 0.0) / 8.0);
    return {par, par / 6.0};
}

/// Area of a triangle from its sides via Area^2 = -D(p1,p2,p3) / 16.
inline double triangle_area(double a, double b, double c, Tolerance tol = {})
{
    if (!(a >= 0 && b >= 0 && c >= 0)) throw DomainError("triangle sides must be >= 0");
    const double slack = tol.bound(std::max({a, b, c}));
    if (a > b + c + slack || b > a + c + slack || c > a + b + slack)
        throw DomainError("triangle inequality violated");
    const std::array<double, 3> d{a, b, c};
    const double D = cayley_menger_det(d, 3);
    return std::sqrt(std::max(-D, 0.0) / 16.0);
}

enum class Embeddability
{
    embeddable,     ///< a proper tetrahedron exists (D > 0)
    degenerate,     ///< realizable only as a flat configuration (D = 0)
    not_embeddable, ///< D < 0
};

inline Embeddability embeddability_R3(const MetricQuadruple& q, double rel = 1e-9)
{
    const double D = cayley_menger_det(q);
    const double thr = flat_threshold(q, rel);
    if (D > thr) return Embeddability::embeddable;
    if (D >= -thr) return Embeddability::degenerate;
    return Embeddability::not_embeddable;
}

/// True iff the six distances are realized by four points of R^3 (flat realizations included).
inline bool is_embeddable_R3(const MetricQuadruple& q, double rel = 1e-9)
{
    return embeddability_R3(q, rel) != Embeddability::not_embeddable;
}

/// A geodesic triple (first, middle, last): d(first,last) = d(first,middle) + d(middle,last).
struct GeodesicTriple
{
    std::size_t first = 0, middle = 0, last = 0;
    std::size_t apex = 0;
    double defect = 0.0; ///< d(first,middle) + d(middle,last) - d(first,last)
};

struct QuadrupleClass
{
    bool is_linear = false;
    bool is_sd_quad = false;
    bool is_degenerate = false;
    std::optional<GeodesicTriple> geodesic; ///< set iff is_sd_quad: the triple with the smallest defect
    std::optional<bool> is_planar;          ///< filled in by classify_with_planarity once a curvature is known
};

/// All geodesic triples of q within absolute tolerance tol, each unordered triple reported once.
inline std::vector<GeodesicTriple> geodesic_triples(const MetricQuadruple& q, double tol)
{
    std::vector<GeodesicTriple> out;
    for (std::size_t m = 0; m < 4; ++m)
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = a + 1; b < 4; ++b) {
                if (a == m || b == m) continue;
                const double defect = q.d(a, m) + q.d(m, b) - q.d(a, b);
                if (std::abs(defect) <= tol) {
                    const std::size_t apex = 6 - a - b - m;
                    out.push_back({a, m, b, apex, defect});
                }
            }
    return out;
}

/// Whether the quadruple is isometric to four points of the real line.
inline bool is_linear_quadruple(const MetricQuadruple& q, double tol)
{
    std::array<std::size_t, 4> ord{0, 1, 2, 3};
    do {
        if (ord[0] > ord[3]) continue; // a line order and its reverse are the same
        const double ab = q.d(ord[0], ord[1]), bc = q.d(ord[1], ord[2]), cd = q.d(ord[2], ord[3]);
        if (std::abs(q.d(ord[0], ord[2]) - ab - bc) <= tol && std::abs(q.d(ord[1], ord[3]) - bc - cd) <= tol &&
            std::abs(q.d(ord[0], ord[3]) - ab - bc - cd) <= tol)
            return true;
    } while (std::next_permutation(ord.begin(), ord.end()));
    return false;
}

/// Detects semi-dependence (a geodesic triple), linearity and degeneracy, all with absolute tolerance tol.
inline QuadrupleClass classify_quadruple(const MetricQuadruple& q, double tol)
{
    QuadrupleClass c;
    c.is_degenerate = q.min_distance() <= tol;
    auto triples = geodesic_triples(q, tol);
    if (!triples.empty()) {
        c.is_sd_quad = true;
        c.geodesic = *std::min_element(triples.begin(), triples.end(), [](const auto& x, const auto& y) {
            return std::abs(x.defect) < std::abs(y.defect);
        });
    }
    c.is_linear = c.is_sd_quad && is_linear_quadruple(q, tol);
    return c;
}

} // namespace metcurv

#pragma once

// Coordinate-based reference computations for the tests. Deliberately written without the library's own
// linear algebra so that a shared bug cannot make both sides agree.

#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using P3 = std::array<double, 3>;

inline P3 sub(const P3& a, const P3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline double dot(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline P3 cross(const P3& a, const P3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dist(const P3& a, const P3& b) { return std::sqrt(dot(sub(a, b), sub(a, b))); }

inline double det3(const std::array<P3, 3>& m)
{
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Gram determinant of the edge vectors p2-p1, p3-p1, p4-p1.
inline double gram_det(const P3& p1, const P3& p2, const P3& p3, const P3& p4)
{
    const std::array<P3, 3> e{sub(p2, p1), sub(p3, p1), sub(p4, p1)};
    std::array<P3, 3> g{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g[i][j] = dot(e[i], e[j]);
    return det3(g);
}

inline double tetra_volume(const P3& p1, const P3& p2, const P3& p3, const P3& p4)
{
    return std::abs(dot(sub(p2, p1), cross(sub(p3, p1), sub(p4, p1)))) / 6.0;
}

/// Circumcenter from 2 (p_i - p_1) . c = |p_i|^2 - |p_1|^2 by Cramer's rule.
inline P3 circumcenter(const P3& p1, const P3& p2, const P3& p3, const P3& p4)
{
    const std::array<P3, 3> a{sub(p2, p1), sub(p3, p1), sub(p4, p1)};
    const P3 rhs{0.5 * (dot(p2, p2) - dot(p1, p1)), 0.5 * (dot(p3, p3) - dot(p1, p1)), 0.5 * (dot(p4, p4) - dot(p1, p1))};
    const double d = det3(a);
    P3 c{};
    for (int col = 0; col < 3; ++col) {
        auto m = a;
        for (int row = 0; row < 3; ++row) m[row][col] = rhs[row];
        c[col] = det3(m) / d;
    }
    return c;
}

/// Distances d12, d13, d14, d23, d24, d34 of four points.
inline std::array<double, 6> six(const P3& a, const P3& b, const P3& c, const P3& d)
{
    return {dist(a, b), dist(a, c), dist(a, d), dist(b, c), dist(b, d), dist(c, d)};
}

/// Point on the unit sphere from longitude/latitude.
inline P3 sphere_point(double lon, double lat)
{
    return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

inline double great_circle(const P3& a, const P3& b) { return std::atan2(std::sqrt(dot(cross(a, b), cross(a, b))), dot(a, b)); }

/// Hyperboloid model of curvature -1: point at polar coordinates (r, theta) around the origin.
struct H3
{
    double t, x, y;
};
inline H3 hyperbolic_point(double r, double theta) { return {std::cosh(r), std::sinh(r) * std::cos(theta), std::sinh(r) * std::sin(theta)}; }
inline double hyperbolic_distance(const H3& a, const H3& b)
{
    const double b_ = a.t * b.t - a.x * b.x - a.y * b.y;
    return std::acosh(std::max(1.0, b_));
}

/// Plain cofactor-expansion determinant for tiny matrices.
inline double det_small(std::vector<std::vector<double>> m)
{
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<double>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<double> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        s += (c % 2 ? -1.0 : 1.0) * m[0][c] * det_small(minor);
    }
    return s;
}

inline P3 random_point(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> u(lo, hi);
    return {u(rng), u(rng), u(rng)};
}

} // namespace oracle

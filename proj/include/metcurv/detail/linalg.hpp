#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace metcurv::detail {

/// Determinant of a dense n x n row-major matrix by LU with partial pivoting, in the precision of Real.
template <class Real>
Real lu_determinant(std::vector<Real> m, std::size_t n)
{
    Real det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        Real best = std::abs(m[c * n + c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(m[r * n + c]) > best) {
                best = std::abs(m[r * n + c]);
                piv = r;
            }
        }
        if (best == 0) return 0;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m[c * n + k], m[piv * n + k]);
            det = -det;
        }
        const Real d = m[c * n + c];
        det *= d;
        for (std::size_t r = c + 1; r < n; ++r) {
            const Real f = m[r * n + c] / d;
            if (f == 0) continue;
            for (std::size_t k = c + 1; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
        }
    }
    return det;
}

/// n is small (<= 6) everywhere in this library.
inline double determinant(std::span<const double> a, std::size_t n)
{
    return lu_determinant(std::vector<double>(a.begin(), a.end()), n);
}

template <std::size_t N>
double determinant(const std::array<double, N * N>& a)
{
    return determinant(std::span<const double>(a.data(), a.size()), N);
}

/// Principal minor of a row-major n x n matrix on the given index subset.
inline double principal_minor(std::span<const double> a, std::size_t n, std::span<const std::size_t> idx)
{
    const std::size_t k = idx.size();
    std::vector<double> sub(k * k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) sub[r * k + c] = a[idx[r] * n + idx[c]];
    return determinant(sub, k);
}

/// det(J - E) for a symmetric matrix E with zero diagonal and J the all-ones matrix,
/// evaluated as det(-E) - det([[0, 1^T], [1, -E]]) so that no cancellation against
/// the dominant rank-one part occurs when the entries of E are tiny.
inline double det_ones_minus(std::span<const double> e, std::size_t n)
{
    std::vector<double> neg(n * n);
    for (std::size_t i = 0; i < n * n; ++i) neg[i] = -e[i];
    const std::size_t b = n + 1;
    std::vector<double> bordered(b * b, 1.0);
    bordered[0] = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) bordered[(r + 1) * b + (c + 1)] = neg[r * n + c];
    return determinant(neg, n) - determinant(bordered, b);
}

struct Vec3
{
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return s * a; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) { return (1.0 / norm(a)) * a; }
inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }

/// Angle between two vectors, accurate for nearly parallel and nearly antiparallel inputs.
inline double angle_between(Vec3 a, Vec3 b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

} // namespace metcurv::detail

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "metcurv/embedding_curvature.hpp"
#include "metcurv/root_finding.hpp"
#include "oracles.hpp"

using namespace metcurv;
using std::numbers::pi;

namespace {

const double s2 = std::sqrt(2.0);
const double tet = std::acos(-1.0 / 3.0); // edge of the regular tetrahedron inscribed in the unit sphere

MetricQuadruple equal(double d) { return MetricQuadruple(d, d, d, d, d, d); }

MetricQuadruple sphere_quad(const std::array<oracle::P3, 4>& p, double R = 1.0)
{
    std::array<double, 6> d{};
    std::size_t k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) d[k++] = R * oracle::great_circle(p[i], p[j]);
    return MetricQuadruple(d);
}

MetricQuadruple hyperbolic_quad(const std::array<oracle::H3, 4>& p)
{
    std::array<double, 6> d{};
    std::size_t k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) d[k++] = oracle::hyperbolic_distance(p[i], p[j]);
    return MetricQuadruple(d);
}

} // namespace

TEST(Bisect, FindsRootAndRejectsNonBracket)
{
    auto f = [](double x) { return x * x - 2.0; };
    const auto r = bisect(f, 0.0, 2.0, 1e-14);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x, std::sqrt(2.0), 1e-12);
    EXPECT_THROW(bisect(f, 2.0, 3.0, 1e-12), ArgumentError);
    EXPECT_EQ(uniform_grid(0.0, 1.0, 4).size(), 5u);
    EXPECT_DOUBLE_EQ(uniform_grid(-1.0, 1.0, 4)[2], 0.0);
}

TEST(FlatResidual, Examples)
{
    EXPECT_NEAR(flat_residual(MetricQuadruple(1, s2, 1, 1, s2, 1)), 0.0, 1e-12);
    EXPECT_NEAR(flat_residual(equal(1.0)), 4.0, 1e-12);
    // four points pairwise pi/2 apart form a regular tetrahedron in R^3, which has volume
    EXPECT_GT(flat_residual(equal(pi / 2)), 1.0);
}

TEST(SphericalResidual, RegularSphericalTetrahedron)
{
    const auto r = spherical_residual(equal(tet), 1.0);
    EXPECT_NEAR(r.value, 0.0, 1e-14);
    EXPECT_TRUE(r.admissible());
}

TEST(SphericalResidual, AllRightAnglesGiveIdentityMatrix)
{
    // cos(pi/2) = 0 on every off-diagonal entry: the matrix is the identity
    const auto r = spherical_residual(equal(pi / 2), 1.0);
    EXPECT_NEAR(r.value, 1.0, 1e-14);
    EXPECT_TRUE(r.admissible());
}

TEST(SphericalResidual, EqualEdgesClosedForm)
{
    // all off-diagonal entries c: det = (1 - c)^3 (1 + 3c)
    const double c = std::cos(2.0);
    const auto r = spherical_residual(equal(1.0), 4.0);
    EXPECT_NEAR(r.value, std::pow(1 - c, 3) * (1 + 3 * c), 1e-13);
    EXPECT_TRUE(r.distances_ok);
    const double brute = oracle::det_small({{1, c, c, c}, {c, 1, c, c}, {c, c, 1, c}, {c, c, c, 1}});
    EXPECT_NEAR(r.value, brute, 1e-13);
}

TEST(SphericalResidual, DistanceBoundAndPreconditions)
{
    EXPECT_FALSE(spherical_residual(equal(1.0), 10.0).distances_ok);
    EXPECT_THROW(spherical_residual(equal(1.0), 0.0), ArgumentError);
    EXPECT_THROW(hyperbolic_residual(equal(1.0), 1.0), ArgumentError);
}

TEST(SphericalResidual, VanishesOnSpherePoints)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 200; ++t) {
        std::array<oracle::P3, 4> p{};
        for (auto& x : p) x = oracle::sphere_point(pi * u(rng), 0.5 * pi * u(rng));
        const double R = 0.5 + std::abs(u(rng));
        const auto q = sphere_quad(p, R);
        EXPECT_NEAR(spherical_residual(q, 1.0 / (R * R)).value, 0.0, 1e-12);
    }
}

TEST(HyperbolicResidual, VanishesOnHyperboloidPoints)
{
    const std::array<oracle::H3, 4> p{oracle::hyperbolic_point(0.0, 0.0), oracle::hyperbolic_point(0.8, 0.3),
                                      oracle::hyperbolic_point(1.1, 2.0), oracle::hyperbolic_point(0.5, 4.0)};
    EXPECT_NEAR(hyperbolic_residual(hyperbolic_quad(p), -1.0), 0.0, 1e-9);
}

TEST(HyperbolicResidual, DuplicatedPointIsZeroForAllCurvatures)
{
    const MetricQuadruple q(0.0, 1.0, 1.2, 1.0, 1.2, 0.9);
    for (double k : {-3.0, -1.0, -0.01}) EXPECT_NEAR(hyperbolic_residual(q, k), 0.0, 1e-12);
    for (double k : {0.01, 1.0}) EXPECT_NEAR(spherical_residual(q, k).value, 0.0, 1e-12);
}

TEST(Residual, ContinuousThroughZero)
{
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        const auto q = MetricQuadruple(oracle::six(oracle::random_point(rng), oracle::random_point(rng),
                                                   oracle::random_point(rng), oracle::random_point(rng)));
        const double g0 = normalized_residual(q, 0.0);
        if (std::abs(g0) < 1e-3) continue;
        // r(k) / (k/2)^3 -> D as k -> 0, from both sides
        for (double k : {-1e-6, 1e-6}) {
            const double t3 = std::pow(0.5 * k, 3);
            EXPECT_NEAR(embedding_residual(q, k) / t3, flat_residual(q), 1e-5 * std::abs(flat_residual(q)) + 1e-12);
            EXPECT_NEAR(normalized_residual(q, k), g0, 1e-5 * std::abs(g0));
        }
    }
}

TEST(Solver, NoEmbeddingCurvature)
{
    const auto sol = solve_embedding_curvature(MetricQuadruple(1, 1, 1, 2, 2, 2));
    EXPECT_TRUE(sol.roots.empty());
    EXPECT_LT(sol.scan_min, 0.0);
    EXPECT_GT(sol.scan_max, 0.0);
}

TEST(Solver, RegularSphericalTetrahedron)
{
    const auto sol = solve_embedding_curvature(equal(tet));
    ASSERT_EQ(sol.roots.size(), 1u);
    EXPECT_NEAR(sol.roots[0].kappa, 1.0, 1e-9);
    EXPECT_EQ(sol.roots[0].kind, CurvatureCase::spherical);
    EXPECT_TRUE(sol.roots[0].admissible);
}

TEST(Solver, EqualRightAngleEdgesHaveOneRoot)
{
    // Equal edges e embed in S_k exactly when sqrt(k) e is the regular spherical tetrahedron edge, so the only
    // root is (acos(-1/3) / (pi/2))^2; neither 0 (D > 0) nor 1 (identity matrix) solves the equation.
    const auto sol = solve_embedding_curvature(equal(pi / 2));
    ASSERT_EQ(sol.roots.size(), 1u);
    EXPECT_NEAR(sol.roots[0].kappa, std::pow(tet / (pi / 2), 2), 1e-9);
    EXPECT_NEAR(sol.roots[0].kappa, 1.47949977, 1e-8);
}

TEST(Solver, EqualEdgesScaleInversely)
{
    for (double e : {0.1, 0.5, 2.0}) {
        const auto sol = solve_embedding_curvature(equal(e));
        ASSERT_EQ(sol.roots.size(), 1u);
        EXPECT_NEAR(sol.roots[0].kappa, std::pow(tet / e, 2), 1e-9 * std::pow(tet / e, 2));
    }
}

TEST(Solver, UnitSquareHasFlatRoot)
{
    const auto sol = solve_embedding_curvature(MetricQuadruple(1, s2, 1, 1, s2, 1));
    ASSERT_FALSE(sol.roots.empty());
    EXPECT_EQ(sol.roots[0].kind, CurvatureCase::flat);
    EXPECT_EQ(sol.roots[0].kappa, 0.0);
    for (std::size_t i = 1; i < sol.roots.size(); ++i) EXPECT_GT(sol.roots[i].kappa, sol.roots[i - 1].kappa);
}

TEST(Solver, HyperbolicQuadruple)
{
    const std::array<oracle::H3, 4> p{oracle::hyperbolic_point(0.0, 0.0), oracle::hyperbolic_point(0.8, 0.3),
                                      oracle::hyperbolic_point(1.1, 2.0), oracle::hyperbolic_point(0.5, 4.0)};
    const auto sol = solve_embedding_curvature(hyperbolic_quad(p));
    bool found = false;
    for (const auto& r : sol.roots)
        if (std::abs(r.kappa + 1.0) < 1e-6) {
            found = true;
            EXPECT_EQ(r.kind, CurvatureCase::hyperbolic);
        }
    EXPECT_TRUE(found);
}

TEST(Solver, RejectsZeroDistance)
{
    EXPECT_THROW(solve_embedding_curvature(MetricQuadruple(0, 1, 1, 1, 1, 1)), ArgumentError);
}

TEST(Solver, RootsAreSortedAndSmall)
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 100; ++t) {
        std::array<oracle::P3, 4> p{};
        for (auto& x : p) x = oracle::sphere_point(pi * u(rng), 0.5 * pi * u(rng));
        const auto q = sphere_quad(p);
        const auto sol = solve_embedding_curvature(q);
        for (std::size_t i = 1; i < sol.roots.size(); ++i) EXPECT_LE(sol.roots[i - 1].kappa, sol.roots[i].kappa);
        for (const auto& r : sol.roots) EXPECT_LE(std::abs(normalized_residual(q, r.kappa)), 1e-9);
    }
}

TEST(Solver, AtMostTwoAdmissibleRootsOnRandomQuadruples)
{
    std::mt19937_64 rng(10);
    std::size_t checked = 0;
    for (int t = 0; t < 300; ++t) {
        const auto q = MetricQuadruple(oracle::six(oracle::random_point(rng), oracle::random_point(rng),
                                                   oracle::random_point(rng), oracle::random_point(rng)));
        const auto c = classify_quadruple(q, 1e-9 * q.diameter());
        if (c.is_linear || c.is_degenerate) continue;
        ++checked;
        EXPECT_LE(solve_embedding_curvature(q).admissible_roots().size(), 2u);
    }
    EXPECT_GT(checked, 250u);
}

TEST(Solver, SdQuadOnSphereHasOneAdmissibleRoot)
{
    // equator points at longitudes 0, 0.1, 0.2 and an apex above the middle one
    for (double h : {0.05, 0.1, 0.2}) {
        const std::array<oracle::P3, 4> p{oracle::sphere_point(0, 0), oracle::sphere_point(0.1, 0),
                                          oracle::sphere_point(0.2, 0), oracle::sphere_point(0.1 + 0.3 * h, h)};
        const auto sol = solve_embedding_curvature(sphere_quad(p));
        const auto adm = sol.admissible_roots();
        ASSERT_EQ(adm.size(), 1u) << "h=" << h;
        EXPECT_NEAR(adm[0].kappa, 1.0, 1e-3);
    }
}

TEST(Solver, RootsScaleAsInverseSquare)
{
    const std::array<oracle::P3, 4> p{oracle::sphere_point(0, 0), oracle::sphere_point(0.3, 0.1),
                                      oracle::sphere_point(-0.2, 0.4), oracle::sphere_point(0.1, -0.3)};
    const auto q = sphere_quad(p);
    const auto base = solve_embedding_curvature(q).admissible_roots();
    ASSERT_FALSE(base.empty());
    for (double s : {0.5, 3.0}) {
        const auto sc = solve_embedding_curvature(q.scaled(s)).admissible_roots();
        ASSERT_EQ(sc.size(), base.size());
        for (std::size_t i = 0; i < sc.size(); ++i) EXPECT_NEAR(sc[i].kappa, base[i].kappa / (s * s), 1e-8 / (s * s));
    }
}

TEST(Solver, KeepInadmissibleWidensOutput)
{
    const double p = pi;
    const MetricQuadruple q(1.5 * p, p, p, p, p, 1.5 * p);
    SolverOptions opt;
    opt.keep_inadmissible = true;
    opt.kappa_max = 4.0;
    const auto all = solve_embedding_curvature(q, opt);
    opt.keep_inadmissible = false;
    const auto adm = solve_embedding_curvature(q, opt);
    EXPECT_GE(all.roots.size(), adm.roots.size());
    for (const auto& r : adm.roots) EXPECT_TRUE(r.admissible);
    bool any_rejected = false;
    for (const auto& r : all.roots) any_rejected |= !r.admissible;
    EXPECT_TRUE(any_rejected);
}

TEST(Planarity, Examples)
{
    // a convex square: no vertex lies inside the triangle of the other three
    EXPECT_FALSE(is_planar_quadruple(MetricQuadruple(1, s2, 1, 1, s2, 1), 0.0));
    // p2 lies on the segment p1 p3: its three angles sum to 2 pi
    EXPECT_TRUE(is_planar_quadruple(MetricQuadruple(1, 2, s2, 1, 1, s2), 0.0));
    // centroid of an equilateral triangle
    const double r = 1.0 / std::sqrt(3.0);
    EXPECT_TRUE(is_planar_quadruple(MetricQuadruple(1, 1, r, 1, r, r), 0.0));
    EXPECT_THROW(is_planar_quadruple(equal(1.0), 0.0), DomainError);
}

TEST(Planarity, SphericalApexInsideTriangle)
{
    const std::array<oracle::P3, 4> p{oracle::sphere_point(0, 0.5), oracle::sphere_point(2 * pi / 3, 0.5),
                                      oracle::sphere_point(4 * pi / 3, 0.5), oracle::sphere_point(0, pi / 2)};
    const auto q = sphere_quad(p);
    EXPECT_TRUE(is_planar_quadruple(q, 1.0));
    const auto c = classify_with_planarity(q, 1e-12, 1.0);
    ASSERT_TRUE(c.is_planar.has_value());
    EXPECT_TRUE(*c.is_planar);
}

TEST(CurvatureCase, Names)
{
    EXPECT_STREQ(to_string(CurvatureCase::flat), "flat");
    EXPECT_STREQ(to_string(CurvatureCase::spherical), "spherical");
    EXPECT_STREQ(to_string(CurvatureCase::hyperbolic), "hyperbolic");
}

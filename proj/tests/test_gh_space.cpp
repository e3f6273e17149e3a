#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <numbers>
#include <random>

#include "gh_support.hpp"
#include "metcurv/gh_space.hpp"

using namespace metcurv;
using namespace gh_support;
using std::numbers::pi;

TEST(Hausdorff, Examples)
{
    const auto X = line_points({0, 1, 2, 5});
    const std::vector<std::size_t> A{0, 1}, B{2, 3}, all{0, 1, 2, 3};
    EXPECT_DOUBLE_EQ(hausdorff_distance(A, B, X), 4.0);
    EXPECT_DOUBLE_EQ(hausdorff_distance(A, A, X), 0.0);
    EXPECT_DOUBLE_EQ(hausdorff_distance(A, all, X), 4.0);
    EXPECT_THROW(hausdorff_distance({}, B, X), ArgumentError);
    const std::vector<std::size_t> bad{9};
    EXPECT_THROW(hausdorff_distance(A, bad, X), ArgumentError);
}

TEST(Dilatation, IdentityScalingConstant)
{
    const auto X = line_points({0, 1, 3});
    const auto Y = line_points({0, 2, 6});
    EXPECT_DOUBLE_EQ(dilatation({0, 1, 2}, X, X), 1.0);
    EXPECT_DOUBLE_EQ(dilatation({0, 1, 2}, X, Y), 2.0);
    EXPECT_DOUBLE_EQ(dilatation({1, 1, 1}, X, Y), 0.0);
    EXPECT_THROW(dilatation({0, 1}, X, Y), ArgumentError);
    EXPECT_THROW(dilatation({0, 1, 3}, X, Y), ArgumentError);
}

TEST(Lipschitz, Examples)
{
    const auto X = line_points({0, 1, 3});
    EXPECT_DOUBLE_EQ(lipschitz_distance(X, line_points({5, 7, 8})).value, 0.0);
    const auto L = lipschitz_distance(two_point(1), two_point(2));
    EXPECT_FALSE(L.is_infinite());
    EXPECT_NEAR(L.value, std::log(2.0), 1e-15);
    EXPECT_TRUE(lipschitz_distance(two_point(1), X).is_infinite());
}

TEST(Lipschitz, CapacityLimit)
{
    std::vector<double> xs(11);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
    EXPECT_THROW(lipschitz_distance(line_points(xs), line_points(xs)), CapacityError);
}

TEST(Distortion, Examples)
{
    const auto X = line_points({0, 1});
    const auto Y = line_points({0, 3});
    EXPECT_DOUBLE_EQ(distortion(Correspondence::from_map({0, 1}), X, Y), 2.0);
    Correspondence all;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) all.pairs.emplace_back(i, j);
    EXPECT_DOUBLE_EQ(distortion(all, X, Y), 3.0);
    Correspondence partial{{{0, 0}}};
    EXPECT_THROW(distortion(partial, X, Y), ArgumentError);
}

TEST(GHExact, DocumentedInstances)
{
    const auto X = line_points({0, 0.7, 1.9, 2.0});
    EXPECT_NEAR(gh_distance_exact(X, X).distance, 0.0, 1e-12);
    EXPECT_NEAR(gh_distance_exact(X, line_points({5, 5.1, 6.3, 7})).distance, 0.0, 1e-12);
    // a point against a sampled unit segment
    EXPECT_NEAR(gh_distance_exact(line_points({0}), line_points({0, 0.25, 0.5, 0.75, 1.0})).distance, 0.5, 1e-12);
    for (auto [a, b] : {std::pair{1.0, 3.0}, std::pair{0.2, 0.9}, std::pair{5.0, 5.0}})
        EXPECT_NEAR(gh_distance_exact(two_point(a), two_point(b)).distance, std::abs(a - b) / 2, 1e-12);
}

TEST(GHExact, CorrespondenceRealizesDistance)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        const auto X = random_space(rng, 5), Y = random_space(rng, 5);
        const auto r = gh_distance_exact(X, Y);
        EXPECT_NEAR(distortion(r.correspondence, X, Y), 2 * r.distance, 1e-12);
        const auto b = gh_bounds(X, Y);
        EXPECT_LE(b.lower, r.distance + 1e-12);
        EXPECT_GE(b.upper, r.distance - 1e-12);
    }
}

TEST(GHExact, CapacityLimit)
{
    const auto big = line_points({0, 1, 2, 3, 4, 5, 6});
    EXPECT_THROW(gh_distance_exact(big, big), CapacityError);
}

TEST(GHExact, MetricAxiomsOnRandomTriples)
{
    std::mt19937_64 rng(12);
    for (int t = 0; t < 200; ++t) {
        const auto X = random_space(rng, 5), Y = random_space(rng, 5), Z = random_space(rng, 5);
        const double xy = gh_distance_exact(X, Y).distance, yx = gh_distance_exact(Y, X).distance;
        const double yz = gh_distance_exact(Y, Z).distance, xz = gh_distance_exact(X, Z).distance;
        EXPECT_NEAR(gh_distance_exact(X, X).distance, 0.0, 1e-12);
        EXPECT_NEAR(xy, yx, 1e-12);
        EXPECT_GE(xy, 0.0);
        EXPECT_LE(xz, xy + yz + 1e-12);
    }
}

TEST(EpsilonIsometry, BothDirectionsByExhaustiveSearch)
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        const auto X = random_space(rng, 4), Y = random_space(rng, 4);
        const double d = gh_distance_exact(X, Y).distance;
        // d < eps implies a 2 eps-isometry exists
        const double eps = d + 1e-9;
        bool found = false;
        for_each_map(X.size(), Y.size(), [&](const PointMap& f) { found |= is_epsilon_isometry(f, X, Y, 2 * eps).ok; });
        EXPECT_TRUE(found);
        // any eps-isometry bounds d by 2 eps, strictly
        for_each_map(X.size(), Y.size(), [&](const PointMap& f) {
            const double e = isometry_eps(f, X, Y);
            if (e > 0) EXPECT_LT(d, 2 * e);
            else EXPECT_EQ(d, 0.0);
        });
    }
}

TEST(EpsilonIsometry, Witnesses)
{
    const auto X = line_points({0, 1});
    const auto Y = line_points({0, 1, 3});
    const auto c = is_epsilon_isometry({0, 1}, X, Y, 0.5);
    EXPECT_FALSE(c.ok);
    EXPECT_FALSE(c.distortion_witness.has_value());
    ASSERT_TRUE(c.uncovered_witness.has_value());
    EXPECT_EQ(*c.uncovered_witness, 2u);
    EXPECT_DOUBLE_EQ(c.net_gap, 2.0);
    EXPECT_TRUE(is_epsilon_isometry({0, 1}, X, Y, 2.0).ok);
}

TEST(EpsilonNet, CircleAndExtremes)
{
    const auto X = circle_sample(100);
    const auto net = epsilon_net(X, 0.2 * pi);
    EXPECT_LE(net.max_gap, net.epsilon);
    EXPECT_LE(net.net_indices.size(), 6u);
    EXPECT_TRUE(std::is_sorted(net.net_indices.begin(), net.net_indices.end()));
    EXPECT_EQ(epsilon_net(X, X.diameter()).net_indices.size(), 1u);
    EXPECT_EQ(epsilon_net(X, 1e-6).net_indices.size(), 100u);
    EXPECT_THROW(epsilon_net(X, 0.0), ArgumentError);
}

TEST(EpsilonNet, CoversAtEveryRadius)
{
    std::mt19937_64 rng(14);
    const auto X = random_space(rng, 5);
    for (double eps : {0.05, 0.2, 0.6, 1.5}) EXPECT_LE(epsilon_net(X, eps).max_gap, eps);
}

TEST(EpsilonDelta, MatchedNets)
{
    const auto X = line_points({0, 1, 2, 3});
    const auto Y = line_points({0, 1.05, 2, 3.1});
    const std::vector<std::size_t> net{0, 2};
    EXPECT_TRUE(epsilon_delta_check(X, Y, net, net, 1.1, 0.01));
    // the pair distortion is 0 here, so only the strict inequality fails
    EXPECT_FALSE(epsilon_delta_check(X, Y, net, net, 1.1, 0.0));
    EXPECT_FALSE(epsilon_delta_check(X, Y, net, net, 0.5, 0.01));
    const std::vector<std::size_t> far{0, 3};
    EXPECT_FALSE(epsilon_delta_check(X, Y, far, far, 1.5, 0.05));
    EXPECT_TRUE(epsilon_delta_check(X, Y, far, far, 1.5, 0.11));
    const std::vector<std::size_t> one{0};
    EXPECT_THROW(epsilon_delta_check(X, Y, net, one, 1.0, 0.1), ArgumentError);
}

TEST(GraphApproximation, CircleIsCertified)
{
    const auto X = circle_sample(2000);
    for (double eps : {0.3, 0.15}) {
        const auto g = build_graph_approximation(X, eps, 0.01);
        EXPECT_TRUE(g.dominates);
        EXPECT_TRUE(g.certified);
        EXPECT_LE(g.max_gap, eps);
        EXPECT_FALSE(g.warnings.empty());
        const std::size_t n = g.vertices.size();
        for (std::size_t i = 0; i < n; i += 17)
            for (std::size_t j = 0; j < n; j += 13) {
                const double dx = X(g.vertices[i], g.vertices[j]);
                EXPECT_GE(g.metric(i, j), dx - 1e-12);
                EXPECT_LE(g.metric(i, j), dx + eps);
            }
    }
}

TEST(GraphApproximation, PlanarGridDominatesAndStaysClose)
{
    // 100 x 100 grid of the unit square with the Euclidean metric (a convex set is a length space)
    const std::size_t m = 100, n = m * m;
    std::vector<double> d(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const double dx = (static_cast<double>(a % m) - static_cast<double>(b % m)) / (m - 1);
            const double dy = (static_cast<double>(a / m) - static_cast<double>(b / m)) / (m - 1);
            d[a * n + b] = std::hypot(dx, dy);
        }
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    const FiniteMetricSpace X(labels, d, trusted_triangles);
    const auto g = build_graph_approximation(X, 0.2, 0.05);
    EXPECT_TRUE(g.dominates);
    EXPECT_TRUE(g.certified);
    EXPECT_GT(g.max_gap, 0.0);
}

TEST(GraphApproximation, DisconnectedNetThrows)
{
    const auto X = line_points({0, 0.1, 5, 5.1});
    EXPECT_THROW(build_graph_approximation(X, 1.0, 0.05), ConnectivityError);
    EXPECT_THROW(build_graph_approximation(X, 0.0, 0.05), ArgumentError);
}

TEST(EpsilonDelta, ApproximationBoundsGHDistance)
{
    // every matched pair of nets: subsets of X paired with any images in Y
    std::mt19937_64 rng(15);
    for (int t = 0; t < 60; ++t) {
        const auto X = random_space(rng, 4), Y = random_space(rng, 4);
        const double d = gh_distance_exact(X, Y).distance;
        for (unsigned mask = 1; mask < (1u << X.size()); ++mask) {
            std::vector<std::size_t> xs;
            for (std::size_t i = 0; i < X.size(); ++i)
                if (mask >> i & 1u) xs.push_back(i);
            for_each_map(xs.size(), Y.size(), [&](const PointMap& ys) {
                const double eps = std::max(covering_radius(xs, X), covering_radius(ys, Y));
                double dis = 0.0;
                for (std::size_t i = 0; i < xs.size(); ++i)
                    for (std::size_t j = 0; j < xs.size(); ++j) dis = std::max(dis, std::abs(X(xs[i], xs[j]) - Y(ys[i], ys[j])));
                const double delta = dis + 1e-12;
                ASSERT_TRUE(epsilon_delta_check(X, Y, xs, ys, eps, delta));
                EXPECT_LT(d, 2 * eps + delta);
            });
        }
    }
}

TEST(EpsilonDelta, CloseSpacesAreFiveEpsApproximations)
{
    std::mt19937_64 rng(16);
    for (int t = 0; t < 60; ++t) {
        const auto X = random_space(rng, 4), Y = random_space(rng, 4);
        const double eps = gh_distance_exact(X, Y).distance + 1e-9;
        std::vector<std::size_t> all(X.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        bool found = false;
        for_each_map(X.size(), Y.size(), [&](const PointMap& f) { found |= epsilon_delta_check(X, Y, all, f, 5 * eps, 5 * eps); });
        EXPECT_TRUE(found);
    }
}

// Net-graph approximation of a sampled unit circle, and GH distances between tiny spaces.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "metcurv/gh_space.hpp"

int main()
{
    using namespace metcurv;
    const std::size_t n = 1000;
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double t = 2 * std::numbers::pi * std::abs(double(i) - double(j)) / n;
            d[i * n + j] = std::min(t, 2 * std::numbers::pi - t);
        }
    const FiniteMetricSpace circle(FiniteMetricSpace::default_labels(n), d, trusted_triangles);
    for (double eps : {0.4, 0.2, 0.1}) {
        const auto g = build_graph_approximation(circle, eps, 0.01);
        std::printf("eps %.3f: %zu vertices, %zu edges, max gap %.3g, certified %s\n", eps, g.vertices.size(),
                    g.edges.size(), g.max_gap, g.certified ? "yes" : "no");
    }
    const auto point = FiniteMetricSpace::from_rows({{0}});
    const auto segment = FiniteMetricSpace::from_rows({{0, 0.5, 1}, {0.5, 0, 0.5}, {1, 0.5, 0}});
    const auto triangle = FiniteMetricSpace::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    std::printf("d_GH(point, segment) = %g\n", gh_distance_exact(point, segment).distance);
    std::printf("d_GH(segment, triangle) = %g\n", gh_distance_exact(segment, triangle).distance);
}

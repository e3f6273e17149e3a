// Wald and Robinson curvature at a few points of a sampled sphere of radius 2 (Gauss curvature 0.25).

#include <cstdio>

#include "metcurv/metcurv.hpp"

int main()
{
    using namespace metcurv;
    const auto s = sample_analytic(SphereSpec{2.0}, 2000, 1);
    const std::vector<double> scales{0.8, 0.4, 0.2, 0.1};
    std::printf("%-6s %-8s %-12s %-12s %-12s\n", "vertex", "scale", "wald", "robinson", "bound");
    for (std::size_t p : {0u, 500u, 1500u}) {
        const auto w = wald_curvature_at_point(s, p, scales);
        const auto r = gauss_estimate(s, p, scales);
        for (std::size_t k = 0; k < scales.size(); ++k)
            std::printf("%-6zu %-8.3g %-12.6f %-12.6f %-12.3g\n", p, scales[k], w[k].kappa, r.rows[k].median_K,
                        r.rows[k].max_error_bound);
    }
}

// Embedding curvatures of a few hand-picked quadruples, ordered d12 d13 d14 d23 d24 d34.

#include <cstdio>
#include <numbers>

#include "metcurv/metcurv.hpp"

int main()
{
    using namespace metcurv;
    using std::numbers::pi;
    const struct
    {
        const char* name;
        MetricQuadruple q;
    } cases[] = {
        {"regular, edge 1", MetricQuadruple(1, 1, 1, 1, 1, 1)},
        {"unit square", MetricQuadruple(1, std::numbers::sqrt2, 1, 1, std::numbers::sqrt2, 1)},
        {"edges 1 and 2", MetricQuadruple(1, 1, 1, 2, 2, 2)},
        {"all pi/2", MetricQuadruple(pi / 2, pi / 2, pi / 2, pi / 2, pi / 2, pi / 2)},
        {"pi and 3pi/2", MetricQuadruple(1.5 * pi, pi, pi, pi, pi, 1.5 * pi)},
    };
    for (const auto& c : cases) {
        const auto sol = solve_embedding_curvature(c.q);
        std::printf("%-16s D = %-12.6g roots:", c.name, cayley_menger_det(c.q.distances(), 4));
        if (sol.roots.empty()) std::printf(" none");
        for (const auto& r : sol.roots) std::printf(" %.9g (%s)", r.kappa, to_string(r.kind));
        std::printf("\n");
    }
}

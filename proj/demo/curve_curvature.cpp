// Menger and Haantjes curvature of an ellipse (semi-axes 2 and 1) at its vertices.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "metcurv/curve_curvature.hpp"

int main()
{
    using namespace metcurv;
    const double h = 1e-3;
    const int half = 40;
    for (double t0 : {0.0, std::numbers::pi / 2}) {
        std::vector<PolylineCurve<double>::Point> pts;
        for (int i = -half; i <= half; ++i) pts.push_back({2 * std::cos(t0 + h * i), std::sin(t0 + h * i), 0});
        const auto r = curvature_consistency(PolylineCurve<double>(pts), half, {16 * h, 8 * h, 4 * h});
        const double exact = t0 == 0.0 ? 2.0 : 0.25;
        std::printf("t=%.4f menger %.9f haantjes %.9f exact %.9f gap %.2e\n", t0, r.alt.value, r.haantjes.value, exact,
                    r.gap);
    }
}

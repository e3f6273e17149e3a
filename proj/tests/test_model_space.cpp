#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "metcurv/model_space.hpp"

using namespace metcurv;
using std::numbers::pi;

TEST(ModelSide, Examples)
{
    EXPECT_NEAR(model_side(0.0, 3, 4, pi / 2), 5.0, 1e-14);
    EXPECT_NEAR(model_side(1.0, pi / 2, pi / 2, pi / 2), pi / 2, 1e-14);
    const double c = std::cosh(1.0);
    EXPECT_NEAR(model_side(-1.0, 1, 1, pi / 2), std::acosh(c * c), 1e-12);
}

TEST(ModelSide, ScalesWithCurvature)
{
    // S_k with lengths multiplied by 1/sqrt(k) is S_1
    for (double k : {0.25, 4.0})
        EXPECT_NEAR(model_side(k, 0.3, 0.5, 1.1), model_side(1.0, 0.3 * std::sqrt(k), 0.5 * std::sqrt(k), 1.1) / std::sqrt(k), 1e-13);
}

TEST(ModelSide, DegenerateAngles)
{
    EXPECT_NEAR(model_side(1.0, 0.4, 0.7, 0.0), 0.3, 1e-13);
    EXPECT_NEAR(model_side(-2.0, 0.4, 0.7, pi), 1.1, 1e-12);
}

TEST(ModelSide, RejectsOutOfRange)
{
    EXPECT_THROW(model_side(1.0, 4.0, 1.0, 1.0), DomainError);
    EXPECT_THROW(model_side(0.0, 1.0, 1.0, 4.0), DomainError);
}

TEST(ModelSide, StrictlyDecreasingInCurvature)
{
    for (double b : {0.2, 0.6, 1.0})
        for (double c : {0.3, 0.9})
            for (double alpha : {0.3, 1.2, 2.5}) {
                double prev = std::numeric_limits<double>::infinity();
                for (double k = -2.0; k <= 2.0; k += 0.25) {
                    const double s = model_side(k, b, c, alpha);
                    EXPECT_LT(s, prev) << "b=" << b << " c=" << c << " alpha=" << alpha << " k=" << k;
                    prev = s;
                }
            }
}

TEST(ModelAngle, InvertsModelSide)
{
    for (double k : {-1.5, -0.2, 0.0, 0.3, 1.0})
        for (double alpha : {0.2, 1.0, 2.0, 3.0}) {
            const double a = model_side(k, 0.5, 0.8, alpha);
            EXPECT_NEAR(model_angle(k, 0.5, 0.8, a), alpha, 1e-7) << "k=" << k;
        }
}

TEST(ModelAngle, StrictlyIncreasingInCurvature)
{
    for (double a : {0.4, 0.9})
        for (double b : {0.5, 0.7}) {
            const double c = 0.6;
            double prev = -1.0;
            for (double k = -2.0; k <= 2.0; k += 0.25) {
                const double ang = model_angle(k, b, c, a);
                EXPECT_GT(ang, prev);
                prev = ang;
            }
        }
}

TEST(ModelAngle, RejectsNonTriangles)
{
    EXPECT_THROW(model_angle(0.0, 1.0, 1.0, 3.0), DomainError);
    EXPECT_THROW(model_angle(1.0, 2.0, 2.0, 3.0), DomainError); // perimeter beyond a great circle
}

TEST(ModelDiameter, Values)
{
    EXPECT_NEAR(model_diameter(4.0), pi / 2, 1e-15);
    EXPECT_TRUE(std::isinf(model_diameter(0.0)));
    EXPECT_TRUE(std::isinf(model_diameter(-1.0)));
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ckcontact/dual.hpp"
#include "ckcontact/errors.hpp"
#include "ckcontact/ktrig.hpp"
#include "ckcontact/rng.hpp"

using namespace ckc;

TEST(Ktrig, ReducesToCircularHyperbolicAndParabolic) {
    for (double x : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
        EXPECT_NEAR(ck_cos(1.0, x), std::cos(x), 1e-15);
        EXPECT_NEAR(ck_sin(1.0, x), std::sin(x), 1e-15);
        EXPECT_NEAR(ck_cos(-1.0, x), std::cosh(x), 1e-14);
        EXPECT_NEAR(ck_sin(-1.0, x), std::sinh(x), 1e-14);
        EXPECT_EQ(ck_cos(0.0, x), 1.0);
        EXPECT_EQ(ck_sin(0.0, x), x);
        EXPECT_EQ(ck_tan(0.0, x), x);
    }
}

TEST(Ktrig, ScalesWithCurvature) {
    EXPECT_NEAR(ck_cos(4.0, 0.5), std::cos(1.0), 1e-15);
    EXPECT_NEAR(ck_sin(4.0, 0.5), std::sin(1.0) / 2, 1e-15);
    EXPECT_NEAR(ck_sin(-0.25, 2.0), std::sinh(1.0) * 2, 1e-14);
}

TEST(Ktrig, PythagoreanIdentity) {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const double k = rng.uniform(-2, 2), x = rng.uniform(-3, 3);
        const double c = ck_cos(k, x), s = ck_sin(k, x);
        EXPECT_NEAR(c * c + k * s * s, 1.0, 1e-12);
    }
}

TEST(Ktrig, DerivativesThroughDuals) {
    for (double k : {-1.3, 0.0, 0.8}) {
        const D1 x = make_variable(0.6);
        EXPECT_NEAR(ck_sin(k, x).d, ck_cos(k, 0.6), 1e-14);
        EXPECT_NEAR(ck_cos(k, x).d, -k * ck_sin(k, 0.6), 1e-14);
        const double c = ck_cos(k, 0.6);
        EXPECT_NEAR(ck_tan(k, x).d, 1.0 / (c * c), 1e-13);
    }
}

TEST(Ktrig, ContinuousAcrossZeroCurvature) {
    for (double x = -10; x <= 10; x += 0.5) {
        const double e = 1e-8;
        EXPECT_NEAR(ck_cos(e, x), 1.0 - e * x * x / 2, 1e-12);
        EXPECT_NEAR(ck_cos(-e, x), 1.0 + e * x * x / 2, 1e-12);
        EXPECT_NEAR(ck_sin(e, x), x - e * x * x * x / 6, 1e-12);
    }
}

TEST(Ktrig, TangentPoleThrows) {
    EXPECT_THROW(ck_tan(1.0, std::numbers::pi / 2), PoleError);
    EXPECT_NO_THROW(ck_tan(-1.0, 20.0));
}

TEST(Ktrig, AngleRecovery) {
    for (double k : {-1.0, 0.0, 1.0}) {
        const double x = 0.7;
        EXPECT_NEAR(ck_atan2(k, ck_sin(k, x), ck_cos(k, x)), x, 1e-13);
    }
}

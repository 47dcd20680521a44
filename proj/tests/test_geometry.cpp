#include <gtest/gtest.h>

#include <numbers>

#include "ckcontact/calculus.hpp"
#include "ckcontact/geometry.hpp"
#include "ckcontact/rng.hpp"

using namespace ckc;

TEST(Geometry, NineSpacesAndPatterns) {
    EXPECT_EQ(nine_spaces().size(), 9u);
    EXPECT_EQ(sign_patterns().size(), 27u);
    for (const auto& k : nine_spaces()) EXPECT_EQ(k.k3, 1.0);
}

TEST(Geometry, KappaProducts) {
    const KappaTriple k{-1, 2, 3};
    EXPECT_EQ(k.k02(), -2.0);
    EXPECT_EQ(k.k03(), -6.0);
    EXPECT_EQ(k.kab(3, 1), 6.0);
    EXPECT_THROW(k.kab(1, 1), IndexError);
    EXPECT_EQ(k.str(), "(-1,2,3)");
}

TEST(Geometry, EmbeddingsLieOnTheQuadric) {
    Rng rng(1);
    for (const auto& k : nine_spaces())
        for (int i = 0; i < 50; ++i) {
            Vec a = embed_parallel(k, rng.box(parallel_box(k)));
            Vec b = embed_polar(k, rng.box(polar_box(k)));
            EXPECT_NEAR(quadratic_form(k, a, a), 1.0, 1e-12) << k.str();
            EXPECT_NEAR(quadratic_form(k, b, b), 1.0, 1e-12) << k.str();
        }
}

TEST(Geometry, ChartsInvertEmbeddings) {
    Rng rng(2);
    for (const auto& k : nine_spaces())
        for (int i = 0; i < 20; ++i) {
            Vec c = rng.box(parallel_box(k));
            EXPECT_LT(max_abs_diff(parallel_from_ambient(k, embed_parallel(k, c)), c), 1e-12) << k.str();
            if (k.k2 == 0.0) continue;
            Vec q = rng.box(polar_box(k));
            EXPECT_LT(max_abs_diff(polar_from_ambient(k, embed_polar(k, q)), q), 1e-10) << k.str();
        }
}

TEST(Geometry, OriginAndPolarRadius) {
    const KappaTriple k{1, 1, 1};
    EXPECT_EQ(embed_parallel(k, Vec{0, 0, 0}), (Vec{1, 0, 0, 0}));
    EXPECT_THROW(embed_polar(k, Vec{0.0, 0.2, 0.3}), ChartError);
}

TEST(Geometry, MetricIsInducedFromAmbient) {
    Rng rng(3);
    for (const auto& k : nine_spaces()) {
        if (k.k1 == 0.0) continue;
        for (int i = 0; i < 20; ++i) {
            Vec c = rng.box(parallel_box(k));
            EXPECT_LT(max_abs_diff(metric_parallel(k, c), metric_parallel_from_ambient(k, c)), 1e-9) << k.str();
            Vec q = rng.box(polar_box(k));
            EXPECT_LT(max_abs_diff(metric_polar(k, q), metric_polar_from_ambient(k, q)), 1e-9) << k.str();
        }
    }
}

TEST(Geometry, SphereMetricInPolarCoordinates) {
    const Mat g = metric_polar(KappaTriple{1, 1, 1}, Vec{0.5, 0.7, 0.2});
    const double s = std::sin(0.5), t = std::sin(0.7);
    EXPECT_NEAR(g(0, 0), 1.0, 1e-15);
    EXPECT_NEAR(g(1, 1), s * s, 1e-15);
    EXPECT_NEAR(g(2, 2), s * s * t * t, 1e-15);
}

TEST(Geometry, PolarConnectionMatchesChristoffel) {
    Rng rng(4);
    for (const auto& k : nine_spaces()) {
        if (k.k2 == 0.0) continue;
        SymTensor g = metric_polar_field(k);
        for (int i = 0; i < 10; ++i) {
            Vec c = rng.box(polar_box(k));
            ConnectionAt a = connection_polar(k, c), b = christoffel(g, c);
            for (int r = 0; r < 3; ++r) EXPECT_LT(max_abs_diff(a.gamma[r], b.gamma[r]), 1e-8) << k.str();
        }
    }
}

TEST(Geometry, CayleyKleinCommutators) {
    Rng rng(5);
    std::vector<Vec> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(rng.cube(4, -2, 2));
    for (const auto& k : sign_patterns()) EXPECT_LT(verify_structure(killing_basis(k), ck_table(k), pts), 1e-9) << k.str();
}

TEST(Geometry, KillingFieldsPreserveAmbientMetric) {
    Rng rng(6);
    for (const auto& k : nine_spaces()) {
        SymTensor g = ambient_metric(k);
        for (const auto& K : killing_basis(k))
            for (int i = 0; i < 5; ++i) EXPECT_LT(max_abs(lie_derivative(K, g, rng.cube(4, -1, 1)).a), 1e-8);
    }
}

TEST(Geometry, GroupElementsAreIsometries) {
    for (const auto& k : sign_patterns())
        for (const auto& [a, b] : ck_pairs()) EXPECT_LT(isometry_residual(k, group_exp(k, a, b, 0.7)), 1e-12);
}

TEST(Geometry, CasimirsAreInvariant) {
    for (const auto& k : nine_spaces()) EXPECT_LT(casimir_invariance(k, 9), 1e-10) << k.str();
}

TEST(Geometry, GeneratorNames) {
    EXPECT_EQ(ck_name(0), "J01");
    EXPECT_EQ(ck_name(5), "J23");
}

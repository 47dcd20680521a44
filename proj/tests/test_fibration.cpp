#include <gtest/gtest.h>

#include <numbers>

#include "ckcontact/fibration.hpp"
#include "ckcontact/rng.hpp"

using namespace ckc;

TEST(Fibration, ClosedFormReebFlowMatchesIntegration) {
    Rng rng(1);
    for (const auto& k : nine_spaces()) {
        const Vec x = embed_parallel(k, rng.box(parallel_box(k)));
        EXPECT_LT(reeb_flow_deviation(k, x, 5.0), 1e-7) << k.str();
    }
}

TEST(Fibration, ReebFlowStaysOnTheQuadric) {
    Rng rng(2);
    for (const auto& k : nine_spaces()) {
        const Vec x = embed_parallel(k, rng.box(parallel_box(k)));
        for (double t : {0.3, 1.0, 2.5}) {
            const Vec y = reeb_flow(k, x, t);
            EXPECT_NEAR(quadratic_form(k, y, y), 1.0, 1e-9) << k.str();
        }
    }
}

TEST(Fibration, CompactOrbitsClose) {
    Rng rng(3);
    for (const auto& k : {KappaTriple{1, 1, 1}, KappaTriple{1, -1, 1}}) {
        const Vec x = embed_parallel(k, rng.box(parallel_box(k)));
        EXPECT_LT(max_abs_diff(reeb_flow(k, x, std::numbers::pi), x), 1e-9);
    }
}

TEST(Fibration, GeodesicOrbitsExactlyWhenCurvaturesBalance) {
    Rng rng(4);
    for (const auto& k : nine_spaces()) {
        const double r = reeb_geodesic_sweep(k, rng, 10);
        if (reeb_orbits_are_geodesics(k))
            EXPECT_LT(r, 1e-6) << k.str();
        else
            EXPECT_GT(r, 1e-3) << k.str();
    }
    EXPECT_TRUE(reeb_orbits_are_geodesics(KappaTriple{0, -1, 1}));
    EXPECT_FALSE(reeb_orbits_are_geodesics(KappaTriple{-1, 1, 1}));
}

TEST(Fibration, RegularSpacesHaveFibrations) {
    Rng rng(5);
    for (const auto& k : regular_spaces()) {
        FibrationMap f = fibration(k);
        EXPECT_LT(pullback_residual(f, rng, 50), 1e-9) << k.str();
        EXPECT_LT(fiber_invariance(f, rng, 10, 10), 1e-9) << k.str();
    }
    EXPECT_EQ(regular_spaces().size(), 8u);
}

TEST(Fibration, DeSitterIsNotRegular) {
    EXPECT_THROW(fibration(KappaTriple{-1, -1, 1}), NotRegular);
    const DeSitterOrbits ds = de_sitter_orbits();
    EXPECT_LT(ds.q_return, 1e-12);
    EXPECT_GT(ds.origin_min_return, 1.0);
}

TEST(Fibration, ClassLabels) {
    EXPECT_EQ(fibration(KappaTriple{1, 1, 1}).class_label, "P1");
    EXPECT_EQ(fibration(KappaTriple{0, 1, 1}).class_label, "P5");
    EXPECT_EQ(fibration(KappaTriple{1, 0, 1}).class_label, "I5");
    EXPECT_EQ(fibration(KappaTriple{-1, 1, 1}).class_label, "I1");
}

TEST(Fibration, ProjectionRequiresLiouville) {
    EXPECT_THROW(project_system(make_sp4_ck(KappaTriple{1, 1, 1}), fibration(KappaTriple{1, 1, 1})), NotLiouville);
}

class Reduction : public ::testing::TestWithParam<std::pair<std::string, std::optional<KappaTriple>>> {};

TEST_P(Reduction, FlowsCommuteWithProjection) {
    const auto& [id, k] = GetParam();
    SystemDescriptor up = catalog_get(id, k);
    const CommutationResult r = reduction_commutation(up, parse_coefficients(up.presets), 5.0, 1e-11);
    EXPECT_LT(r.residual, 1e-6);
    EXPECT_GT(r.samples, 40u);
    Rng rng(6);
    SystemDescriptor down = project_system(up, fibration(*up.kappa));
    const auto pts = down.samples(rng, 30);
    EXPECT_LT(verify_structure(down.fields, down.field_table, pts), 1e-8);
    EXPECT_LT(pairing_residual(down, pts), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(
    Liouville, Reduction,
    ::testing::Values(std::make_pair(std::string("liouville-s3"), std::optional<KappaTriple>{}),
                      std::make_pair(std::string("liouville-ads"), std::optional<KappaTriple>{}),
                      std::make_pair(std::string("liouville-flat"), std::optional<KappaTriple>{KappaTriple{0, 1, 1}}),
                      std::make_pair(std::string("liouville-flat"), std::optional<KappaTriple>{KappaTriple{0, 0, 1}}),
                      std::make_pair(std::string("liouville-flat"), std::optional<KappaTriple>{KappaTriple{0, -1, 1}}),
                      std::make_pair(std::string("liouville-nh"), std::optional<KappaTriple>{KappaTriple{1, 0, 1}}),
                      std::make_pair(std::string("liouville-nh"), std::optional<KappaTriple>{KappaTriple{-1, 0, 1}}),
                      std::make_pair(std::string("liouville-h3"), std::optional<KappaTriple>{})));

TEST(Fibration, OscillatorScalingReduction) {
    SystemDescriptor o = make_osc2d();
    const CommutationResult r = scaling_commutation(o, oscillator_model(), parse_coefficients(o.presets), 5.0, 1e-11);
    EXPECT_LT(r.residual, 1e-6);
}

#include <gtest/gtest.h>

#include "ckcontact/rng.hpp"
#include "ckcontact/systems.hpp"

using namespace ckc;

namespace {

struct Case {
    std::string id;
    std::optional<KappaTriple> kappa;
};

std::vector<Case> all_cases() {
    std::vector<Case> out{{"osc2d", {}},        {"thermo", {}},       {"sp4-r4", {}},       {"sp4-s3", {}},
                          {"liouville-s3", {}}, {"liouville-ads", {}}, {"liouville-h3", {}}};
    for (const auto& k : nine_spaces()) out.push_back({"sp4-ck", k});
    for (double k2 : {1.0, 0.0, -1.0}) out.push_back({"liouville-flat", KappaTriple{0, k2, 1}});
    for (double k1 : {1.0, -1.0}) out.push_back({"liouville-nh", KappaTriple{k1, 0, 1}});
    return out;
}

}  // namespace

TEST(Systems, EveryDescriptorReproducesItsTables) {
    Rng rng(1);
    for (const auto& c : all_cases()) {
        SystemDescriptor d = catalog_get(c.id, c.kappa);
        const auto pts = d.samples(rng, 50);
        const std::string tag = c.id + (c.kappa ? c.kappa->str() : "");
        EXPECT_EQ(d.fields.size(), d.ids.size()) << tag;
        EXPECT_LT(verify_structure(d.fields, d.field_table, pts), 1e-8) << tag;
        EXPECT_LT(pairing_residual(d, pts), 1e-9) << tag;
        EXPECT_LT(hamiltonian_table_residual(d, pts), 1e-8) << tag;
    }
}

TEST(Systems, CatalogErrors) {
    EXPECT_THROW(catalog_get("nope"), UnknownSystem);
    EXPECT_THROW(catalog_get("sp4-ck"), KappaRequired);
    EXPECT_THROW(catalog_get("sp4-ck", KappaTriple{1, 1, -1}), UnsupportedKappa);
    EXPECT_THROW(catalog_get("liouville-s3", KappaTriple{1, -1, 1}), UnsupportedKappa);
    EXPECT_THROW(catalog_get("liouville-flat", KappaTriple{1, 1, 1}), UnsupportedKappa);
    EXPECT_EQ(catalog_ids().size(), 10u);
}

TEST(Systems, UnknownCoefficientRejected) {
    SystemDescriptor d = make_osc2d();
    EXPECT_THROW(instantiate(d, parse_coefficients({{"b7", "1"}})), UnknownCoefficient);
    EXPECT_THROW(parse_coefficients({{"b1", "sin("}}), ParseError);
}

TEST(Systems, CayleyKleinHamiltoniansAreRestrictions) {
    Rng rng(2);
    for (const auto& k : nine_spaces())
        for (int s = 0; s < 20; ++s) {
            const Vec c = rng.box(parallel_box(k));
            const Vec x = embed_parallel(k, c);
            for (int i = 1; i <= 10; ++i) EXPECT_NEAR(ck_hamiltonian(k, i)(c), sp4_hamiltonian(i)(x), 1e-10);
        }
}

TEST(Systems, SimulationPreservesTheQuadric) {
    SystemDescriptor d = make_sp4_ck(KappaTriple{1, 1, 1});
    IntegratorOptions opt;
    opt.monitors = d.sim.monitors;
    opt.constraint_monitor = d.sim.constraint_monitor;
    Trajectory tr = integrate(instantiate_simulation(d, parse_coefficients(d.presets)), d.sim.x0, 0.0, 10.0, opt);
    EXPECT_LT(tr.max_drift(0), 1e-6);
    EXPECT_FALSE(tr.flagged);
}

TEST(Systems, NewtonHookeCasimirVanishes) {
    for (double k1 : {1.0, -1.0}) {
        SystemDescriptor d = make_liouville_nh(KappaTriple{k1, 0, 1});
        Rng rng(3);
        const ScalarField& C = d.first_integrals.back().f;
        ASSERT_EQ(d.first_integrals.back().name, "casimir");
        for (int i = 0; i < 1000; ++i) EXPECT_LT(std::abs(C(rng.cube(3, -2, 2))), 1e-13);
    }
}

TEST(Systems, TwoPhotonAlgebra) {
    const StructureTable tp = two_photon_table();
    EXPECT_LT(jacobi_identity_residual(tp), 1e-12);
    SystemDescriptor d = make_liouville_flat(KappaTriple{0, 1, 1});
    EXPECT_TRUE(algebra_signature(d.field_table) == algebra_signature(tp));
    EXPECT_EQ(algebra_signature(tp).dim, 6);
}

TEST(Systems, ThermodynamicRiccatiFlow) {
    SystemDescriptor d = make_thermo();
    Trajectory tr = integrate(instantiate(d, parse_coefficients({{"b2", "1"}})), {1, 1, 1, 1, 1}, 0.0, 1.0);
    EXPECT_NEAR(tr.final_state()[3], 0.5, 1e-8);
}

TEST(Systems, AutonomousOscillatorConservesEnergy) {
    SystemDescriptor d = make_osc2d();
    IntegratorOptions opt;
    opt.monitors = d.sim.monitors;
    Trajectory tr = integrate(instantiate_simulation(d, parse_coefficients({{"b1", "1"}, {"b3", "1"}})), d.sim.x0,
                              0.0, 10.0, opt);
    EXPECT_LT(tr.max_drift(1), 1e-8);
}

TEST(Systems, PrintedTableEntries) {
    // radial projection at a sphere point, against the printed projected field
    const Vec x{0.5, 0.5, 0.5, 0.5};
    for (int i : {1, 2, 4, 5, 6, 7, 8, 9, 10}) {
        const Vec X = sp4_field(i)(x);
        const double r = dot(x, X);
        EXPECT_LT(max_abs_diff(table3_printed(i)(x), axpy(-r, x, X)), 1e-12) << i;
    }
    const Vec X3 = sp4_field(3)(x);
    EXPECT_GT(max_abs_diff(table3_printed(3)(x), axpy(-dot(x, X3), x, X3)), 1e-3);
}

TEST(Systems, PresetsParse) {
    for (const auto& c : all_cases()) {
        SystemDescriptor d = catalog_get(c.id, c.kappa);
        EXPECT_NO_THROW(instantiate(d, parse_coefficients(d.presets))) << c.id;
    }
}

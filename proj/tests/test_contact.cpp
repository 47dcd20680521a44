#include <gtest/gtest.h>

#include "ckcontact/contact.hpp"
#include "ckcontact/geometry.hpp"
#include "ckcontact/rng.hpp"
#include "ckcontact/systems.hpp"

using namespace ckc;

TEST(Contact, ReebAxiomsInBothCharts) {
    Rng rng(1);
    for (const auto& k : nine_spaces())
        for (Chart c : {Chart::Parallel, Chart::Polar}) {
            ContactStructure cs = contact_structure(k, c);
            const Box b = c == Chart::Parallel ? parallel_box(k) : polar_box(k);
            for (int i = 0; i < 30; ++i) {
                const Vec p = rng.box(b);
                EXPECT_LT(reeb_residual(cs, p), 1e-10) << k.str();
                EXPECT_GT(std::abs(contact_density(cs, p)), 1e-6) << k.str();
            }
        }
}

TEST(Contact, AmbientReebSatisfiesAxioms) {
    Rng rng(2);
    for (const auto& k : nine_spaces()) {
        ContactStructure cs = contact_structure(k, Chart::Ambient);
        for (int i = 0; i < 20; ++i) {
            const Vec x = embed_parallel(k, rng.box(parallel_box(k)));
            EXPECT_LT(reeb_residual(cs, x), 1e-10) << k.str();
        }
    }
}

TEST(Contact, JacobiBracketsReproduceTheTable) {
    Rng rng(3);
    for (const auto& k : nine_spaces()) {
        ContactStructure cs = contact_structure(k, Chart::Parallel);
        std::vector<ScalarField> h;
        for (int i = 1; i <= 10; ++i) h.push_back(ck_hamiltonian(k, i));
        std::vector<Vec> pts;
        for (int i = 0; i < 20; ++i) pts.push_back(rng.box(parallel_box(k)));
        const double r = verify_function_table(
            h, sp4_table(), pts,
            [&cs](const ScalarField& f, const ScalarField& g, const Vec& p) { return jacobi_bracket(cs, f, g, p); });
        EXPECT_LT(r, 1e-8) << k.str();
    }
}

TEST(Contact, SpecificBracket) {
    const KappaTriple k{1, -1, 1};
    ContactStructure cs = contact_structure(k, Chart::Parallel);
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        const Vec p = rng.box(parallel_box(k));
        EXPECT_NEAR(jacobi_bracket(cs, ck_hamiltonian(k, 5), ck_hamiltonian(k, 8), p), -ck_hamiltonian(k, 1)(p), 1e-8);
    }
}

TEST(Contact, HamiltonianRoundTrip) {
    Rng rng(5);
    for (const auto& k : nine_spaces()) {
        ContactStructure cs = contact_structure(k, Chart::Parallel);
        ScalarField h = ck_hamiltonian(k, 6);
        ScalarField back = contact_hamiltonian_of(cs, contact_hamiltonian_field(cs, h));
        for (int i = 0; i < 10; ++i) {
            const Vec p = rng.box(parallel_box(k));
            EXPECT_NEAR(back(p), h(p), 1e-10);
        }
    }
}

TEST(Contact, ReebIsTheFieldOfMinusOne) {
    const KappaTriple k{1, 1, 1};
    ContactStructure cs = contact_structure(k, Chart::Parallel);
    VectorField X = contact_hamiltonian_field(cs, constant_scalar(Chart::Parallel, 3, -1.0));
    const Vec p{0.2, -0.3, 0.4};
    EXPECT_LT(max_abs_diff(X(p), cs.reeb(p)), 1e-12);
}

TEST(Contact, LiouvilleDetection) {
    const KappaTriple k{1, 1, 1};
    ContactStructure cs = contact_structure(k, Chart::Ambient);
    Rng rng(6);
    std::vector<Vec> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(embed_parallel(k, rng.box(parallel_box(k))));
    SystemDescriptor d = catalog_get("liouville-s3");
    for (const auto& h : d.hamiltonians) EXPECT_TRUE(is_liouville(cs, h, pts).liouville);
    EXPECT_FALSE(is_liouville(cs, sp4_hamiltonian(2), pts).liouville);
}

TEST(Contact, SasakiStructureOnSphereAndAntiDeSitter) {
    Rng rng(7);
    for (double k2 : {1.0, -1.0}) {
        const KappaTriple k{1, k2, 1};
        AlmostContactMetric acm = sasaki_phi(k2);
        for (int i = 0; i < 20; ++i) {
            const Vec x = embed_parallel(k, rng.box(parallel_box(k)));
            auto r = almost_contact_residuals(acm, x, rng.cube(4, -1, 1), rng.cube(4, -1, 1));
            EXPECT_LT(std::max({r.phi_squared, r.phi_reeb, r.eta_phi, r.eta_reeb, r.reeb_norm, r.compatibility}), 1e-10);
        }
    }
}

TEST(Contact, KillingFieldsGiveReebFirstIntegrals) {
    const KappaTriple k{1, 1, 1};
    ContactStructure cs = contact_structure(k, Chart::Ambient);
    const std::vector<Vec> probes{{1, 0, 0, 0}, {0.5, 0.5, 0.5, 0.5}, {0, 0.6, 0, 0.8}};
    ScalarField f = first_integral_from_killing(cs, killing_field(k, 0, 1), probes);
    const Vec x{0.5, 0.5, 0.5, 0.5};
    EXPECT_NEAR(lie_derivative(cs.reeb, f, x), 0.0, 1e-12);
    VectorField notkilling = vector_field(Chart::Ambient, 4, [](const auto& p) {
        auto v = p;
        v[0] = p[0] * p[0];
        return v;
    });
    EXPECT_THROW(first_integral_from_killing(cs, notkilling, probes), NotKilling);
}

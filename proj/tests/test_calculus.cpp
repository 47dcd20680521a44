#include <gtest/gtest.h>

#include "ckcontact/calculus.hpp"
#include "ckcontact/geometry.hpp"
#include "ckcontact/rng.hpp"
#include "ckcontact/symplectic.hpp"
#include "ckcontact/systems.hpp"

using namespace ckc;

namespace {

std::vector<Vec> cube_points(std::uint64_t seed, int n, int dim, double r = 2.0) {
    Rng rng(seed);
    std::vector<Vec> pts;
    for (int i = 0; i < n; ++i) pts.push_back(rng.cube(dim, -r, r));
    return pts;
}

}  // namespace

TEST(Calculus, BracketWithItselfVanishes) {
    const Vec p{0.3, -1.1, 0.4, 2.0};
    for (int i = 1; i <= 10; ++i) EXPECT_LT(max_abs(lie_bracket(sp4_field(i), sp4_field(i), p)), 1e-15);
}

TEST(Calculus, Sp4BracketAtUnitPoint) {
    const Vec p{1, 1, 1, 1};
    const Vec b = lie_bracket(sp4_field(5), sp4_field(8), p);
    EXPECT_LT(max_abs_diff(b, Vec{-1, 1, 0, 0}), 1e-14);
    EXPECT_LT(max_abs_diff(b, scaled(-1.0, sp4_field(1)(p))), 1e-14);
}

TEST(Calculus, Sp4TableReproduced) {
    std::vector<VectorField> X;
    for (int i = 1; i <= 10; ++i) X.push_back(sp4_field(i));
    EXPECT_LT(verify_structure(X, sp4_table(), cube_points(1, 100, 4)), 1e-9);
}

TEST(Calculus, FlippedSignIsDetected) {
    std::vector<VectorField> X;
    for (int i = 1; i <= 10; ++i) X.push_back(sp4_field(i));
    StructureTable t = sp4_table();
    int flipped = 0;
    for (int k = 0; k < 10 && !flipped; ++k)
        if (t(4, 7, k) != 0.0) {
            t.set(4, 7, k, -t(4, 7, k));
            flipped = 1;
        }
    ASSERT_EQ(flipped, 1);
    EXPECT_GT(verify_structure(X, t, cube_points(2, 20, 4)), 1e-2);
}

TEST(Calculus, SingleFieldEmptyTable) {
    EXPECT_EQ(verify_structure({sp4_field(3)}, StructureTable(1), cube_points(3, 5, 4)), 0.0);
}

TEST(Calculus, TableSizeMismatchThrows) {
    EXPECT_THROW(verify_structure({sp4_field(1)}, StructureTable(2), cube_points(3, 1, 4)), DomainError);
}

TEST(Calculus, CayleyKleinBracket) {
    for (const auto& k : sign_patterns()) {
        VectorField b = lie_bracket(killing_field(k, 0, 2), killing_field(k, 1, 2));
        VectorField j01 = killing_field(k, 0, 1);
        double worst = 0;
        for (const Vec& p : cube_points(4, 100, 4)) worst = std::max(worst, max_abs_diff(b(p), scaled(k.k2, j01(p))));
        EXPECT_LT(worst, 1e-9) << k.str();
    }
}

TEST(Calculus, ExactFormIsClosed) {
    ScalarField f = scalar_field(Chart::Generic, 2, [](const auto& x) { return x[0] * x[1]; });
    OneForm df = exterior_d(f);
    for (const Vec& p : cube_points(5, 10, 2)) EXPECT_LT(max_abs(exterior_d(df, p).a), 1e-14);
}

TEST(Calculus, PotentialOfCanonicalForm) {
    const TwoForm w = canonical_form(Chart::Generic, 2);
    VectorField delta = vector_field(Chart::Generic, 4, [](const auto& x) {
        auto v = x;
        for (auto& c : v) c = 0.5 * c;
        return v;
    });
    const OneForm lambda = symplectic_potential(w, delta);
    for (const Vec& p : cube_points(6, 20, 4)) {
        Mat d = exterior_d(lambda, p);
        for (double& x : d.a) x = -x;
        EXPECT_LT(max_abs_diff(d, w(p)), 1e-12);
    }
}

TEST(Calculus, LieDerivativeOfCanonicalFormUnderScaling) {
    const TwoForm w = canonical_form(Chart::Generic, 2);
    VectorField delta = vector_field(Chart::Generic, 4, [](const auto& x) {
        auto v = x;
        for (auto& c : v) c = 0.5 * c;
        return v;
    });
    EXPECT_LT(homogeneity_check(delta, w, 1.0, cube_points(7, 100, 4)), 1e-10);
}

TEST(Calculus, ReebPreservesContactForm) {
    const KappaTriple k{1, 1, 1};
    ContactStructure cs = contact_structure(k, Chart::Parallel);
    Rng rng(8);
    for (int i = 0; i < 20; ++i) {
        const Vec p = rng.box(parallel_box(k));
        EXPECT_LT(max_abs(lie_derivative(cs.reeb, cs.eta, p)), 1e-10);
    }
}

TEST(Calculus, RotationIsAmbientKilling) {
    const KappaTriple k{1, 1, 1};
    VectorField J = killing_field(k, 2, 3);
    SymTensor g = ambient_metric(k);
    for (const Vec& p : cube_points(9, 20, 4)) EXPECT_LT(max_abs(lie_derivative(J, g, p).a), 1e-9);
}

TEST(Calculus, AutomaticMatchesFiniteDifferences) {
    VectorField X = level_set_projection(KappaTriple{1, 1, 1}, sp4_field(7));
    Rng rng(10);
    for (int i = 0; i < 20; ++i) {
        const Vec p = rng.cube(4, 0.5, 1.5);
        EXPECT_LT(max_abs_diff(jacobian(X, p), jacobian_fd(X, p)), 1e-5);
    }
}

TEST(Calculus, BracketBilinearAndAntisymmetric) {
    Rng rng(11);
    for (int s = 0; s < 20; ++s) {
        const Vec p = rng.cube(4, -2, 2);
        const int i = rng.index(10) + 1, j = rng.index(10) + 1, l = rng.index(10) + 1;
        const double a = rng.uniform(-2, 2);
        const Vec ij = lie_bracket(sp4_field(i), sp4_field(j), p);
        EXPECT_LT(max_abs(axpy(1.0, lie_bracket(sp4_field(j), sp4_field(i), p), ij)), 1e-10);
        VectorField comb = linear_combination({a, 1.0}, {sp4_field(j), sp4_field(l)});
        EXPECT_LT(max_abs_diff(lie_bracket(sp4_field(i), comb, p), axpy(a, ij, lie_bracket(sp4_field(i), sp4_field(l), p))),
                  1e-10);
    }
}

TEST(Calculus, JacobiIdentityWithNestedDerivatives) {
    Rng rng(12);
    for (int s = 0; s < 10; ++s) {
        const Vec p = rng.cube(4, -1, 1);
        VectorField a = sp4_field(2), b = level_set_projection(KappaTriple{1, 1, 1}, sp4_field(6)), c = sp4_field(9);
        Vec cyc = lie_bracket(a, lie_bracket(b, c), p);
        cyc = axpy(1.0, lie_bracket(b, lie_bracket(c, a), p), cyc);
        cyc = axpy(1.0, lie_bracket(c, lie_bracket(a, b), p), cyc);
        EXPECT_LT(max_abs(cyc), 1e-6);
    }
}

TEST(Calculus, ChartMismatchThrows) {
    VectorField a = zero_field(Chart::Parallel, 3), b = zero_field(Chart::Polar, 3);
    EXPECT_THROW(lie_bracket(a, b, Vec{0.1, 0.2, 0.3}), ChartMismatch);
}

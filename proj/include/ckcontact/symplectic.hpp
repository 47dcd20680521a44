#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ckcontact/calculus.hpp"
#include "ckcontact/contact.hpp"
#include "ckcontact/errors.hpp"
#include "ckcontact/field.hpp"
#include "ckcontact/linalg.hpp"

namespace ckc {

struct SymplecticStructure {
    Chart chart = Chart::Generic;
    TwoForm omega;
    std::optional<OneForm> lambda;  // ω = −dλ

    int dim() const { return omega.dim; }
};

enum class ScalingGroup { PositiveReals, NonzeroReals };

struct ScalingSymmetry {
    VectorField delta;
    ScalingGroup group = ScalingGroup::PositiveReals;
};

// Σ dq_a ∧ dp_a with coordinates ordered (q_1..q_n, p_1..p_n).
inline TwoForm canonical_form(Chart c, int n) {
    return two_form(c, 2 * n, [n](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        MatT<T> w(2 * n, 2 * n);
        for (int a = 0; a < n; ++a) {
            w(a, n + a) = T(1.0);
            w(n + a, a) = T(-1.0);
        }
        return w;
    });
}

// Pairs (x0, x1), (x2, x3): dx0 ∧ dx1 + dx2 ∧ dx3.
inline TwoForm darboux_pairs_form(Chart c) {
    return two_form(c, 4, [](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        MatT<T> w(4, 4);
        w(0, 1) = T(1.0);
        w(1, 0) = T(-1.0);
        w(2, 3) = T(1.0);
        w(3, 2) = T(-1.0);
        return w;
    });
}

// λ = −ι_Δ ω
inline OneForm symplectic_potential(const TwoForm& w, const VectorField& delta) {
    OneForm a = interior(delta, w);
    OneForm out;
    out.chart = a.chart;
    out.dim = a.dim;
    detail::fill_same(out, a.levels, [a](const auto& p) {
        auto v = a(p);
        for (auto& c : v) c = -c;
        return v;
    });
    return out;
}

inline SymplecticStructure make_symplectic(const TwoForm& w, std::optional<VectorField> delta = std::nullopt) {
    SymplecticStructure ss;
    ss.chart = w.chart;
    ss.omega = w;
    if (delta) ss.lambda = symplectic_potential(w, *delta);
    return ss;
}

// Solves ι_X ω = dh pointwise.
inline VectorField hamiltonian_field(const SymplecticStructure& ss, const ScalarField& h) {
    detail::same_chart(ss.chart, h.chart, "hamiltonian_field");
    VectorField out;
    out.chart = ss.chart;
    out.dim = ss.dim();
    TwoForm w = ss.omega;
    detail::fill_derived(out, std::min(h.levels, w.levels + 1), [w, h](const auto& p) {
        return solve(transpose(w(p)), gradient(h, p));
    });
    return out;
}

// {f, g} = ω(X_f, X_g)
template <class T>
T poisson_bracket(const SymplecticStructure& ss, const ScalarField& f, const ScalarField& g, const VecT<T>& p) {
    auto W = ss.omega(p);
    auto Wt = transpose(W);
    auto xf = solve(Wt, gradient(f, p));
    auto xg = solve(Wt, gradient(g, p));
    return two_form_apply(W, xf, xg);
}

inline ScalarField poisson_bracket(const SymplecticStructure& ss, const ScalarField& f, const ScalarField& g) {
    ScalarField out;
    out.chart = ss.chart;
    out.dim = ss.dim();
    detail::fill_derived(out, std::min({f.levels, g.levels, ss.omega.levels + 1}),
                         [ss, f, g](const auto& p) { return poisson_bracket(ss, f, g, p); });
    return out;
}

// sup |ℒ_Δ f − ℓ f|
inline double homogeneity_check(const VectorField& delta, const ScalarField& f, double ell,
                                const std::vector<Vec>& samples) {
    double worst = 0.0;
    for (const Vec& p : samples) worst = std::max(worst, std::abs(lie_derivative(delta, f, p) - ell * f(p)));
    return worst;
}

inline double homogeneity_check(const VectorField& delta, const OneForm& a, double ell,
                                const std::vector<Vec>& samples) {
    double worst = 0.0;
    for (const Vec& p : samples) worst = std::max(worst, max_abs_diff(lie_derivative(delta, a, p), scaled(ell, a(p))));
    return worst;
}

inline double homogeneity_check(const VectorField& delta, const TwoForm& w, double ell,
                                const std::vector<Vec>& samples) {
    double worst = 0.0;
    for (const Vec& p : samples) {
        Mat l = lie_derivative(delta, w, p);
        Mat v = w(p);
        for (double& x : v.a) x *= ell;
        worst = std::max(worst, max_abs_diff(l, v));
    }
    return worst;
}

// [Δ, Y] − ℓ Y
inline double homogeneity_check(const VectorField& delta, const VectorField& Y, double ell,
                                const std::vector<Vec>& samples) {
    double worst = 0.0;
    for (const Vec& p : samples) worst = std::max(worst, max_abs_diff(lie_bracket(delta, Y, p), scaled(ell, Y(p))));
    return worst;
}

inline constexpr double kVanishingTolerance = 1e-14;

// h / F, to be evaluated on the section F = 1.
inline ScalarField reduce_hamiltonian(const ScalarField& h, const ScalarField& F) {
    detail::same_chart(h.chart, F.chart, "reduce_hamiltonian");
    ScalarField out;
    out.chart = h.chart;
    out.dim = h.dim;
    detail::fill_same(out, std::min(h.levels, F.levels), [h, F](const auto& p) {
        auto fv = F(p);
        if (std::abs(value(fv)) < kVanishingTolerance) throw DomainError("reduce_hamiltonian: F vanishes");
        return h(p) / fv;
    });
    return out;
}

// Same, composed with a section σ so the result lives on the section chart.
inline ScalarField reduce_hamiltonian(const ScalarField& h, const ScalarField& F, const ChartMap& section) {
    return compose(reduce_hamiltonian(h, F), section);
}

// σ*(ι_Δ ω)
inline OneForm reduced_contact_form(const SymplecticStructure& ss, const VectorField& delta, const ChartMap& section) {
    return pullback(section, interior(delta, ss.omega));
}

// A symplectic Lie–Hamilton system with its reference tables.
struct LHSystem {
    SymplecticStructure ss;
    std::vector<std::string> names;
    std::vector<VectorField> fields;
    std::vector<ScalarField> hamiltonians;
    StructureTable field_table;
    StructureTable poisson_table;
};

// max_i sup_p ‖ι_{X_i} ω − dh_i‖
inline double hamiltonian_pairing_residual(const SymplecticStructure& ss, const std::vector<VectorField>& X,
                                           const std::vector<ScalarField>& h, const std::vector<Vec>& samples) {
    double worst = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (const Vec& p : samples)
            worst = std::max(worst, max_abs_diff(interior(X[i](p), ss.omega(p)), gradient(h[i], p)));
    return worst;
}

// Same for contact Hamiltonians: compares X_i with the field solved from h_i.
inline double contact_pairing_residual(const ContactStructure& cs, const std::vector<VectorField>& X,
                                       const std::vector<ScalarField>& h, const std::vector<Vec>& samples) {
    double worst = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        VectorField solved = contact_hamiltonian_field(cs, h[i]);
        for (const Vec& p : samples) worst = std::max(worst, max_abs_diff(solved(p), X[i](p)));
    }
    return worst;
}

}  // namespace ckc

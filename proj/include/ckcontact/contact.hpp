#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "ckcontact/calculus.hpp"
#include "ckcontact/errors.hpp"
#include "ckcontact/field.hpp"
#include "ckcontact/geometry.hpp"
#include "ckcontact/ktrig.hpp"
#include "ckcontact/linalg.hpp"

namespace ckc {

struct ContactStructure {
    KappaTriple kappa;
    Chart chart = Chart::Generic;
    OneForm eta;
    VectorField reeb;
    // Ambient structures live on the level set constraint = 1.
    std::optional<ScalarField> constraint;

    int dim() const { return eta.dim; }
};

// I_κ(x, x) as a scalar field on the ambient space.
inline ScalarField ambient_constraint(const KappaTriple& k) {
    return scalar_field(Chart::Ambient, 4, [k](const auto& x) { return quadratic_form(k, x, x); });
}

inline OneForm ambient_contact_form() {
    return one_form(Chart::Ambient, 4, [](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        return VecT<T>{-0.5 * x[1], 0.5 * x[0], -0.5 * x[3], 0.5 * x[2]};
    });
}

inline VectorField ambient_reeb(const KappaTriple& k) {
    return vector_field(Chart::Ambient, 4, [k](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        return VecT<T>{-2.0 * k.k01() * x[1], 2.0 * x[0], -2.0 * k.k03() * x[3], 2.0 * k.k02() * x[2]};
    });
}

inline ContactStructure contact_structure(const KappaTriple& k, Chart chart) {
    ContactStructure cs;
    cs.kappa = k;
    cs.chart = chart;
    switch (chart) {
        case Chart::Ambient:
            cs.eta = ambient_contact_form();
            cs.reeb = ambient_reeb(k);
            cs.constraint = ambient_constraint(k);
            break;
        case Chart::Parallel:
            cs.eta = one_form(Chart::Parallel, 3, [k](const auto& c) {
                using T = typename std::decay_t<decltype(c)>::value_type;
                T cy = ck_cos(k.k02(), c[1]), cz = ck_cos(k.k03(), c[2]);
                return VecT<T>{0.5 * cy * cy * cz * cz, -0.25 * cy * ck_sin(k.k03(), 2.0 * c[2]),
                               0.5 * ck_sin(k.k02(), c[1])};
            });
            cs.reeb = vector_field(Chart::Parallel, 3, [k](const auto& c) {
                using T = typename std::decay_t<decltype(c)>::value_type;
                return VecT<T>{T(2.0), -2.0 * k.k03() * ck_cos(k.k02(), c[1]) * ck_tan(k.k03(), c[2]),
                               2.0 * k.k02() * ck_sin(k.k02(), c[1])};
            });
            break;
        case Chart::Polar:
            cs.eta = one_form(Chart::Polar, 3, [k](const auto& c) {
                using T = typename std::decay_t<decltype(c)>::value_type;
                T sr = ck_sin(k.k1, c[0]), st = ck_sin(k.k2, c[1]);
                return VecT<T>{0.5 * ck_cos(k.k2, c[1]), -0.25 * k.k2 * ck_sin(k.k1, 2.0 * c[0]) * st,
                               0.5 * sr * sr * st * st};
            });
            cs.reeb = vector_field(Chart::Polar, 3, [k](const auto& c) {
                using T = typename std::decay_t<decltype(c)>::value_type;
                return VecT<T>{2.0 * ck_cos(k.k2, c[1]), -2.0 * ck_sin(k.k2, c[1]) / ck_tan(k.k1, c[0]),
                               T(2.0 * k.k02())};
            });
            break;
        default:
            throw ChartError("contact_structure: chart must be ambient, parallel or polar");
    }
    return cs;
}

// Reeb field of an arbitrary contact form: (dηᵀ + η ηᵀ) R = η.
inline VectorField reeb_field(const OneForm& eta) {
    VectorField out;
    out.chart = eta.chart;
    out.dim = eta.dim;
    detail::fill_derived(out, eta.levels, [eta](const auto& p) {
        auto e = eta(p);
        auto D = exterior_d(eta, p);
        const int n = static_cast<int>(e.size());
        auto M = transpose(D);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) += e[i] * e[j];
        return solve(M, e);
    });
    return out;
}

inline ContactStructure make_contact(const OneForm& eta, std::optional<VectorField> reeb = std::nullopt) {
    ContactStructure cs;
    cs.chart = eta.chart;
    cs.eta = eta;
    cs.reeb = reeb ? *reeb : reeb_field(eta);
    return cs;
}

// Density of η ∧ dη (∧ dF on the ambient model); nonzero iff contact at p.
inline double contact_density(const ContactStructure& cs, const Vec& p) {
    Vec e = cs.eta(p);
    Mat D = exterior_d(cs.eta, p);
    if (cs.constraint) return ambient_contact_volume(e, D, gradient(*cs.constraint, p));
    return contact_volume(e, D);
}

inline double contact_density(const OneForm& eta, const Vec& p) {
    return contact_volume(eta(p), exterior_d(eta, p));
}

// max(|η(R) − 1|, ‖ι_R dη‖) with the normal direction removed on the ambient model.
inline double reeb_residual(const ContactStructure& cs, const Vec& p) {
    Vec e = cs.eta(p), R = cs.reeb(p);
    Mat D = exterior_d(cs.eta, p);
    Vec v = interior(R, D);
    if (cs.constraint) {
        Vec n = gradient(*cs.constraint, p);
        double a = dot(v, n) / dot(n, n);
        v = axpy(-a, n, v);
    }
    return std::max(std::abs(dot(e, R) - 1.0), max_abs(v));
}

namespace detail {

template <class T>
VecT<T> contact_hamiltonian_vector(const ContactStructure& cs, const ScalarField& h, const VecT<T>& p) {
    auto e = cs.eta(p);
    auto D = exterior_d(cs.eta, p);
    auto dh = gradient(h, p);
    auto R = cs.reeb(p);
    T hv = h(p);
    T Rh = dot(dh, R);
    const int n = static_cast<int>(e.size());
    auto M = transpose(D);
    VecT<T> rhs(static_cast<std::size_t>(n), T(0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M(i, j) += e[i] * e[j];
        rhs[i] = dh[i] - Rh * e[i] - hv * e[i];
    }
    return solve(M, rhs);
}

}  // namespace detail

// X_h with η(X_h) = −h and ι_{X_h} dη = dh − (R h) η.
inline VectorField contact_hamiltonian_field(const ContactStructure& cs, const ScalarField& h) {
    if (cs.constraint) throw ChartError("contact_hamiltonian_field: use an intrinsic chart");
    detail::same_chart(cs.chart, h.chart, "contact_hamiltonian_field");
    VectorField out;
    out.chart = cs.chart;
    out.dim = cs.dim();
    int lv = std::min({cs.eta.levels, h.levels, cs.reeb.levels + 1});
    detail::fill_derived(out, lv, [cs, h](const auto& p) { return detail::contact_hamiltonian_vector(cs, h, p); });
    return out;
}

// h = −η(X)
inline ScalarField contact_hamiltonian_of(const ContactStructure& cs, const VectorField& X) {
    detail::same_chart(cs.chart, X.chart, "contact_hamiltonian_of");
    ScalarField out;
    out.chart = cs.chart;
    out.dim = cs.dim();
    OneForm eta = cs.eta;
    detail::fill_same(out, std::min(eta.levels, X.levels), [eta, X](const auto& p) { return -dot(eta(p), X(p)); });
    return out;
}

// {f, g} = X_f g + g R f
template <class T>
T jacobi_bracket(const ContactStructure& cs, const ScalarField& f, const ScalarField& g, const VecT<T>& p) {
    auto Xf = detail::contact_hamiltonian_vector(cs, f, p);
    auto R = cs.reeb(p);
    return dot(Xf, gradient(g, p)) + g(p) * dot(R, gradient(f, p));
}

inline ScalarField jacobi_bracket(const ContactStructure& cs, const ScalarField& f, const ScalarField& g) {
    ScalarField out;
    out.chart = cs.chart;
    out.dim = cs.dim();
    int lv = std::min({cs.eta.levels, f.levels, g.levels, cs.reeb.levels + 1});
    detail::fill_derived(out, lv, [cs, f, g](const auto& p) { return jacobi_bracket(cs, f, g, p); });
    return out;
}

struct LiouvilleCheck {
    bool liouville = false;
    double residual = 0.0;
};

inline constexpr double kLiouvilleThreshold = 1e-9;

inline LiouvilleCheck is_liouville(const ContactStructure& cs, const ScalarField& h, const std::vector<Vec>& samples) {
    double worst = 0.0;
    for (const Vec& p : samples) worst = std::max(worst, std::abs(lie_derivative(cs.reeb, h, p)));
    return {worst < kLiouvilleThreshold, worst};
}

// Almost contact metric structure (φ, R̄, η̄, g) on S³ or AdS in ambient coordinates.
struct AlmostContactMetric {
    KappaTriple kappa;
    VectorField reeb;  // R̄ = R / 2
    OneForm eta;       // η̄ = 2η
    SymTensor g;
    int epsilon = 1;
    std::function<Mat(const Vec&)> phi;

    Vec apply(const Vec& p, const Vec& v) const { return matvec(phi(p), v); }
    double metric(const Vec& p, const Vec& v, const Vec& w) const { return two_form_apply(g(p), v, w); }
};

// v minus its g̃-normal component at a point of the ambient model.
inline Vec tangent_part(const KappaTriple& k, const Vec& x, const Vec& v) {
    const double a = quadratic_form(k, v, x) / quadratic_form(k, x, x);
    return axpy(-a, x, v);
}

inline AlmostContactMetric sasaki_phi(double k2) {
    if (k2 != 1.0 && k2 != -1.0) throw DomainError("sasaki_phi: defined only for kappa = (1, +-1, 1)");
    const KappaTriple k{1.0, k2, 1.0};
    AlmostContactMetric acm;
    acm.kappa = k;
    VectorField R = ambient_reeb(k);
    acm.reeb = linear_combination({0.5}, {R});
    OneForm e = ambient_contact_form();
    acm.eta = one_form(Chart::Ambient, 4, [e](const auto& x) {
        auto v = e(x);
        for (auto& c : v) c = 2.0 * c;
        return v;
    });
    acm.g = ambient_metric(k);
    Mat J(4, 4);
    J(1, 0) = -1.0;  // J∂0 = −∂1
    J(0, 1) = 1.0;   // J∂1 = ∂0
    J(3, 2) = -k2;   // J∂2 = −κ2 ∂3
    J(2, 3) = k2;    // J∂3 = κ2 ∂2
    const Vec gd = k.ambient_diag();
    VectorField Rbar = acm.reeb;
    acm.phi = [J, gd, Rbar](const Vec& x) {
        Vec rb = Rbar(x);
        Mat N = identity(4), P = identity(4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                N(i, j) -= x[i] * gd[j] * x[j];
                P(i, j) -= rb[i] * gd[j] * rb[j];
            }
        return matmul(P, matmul(N, J));
    };
    return acm;
}

struct AlmostContactResiduals {
    double phi_squared = 0.0;   // φ² v = −v + η̄(v) R̄
    double phi_reeb = 0.0;      // φ R̄ = 0
    double eta_phi = 0.0;       // η̄ ∘ φ = 0
    double eta_reeb = 0.0;      // η̄(R̄) = 1
    double reeb_norm = 0.0;     // g(R̄, R̄) = 1
    double compatibility = 0.0; // g(φv, φw) = g(v, w) − ε η̄(v) η̄(w)
};

inline AlmostContactResiduals almost_contact_residuals(const AlmostContactMetric& acm, const Vec& x, const Vec& v,
                                                       const Vec& w) {
    AlmostContactResiduals r;
    const Vec rb = acm.reeb(x);
    const Vec eb = acm.eta(x);
    const Vec tv = tangent_part(acm.kappa, x, v);
    const Vec tw = tangent_part(acm.kappa, x, w);
    const Vec pv = acm.apply(x, tv), pw = acm.apply(x, tw);
    Vec lhs = acm.apply(x, pv);
    Vec rhs = axpy(dot(eb, tv), rb, scaled(-1.0, tv));
    r.phi_squared = max_abs_diff(lhs, rhs);
    r.phi_reeb = max_abs(acm.apply(x, rb));
    r.eta_phi = std::abs(dot(eb, pv));
    r.eta_reeb = std::abs(dot(eb, rb) - 1.0);
    r.reeb_norm = std::abs(acm.metric(x, rb, rb) - 1.0);
    r.compatibility =
        std::abs(acm.metric(x, pv, pw) - (acm.metric(x, tv, tw) - acm.epsilon * dot(eb, tv) * dot(eb, tw)));
    return r;
}

inline constexpr double kKillingThreshold = 1e-6;

// p ↦ η(K), a first integral of the Reeb field when K is Killing.
inline ScalarField first_integral_from_killing(const ContactStructure& cs, const VectorField& K,
                                               const std::vector<Vec>& probes) {
    if (cs.chart != Chart::Ambient) throw ChartError("first_integral_from_killing: ambient structure expected");
    SymTensor g = ambient_metric(cs.kappa);
    for (const Vec& p : probes) {
        double r = max_abs(lie_derivative(K, g, p));
        if (r > kKillingThreshold) throw NotKilling("field is not Killing for the ambient metric");
    }
    ScalarField out;
    out.chart = Chart::Ambient;
    out.dim = 4;
    OneForm eta = cs.eta;
    detail::fill_same(out, std::min(eta.levels, K.levels), [eta, K](const auto& p) { return dot(eta(p), K(p)); });
    return out;
}

}  // namespace ckc

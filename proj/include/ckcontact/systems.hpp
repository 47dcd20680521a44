#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ckcontact/calculus.hpp"
#include "ckcontact/contact.hpp"
#include "ckcontact/errors.hpp"
#include "ckcontact/field.hpp"
#include "ckcontact/geometry.hpp"
#include "ckcontact/integrator.hpp"
#include "ckcontact/ktrig.hpp"
#include "ckcontact/parser.hpp"
#include "ckcontact/rng.hpp"
#include "ckcontact/symplectic.hpp"

namespace ckc {

template <class V>
using scalar_of = typename std::decay_t<V>::value_type;

enum class StructureKind { Symplectic, Contact };

struct FirstIntegral {
    std::string name;
    ScalarField f;
};

// Chart used when integrating a system; fields are listed in basis order.
struct Simulation {
    Chart chart = Chart::Generic;
    int dim = 0;
    std::vector<VectorField> fields;
    Vec x0;
    std::vector<Monitor> monitors;
    int constraint_monitor = -1;
    // sim chart -> Weierstrass coordinates, for fibration checks
    std::optional<ChartMap> to_ambient;
};

// Data for the reduction of a symplectic LH system by a scaling symmetry.
struct ScalingExample {
    SymplecticStructure ss;
    ScalingSymmetry symmetry;
    ScalarField F;
    std::vector<VectorField> fields;
    std::vector<ScalarField> hamiltonians;
    StructureTable poisson_table;
    ChartMap section;     // reduced chart -> phase space, image in F = 1
    ChartMap projection;  // phase space -> reduced chart
    OneForm printed_eta;  // on the reduced chart
    double eta_sign = 1;  // printed_eta = eta_sign · σ*ι_Δω
    std::vector<VectorField> reduced_fields;
    std::vector<ScalarField> reduced_hamiltonians;
    Box phase_box;
    Box reduced_box;
};

struct SystemDescriptor {
    std::string id;
    std::string title;
    std::string class_label;
    std::optional<KappaTriple> kappa;
    Chart chart = Chart::Generic;
    int dim = 0;
    std::vector<std::string> ids;
    std::vector<VectorField> fields;
    std::vector<ScalarField> hamiltonians;
    StructureTable field_table;
    StructureTable hamiltonian_table;
    StructureKind structure = StructureKind::Contact;
    std::optional<SymplecticStructure> ss;
    std::optional<ContactStructure> cs;
    std::map<std::string, std::string> presets;
    std::vector<FirstIntegral> first_integrals;
    std::function<Vec(Rng&)> sampler;
    Simulation sim;
    std::optional<ScalingExample> scaling;
    // basis index of the field proportional to the Reeb field, if any
    int reeb_index = -1;

    std::size_t size() const { return fields.size(); }
    std::vector<Vec> samples(Rng& rng, int n) const {
        std::vector<Vec> out;
        for (int i = 0; i < n; ++i) out.push_back(sampler(rng));
        return out;
    }
};

// ---------------------------------------------------------------------------
// sp(4, R) on R^4 with ω = dx0∧dx1 + dx2∧dx3

inline VectorField sp4_field(int i) {
    return vector_field(Chart::Ambient, 4, [i](const auto& x) {
        using T = scalar_of<decltype(x)>;
        const T o(0.0);
        switch (i) {
            case 1: return VecT<T>{x[0], -x[1], o, o};
            case 2: return VecT<T>{o, -x[3], x[0], o};
            case 3: return VecT<T>{x[2], o, o, -x[1]};
            case 4: return VecT<T>{o, o, x[2], -x[3]};
            case 5: return VecT<T>{o, -x[0], o, o};
            case 6: return VecT<T>{o, -x[2], o, -x[0]};
            case 7: return VecT<T>{o, o, o, -x[2]};
            case 8: return VecT<T>{x[1], o, o, o};
            case 9: return VecT<T>{x[3], o, x[1], o};
            case 10: return VecT<T>{o, o, x[3], o};
        }
        throw IndexError("sp4 index out of range");
    });
}

inline ScalarField sp4_hamiltonian(int i) {
    return scalar_field(Chart::Ambient, 4, [i](const auto& x) {
        switch (i) {
            case 1: return x[0] * x[1];
            case 2: return x[0] * x[3];
            case 3: return x[1] * x[2];
            case 4: return x[2] * x[3];
            case 5: return 0.5 * x[0] * x[0];
            case 6: return x[0] * x[2];
            case 7: return 0.5 * x[2] * x[2];
            case 8: return 0.5 * x[1] * x[1];
            case 9: return x[1] * x[3];
            case 10: return 0.5 * x[3] * x[3];
        }
        throw IndexError("sp4 index out of range");
    });
}

// Brackets [X_i, X_j] of the ten sp(4, R) fields.
inline StructureTable sp4_table() {
    StructureTable t(10);
    t.add(1, 2, 2, 1).add(1, 3, 3, -1).add(1, 5, 5, 2).add(1, 6, 6, 1).add(1, 8, 8, -2).add(1, 9, 9, -1);
    t.add(2, 3, 1, 1).add(2, 3, 4, -1).add(2, 4, 2, 1).add(2, 6, 5, 2).add(2, 7, 6, 1).add(2, 8, 9, -1);
    t.add(2, 9, 10, -2);
    t.add(3, 4, 3, -1).add(3, 5, 6, 1).add(3, 6, 7, 2).add(3, 9, 8, -2).add(3, 10, 9, -1);
    t.add(4, 6, 6, 1).add(4, 7, 7, 2).add(4, 9, 9, -1).add(4, 10, 10, -2);
    t.add(5, 8, 1, -1).add(5, 9, 2, -1);
    t.add(6, 8, 3, -1).add(6, 9, 1, -1).add(6, 9, 4, -1).add(6, 10, 2, -1);
    t.add(7, 9, 3, -1).add(7, 10, 4, -1);
    return t;
}

// Projection of an ambient field onto the level sets of I_κ along the radial
// direction: X − (I(x, X) / I(x, x)) x.
inline VectorField level_set_projection(const KappaTriple& k, const VectorField& X) {
    VectorField out;
    out.chart = Chart::Ambient;
    out.dim = 4;
    detail::fill_same(out, X.levels, [k, X](const auto& x) {
        auto v = X(x);
        auto a = quadratic_form(k, x, v) / quadratic_form(k, x, x);
        for (int i = 0; i < 4; ++i) v[i] -= a * x[i];
        return v;
    });
    return out;
}

// Table 3 as printed: |x|² X − (x·X) x on S³.
inline VectorField table3_printed(int i) {
    return vector_field(Chart::Ambient, 4, [i](const auto& x) {
        using T = scalar_of<decltype(x)>;
        const T &x0 = x[0], &x1 = x[1], &x2 = x[2], &x3 = x[3];
        const T a0 = x0 * x0, a1 = x1 * x1, a2 = x2 * x2, a3 = x3 * x3;
        switch (i) {
            case 1: return VecT<T>{x0 * (2.0 * a1 + a2 + a3), -x1 * (2.0 * a0 + a2 + a3), -x2 * (a0 - a1), -x3 * (a0 - a1)};
            case 2:
                return VecT<T>{-x0 * (x0 * x2 - x1 * x3), -(x3 * (a0 + a2 + a3) + x0 * x1 * x2),
                               x0 * (a0 + a1 + a3) + x1 * x2 * x3, -x3 * (x0 * x2 - x1 * x3)};
            case 3:
                return VecT<T>{x2 * (a1 + a2 * x2 + a3) + x0 * x1 * x3, -x1 * (x0 * x2 - x1 * x3),
                               -x2 * (x0 * x2 - x1 * x3), -(x1 * (a0 + a1 + a2) + x0 * x2 * x3)};
            case 4: return VecT<T>{-x0 * (a2 - a3), -x1 * (a2 - a3), x2 * (a0 + a1 + 2.0 * a3), -x3 * (a0 + a1 + 2.0 * a2)};
            case 5: return VecT<T>{x1 * a0, -x0 * (a0 + a2 + a3), x0 * x1 * x2, x0 * x1 * x3};
            case 6:
                return VecT<T>{x0 * (x0 * x3 + x1 * x2), -(x2 * (a0 + a2 + a3) - x0 * x1 * x3), x2 * (x0 * x3 + x1 * x2),
                               -(x0 * (a0 + a1 + a2) - x1 * x2 * x3)};
            case 7: return VecT<T>{x0 * x2 * x3, x1 * x2 * x3, x3 * a2, -x2 * (a0 + a1 + a2)};
            case 8: return VecT<T>{x1 * (a1 + a2 + a3), -x0 * a1, -x0 * x1 * x2, -x0 * x1 * x3};
            case 9:
                return VecT<T>{x3 * (a1 + a2 + a3) - x0 * x1 * x2, -x1 * (x0 * x3 + x1 * x2),
                               x1 * (a0 + a1 + a3) - x0 * x2 * x3, -x3 * (x0 * x3 + x1 * x2)};
            case 10: return VecT<T>{-x0 * x2 * x3, -x1 * x2 * x3, x3 * (a0 + a1 + a3), -x2 * a3};
        }
        throw IndexError("table 3 index out of range");
    });
}

// Hamiltonians h_{κ,i} in geodesic parallel coordinates, as tabulated.
inline ScalarField ck_hamiltonian(const KappaTriple& k, int i) {
    return scalar_field(Chart::Parallel, 3, [k, i](const auto& c) {
        const double k01 = k.k01(), k02 = k.k02(), k03 = k.k03();
        const auto &x = c[0], &y = c[1], &z = c[2];
        auto Cx = ck_cos(k01, x), Sx = ck_sin(k01, x);
        auto Cy = ck_cos(k02, y), Sy = ck_sin(k02, y);
        auto Cz = ck_cos(k03, z), Sz = ck_sin(k03, z);
        switch (i) {
            case 1: return 0.5 * ck_sin(k01, 2.0 * x) * Cy * Cy * Cz * Cz;
            case 2: return 0.5 * Cx * Cy * ck_sin(k03, 2.0 * z);
            case 3: return 0.5 * Sx * ck_sin(k02, 2.0 * y) * Cz * Cz;
            case 4: return 0.5 * Sy * ck_sin(k03, 2.0 * z);
            case 5: return 0.5 * Cx * Cx * Cy * Cy * Cz * Cz;
            case 6: return 0.5 * Cx * ck_sin(k02, 2.0 * y) * Cz * Cz;
            case 7: return 0.5 * Sy * Sy * Cz * Cz;
            case 8: return 0.5 * Sx * Sx * Cy * Cy * Cz * Cz;
            case 9: return 0.5 * Sx * Cy * ck_sin(k03, 2.0 * z);
            case 10: return 0.5 * Sz * Sz;
        }
        throw IndexError("sp4 index out of range");
    });
}

// Contact Hamiltonian fields X_{κ,i} in geodesic parallel coordinates, as tabulated.
inline VectorField ck_field(const KappaTriple& k, int i) {
    return vector_field(Chart::Parallel, 3, [k, i](const auto& c) {
        using T = scalar_of<decltype(c)>;
        const double k01 = k.k01(), k02 = k.k02(), k03 = k.k03();
        const T &x = c[0], &y = c[1], &z = c[2];
        T Cx = ck_cos(k01, x), Sx = ck_sin(k01, x);
        T Cy = ck_cos(k02, y), Sy = ck_sin(k02, y);
        T Cz = ck_cos(k03, z), Sz = ck_sin(k03, z), Tz = ck_tan(k03, z);
        T Ty = ck_tan(k02, y);
        T S2x = ck_sin(k01, 2.0 * x), C2x = ck_cos(k01, 2.0 * x);
        T S2y = ck_sin(k02, 2.0 * y), C2y = ck_cos(k02, 2.0 * y);
        T S2z = ck_sin(k03, 2.0 * z);
        const T o(0.0);
        switch (i) {
            case 1: return VecT<T>{-S2x, -0.5 * C2x * S2y, -0.5 * C2x * Cy * Cy * S2z};
            case 2:
                return VecT<T>{-Cx * Tz / Cy, Cx * Cy * Cy + k01 * Sx * Sy * Tz,
                               k01 * Sx * Cy * Sz * Sz - 0.25 * k02 * Cx * S2y * S2z};
            case 3: return VecT<T>{-Sx * Ty, -Cx * Sy * Sy, -Cy * Cz * Cz * (Sx + Cx * Sy * Tz)};
            case 4: return VecT<T>{o, 0.5 * S2y, 0.25 * S2z * (C2y - 3.0)};
            case 5: return VecT<T>{-Cx * Cx, 0.25 * k01 * S2x * S2y, 0.25 * k01 * S2x * Cy * Cy * S2z};
            case 6: return VecT<T>{-Cx * Ty, k01 * Sx * Sy * Sy, -(Cx * Cy * Cz * Cz - 0.25 * k01 * Sx * S2y * S2z)};
            case 7: return VecT<T>{o, o, -Sy * Cz * Cz};
            case 8: return VecT<T>{-Sx * Sx, -0.25 * S2x * S2y, -0.25 * S2x * Cy * Cy * S2z};
            case 9:
                return VecT<T>{-Sx * Tz / Cy, Sx * Cy * Cy - Cx * Sy * Tz, -0.5 * Cy * S2z * (Cx * Tz + k02 * Sx * Sy)};
            case 10: return VecT<T>{o, Cy * Tz, -k02 * Sy * Sz * Sz};
        }
        throw IndexError("sp4 index out of range");
    });
}

// Liouville fields of S³ and AdS as printed in parallel coordinates (κ = (1, κ2, 1)).
inline VectorField liouville_printed(double k2, int i) {
    return vector_field(Chart::Parallel, 3, [k2, i](const auto& c) {
        using T = scalar_of<decltype(c)>;
        const T &x = c[0], &y = c[1], &z = c[2];
        T sx = sin(x), cx = cos(x);
        T Cy = ck_cos(k2, y), Sy = ck_sin(k2, y), Ty = ck_tan(k2, y), Tz = ck_tan(k2, z);
        switch (i) {
            case 1: return VecT<T>{T(-0.5), -0.5 * k2 * Cy * Tz, 0.5 * k2 * Sy};
            case 2: return VecT<T>{0.5 * (sx * Ty - k2 * cx / Cy * Tz), 0.5 * k2 * (cx + sx * Sy * Tz), 0.5 * sx * Cy};
            case 3:
                return VecT<T>{-0.5 * (cx * Ty + k2 * sx / Cy * Tz), 0.5 * k2 * (sx - cx * Sy * Tz), -0.5 * cx * Cy};
            case 4: return VecT<T>{T(2.0), -2.0 * k2 * Cy * Tz, 2.0 * k2 * Sy};
        }
        throw IndexError("liouville index out of range");
    });
}

// Two-photon algebra h6 in the basis (N, A+, A−, B+, B−, M).
inline StructureTable two_photon_table() {
    enum { N = 1, Ap, Am, Bp, Bm, M };
    StructureTable t(6);
    t.add(N, Ap, Ap, 1).add(N, Am, Am, -1).add(Am, Ap, M, 1);
    t.add(N, Bp, Bp, 2).add(N, Bm, Bm, -2).add(Bm, Bp, N, 4).add(Bm, Bp, M, 2);
    t.add(Ap, Bm, Am, -2).add(Am, Bp, Ap, 2);
    return t;
}

struct AlgebraSignature {
    int dim = 0;
    int center = 0;
    int derived = 0;
    int killing_rank = 0;
    bool operator==(const AlgebraSignature&) const = default;
};

namespace detail {

inline int numeric_rank(std::vector<Vec> rows, double tol = 1e-9) {
    int rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t piv = rank;
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (std::abs(rows[r][c]) > std::abs(rows[piv][c])) piv = r;
        if (std::abs(rows[piv][c]) < tol) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<std::size_t>(rank)) continue;
            const double f = rows[r][c] / rows[rank][c];
            for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

// Basis-independent invariants of a structure table.
inline AlgebraSignature algebra_signature(const StructureTable& t) {
    const int n = t.n;
    AlgebraSignature s;
    s.dim = n;
    // center: kernel of x ↦ (ad x) as an n·n vector
    std::vector<Vec> ad_rows;
    for (int i = 0; i < n; ++i) {
        Vec r;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) r.push_back(t(i, j, k));
        ad_rows.push_back(r);
    }
    s.center = n - detail::numeric_rank(ad_rows);
    std::vector<Vec> brackets;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec r(n);
            for (int k = 0; k < n; ++k) r[k] = t(i, j, k);
            brackets.push_back(r);
        }
    s.derived = detail::numeric_rank(brackets);
    std::vector<Vec> killing(n, Vec(n, 0.0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) killing[a][b] += t(a, k, l) * t(b, l, k);
    s.killing_rank = detail::numeric_rank(killing, 1e-9);
    return s;
}

// sup |Σ_l (c_ijl c_lkm + cyclic)|
inline double jacobi_identity_residual(const StructureTable& t) {
    double worst = 0.0;
    const int n = t.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int m = 0; m < n; ++m) {
                    double s = 0.0;
                    for (int l = 0; l < n; ++l)
                        s += t(i, j, l) * t(l, k, m) + t(j, k, l) * t(l, i, m) + t(k, i, l) * t(l, j, m);
                    worst = std::max(worst, std::abs(s));
                }
    return worst;
}

// sup |φ([e_i, e_j]) − [φ e_i, φ e_j]| for a linear map given by rows φ(e_i) in the target basis.
inline double homomorphism_residual(const StructureTable& source, const StructureTable& target,
                                    const std::vector<Vec>& phi) {
    const int n = source.n, m = target.n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < m; ++r) {
                double lhs = 0.0, rhs = 0.0;
                for (int k = 0; k < n; ++k) lhs += source(i, j, k) * phi[k][r];
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b) rhs += phi[i][a] * phi[j][b] * target(a, b, r);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
    return worst;
}

// Restriction of a one-based table to a subset of basis elements.
inline StructureTable sub_table(const StructureTable& t, const std::vector<int>& keep) {
    StructureTable s(static_cast<int>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = 0; b < keep.size(); ++b)
            for (std::size_t c = 0; c < keep.size(); ++c)
                s.at(a, b, c) = t(keep[a] - 1, keep[b] - 1, keep[c] - 1);
    return s;
}

// ---------------------------------------------------------------------------
// samplers and monitors

namespace detail {

inline std::function<Vec(Rng&)> box_sampler(Box b) {
    return [b](Rng& r) { return r.box(b); };
}

inline std::function<Vec(Rng&)> ambient_sampler(const KappaTriple& k) {
    Box b = parallel_box(k);
    return [k, b](Rng& r) { return embed_parallel(k, r.box(b)); };
}

inline Monitor constraint_monitor(const KappaTriple& k) {
    return {"constraint", [k](const Vec& x) { return quadratic_form(k, x, x) - 1.0; }, false};
}

inline std::vector<std::string> numbered(const std::string& prefix, int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

inline void require_kappa(const std::string& id, const std::optional<KappaTriple>& k) {
    if (!k) throw KappaRequired("system '" + id + "' needs --kappa");
}

inline bool normalized_space(const KappaTriple& k) {
    for (const auto& s : nine_spaces())
        if (s == k) return true;
    return false;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// catalog entries

inline SystemDescriptor make_osc2d() {
    SystemDescriptor d;
    d.id = "osc2d";
    d.title = "isotropic oscillator with time-dependent frequency";
    d.class_label = "sl(2,R)";
    d.chart = Chart::OscCart;
    d.dim = 4;
    d.ids = detail::numbered("b", 3);
    d.structure = StructureKind::Symplectic;
    // coordinates (q1, q2, p1, p2)
    d.fields = {
        vector_field(Chart::OscCart, 4,
                     [](const auto& x) { return VecT<scalar_of<decltype(x)>>{x[2], x[3], 0.0 * x[0], 0.0 * x[0]}; }),
        vector_field(Chart::OscCart, 4,
                     [](const auto& x) { return VecT<scalar_of<decltype(x)>>{x[0], x[1], -x[2], -x[3]}; }),
        vector_field(Chart::OscCart, 4,
                     [](const auto& x) { return VecT<scalar_of<decltype(x)>>{0.0 * x[0], 0.0 * x[0], -x[0], -x[1]}; }),
    };
    d.hamiltonians = {
        scalar_field(Chart::OscCart, 4, [](const auto& x) { return 0.5 * (x[2] * x[2] + x[3] * x[3]); }),
        scalar_field(Chart::OscCart, 4, [](const auto& x) { return x[0] * x[2] + x[1] * x[3]; }),
        scalar_field(Chart::OscCart, 4, [](const auto& x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); }),
    };
    d.field_table = StructureTable(3);
    d.field_table.add(1, 2, 1, 2).add(1, 3, 2, 1).add(2, 3, 3, 2);
    d.hamiltonian_table = d.field_table.scaled(-1);
    d.ss = make_symplectic(canonical_form(Chart::OscCart, 2));
    d.presets = {{"b1", "1"}, {"b3", "(1+0.5*sin(t))*(1+0.5*sin(t))"}};
    ScalarField L = scalar_field(Chart::OscCart, 4, [](const auto& x) { return x[0] * x[3] - x[1] * x[2]; });
    d.first_integrals = {{"angular_momentum", L}};
    d.sampler = detail::box_sampler({{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}});

    d.sim.chart = Chart::OscCart;
    d.sim.dim = 4;
    d.sim.fields = d.fields;
    d.sim.x0 = {1.0, 0.0, 0.0, 1.0};
    auto h1 = d.hamiltonians[0], h3 = d.hamiltonians[2];
    d.sim.monitors = {{"angular_momentum", [L](const Vec& x) { return L(x); }, true},
                      {"energy", [h1, h3](const Vec& x) { return h1(x) + h3(x); }, true}};

    ScalingExample s;
    s.ss = *d.ss;
    s.symmetry.delta = vector_field(Chart::OscCart, 4, [](const auto& x) {
        return VecT<scalar_of<decltype(x)>>{0.5 * x[0], 0.5 * x[1], 0.5 * x[2], 0.5 * x[3]};
    });
    s.symmetry.group = ScalingGroup::PositiveReals;
    s.ss.lambda = symplectic_potential(s.ss.omega, s.symmetry.delta);
    s.F = d.hamiltonians[2];
    s.F = scalar_field(Chart::OscCart, 4, [](const auto& x) { return x[0] * x[0] + x[1] * x[1]; });
    s.fields = d.fields;
    s.hamiltonians = d.hamiltonians;
    s.poisson_table = d.hamiltonian_table;
    // reduced chart (ρ, θ1, θ2) with ρ = |p| / |q|
    s.section = chart_map(Chart::OscReduced, 3, Chart::OscCart, 4, [](const auto& c) {
        using T = scalar_of<decltype(c)>;
        return VecT<T>{cos(c[1]), sin(c[1]), c[0] * cos(c[2]), c[0] * sin(c[2])};
    });
    s.projection = chart_map(Chart::OscCart, 4, Chart::OscReduced, 3, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        T nq = sqrt(x[0] * x[0] + x[1] * x[1]), np = sqrt(x[2] * x[2] + x[3] * x[3]);
        return VecT<T>{np / nq, atan2(x[1], x[0]), atan2(x[3], x[2])};
    });
    s.printed_eta = one_form(Chart::OscReduced, 3, [](const auto& c) {
        using T = scalar_of<decltype(c)>;
        T co = cos(c[1] - c[2]), si = sin(c[1] - c[2]);
        return VecT<T>{0.5 * co, 0.5 * c[0] * si, 0.5 * c[0] * si};
    });
    s.eta_sign = 1;
    s.reduced_fields = {
        vector_field(Chart::OscReduced, 3,
                     [](const auto& c) {
                         using T = scalar_of<decltype(c)>;
                         return VecT<T>{-c[0] * c[0] * cos(c[1] - c[2]), -c[0] * sin(c[1] - c[2]), T(0.0)};
                     }),
        vector_field(Chart::OscReduced, 3,
                     [](const auto& c) {
                         using T = scalar_of<decltype(c)>;
                         return VecT<T>{-2.0 * c[0], T(0.0), T(0.0)};
                     }),
        vector_field(Chart::OscReduced, 3,
                     [](const auto& c) {
                         using T = scalar_of<decltype(c)>;
                         return VecT<T>{-cos(c[1] - c[2]), T(0.0), -sin(c[1] - c[2]) / c[0]};
                     }),
    };
    s.reduced_hamiltonians = {
        scalar_field(Chart::OscReduced, 3, [](const auto& c) { return 0.5 * c[0] * c[0]; }),
        scalar_field(Chart::OscReduced, 3, [](const auto& c) { return c[0] * cos(c[1] - c[2]); }),
        constant_scalar(Chart::OscReduced, 3, 0.5),
    };
    s.phase_box = {{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}};
    s.reduced_box = {{0.2, 2.0}, {-3.0, 3.0}, {-3.0, 3.0}};
    d.scaling = s;
    return d;
}

namespace detail {

// thermo phase space (q1, q2, q3, p1, p2, p3), h_{3(a-1)+b} = q_a p_b
inline VectorField thermo_field(int a, int b) {
    return vector_field(Chart::Thermo6, 6, [a, b](const auto& x) {
        using T = scalar_of<decltype(x)>;
        VecT<T> v(6, T(0.0));
        v[b] += x[a];
        v[3 + a] -= x[3 + b];
        return v;
    });
}

}  // namespace detail

// {h_ab, h_cd} = δ_ad h_cb − δ_bc h_ad
inline StructureTable thermo_poisson_table() {
    StructureTable t(9);
    auto idx = [](int a, int b) { return 3 * a + b; };
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int e = 0; e < 3; ++e) {
                    if (a == e) t.at(idx(a, b), idx(c, e), idx(c, b)) += 1;
                    if (b == c) t.at(idx(a, b), idx(c, e), idx(a, e)) -= 1;
                }
    return t;
}

inline SystemDescriptor make_thermo() {
    SystemDescriptor d;
    d.id = "thermo";
    d.title = "projective cotangent bundle of R^3 in the energy chart (U, S, V, T, P)";
    d.class_label = "sl(3,R)+R";
    d.chart = Chart::ThermoAffine;
    d.dim = 5;
    d.ids = detail::numbered("b", 9);
    d.structure = StructureKind::Contact;
    // affine chart (U, S, V, T, P)
    auto F5 = [](auto fn) { return vector_field(Chart::ThermoAffine, 5, fn); };
    d.fields = {
        F5([](const auto& c) { return VecT<scalar_of<decltype(c)>>{c[0], 0.0 * c[0], 0.0 * c[0], c[3], c[4]}; }),
        F5([](const auto& c) {
            return VecT<scalar_of<decltype(c)>>{0.0 * c[0], c[0], 0.0 * c[0], -c[3] * c[3], -c[3] * c[4]};
        }),
        F5([](const auto& c) {
            return VecT<scalar_of<decltype(c)>>{0.0 * c[0], 0.0 * c[0], c[0], c[3] * c[4], c[4] * c[4]};
        }),
        F5([](const auto& c) {
            using T = scalar_of<decltype(c)>;
            return VecT<T>{c[1], T(0.0), T(0.0), T(1.0), T(0.0)};
        }),
        F5([](const auto& c) { return VecT<scalar_of<decltype(c)>>{0.0 * c[0], c[1], 0.0 * c[0], -c[3], 0.0 * c[0]}; }),
        F5([](const auto& c) { return VecT<scalar_of<decltype(c)>>{0.0 * c[0], 0.0 * c[0], c[1], c[4], 0.0 * c[0]}; }),
        F5([](const auto& c) {
            using T = scalar_of<decltype(c)>;
            return VecT<T>{c[2], T(0.0), T(0.0), T(0.0), T(-1.0)};
        }),
        F5([](const auto& c) { return VecT<scalar_of<decltype(c)>>{0.0 * c[0], c[2], 0.0 * c[0], 0.0 * c[0], c[3]}; }),
        F5([](const auto& c) { return VecT<scalar_of<decltype(c)>>{0.0 * c[0], 0.0 * c[0], c[2], 0.0 * c[0], -c[4]}; }),
    };
    // −h_i∘σ with σ(U, S, V, T, P) = (U, S, V, 1, −T, P)
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            d.hamiltonians.push_back(scalar_field(Chart::ThermoAffine, 5, [a, b](const auto& c) {
                using T = scalar_of<decltype(c)>;
                T p = b == 0 ? T(1.0) : (b == 1 ? -c[3] : c[4]);
                return -(c[a] * p);
            }));
    StructureTable pt = thermo_poisson_table();
    d.field_table = pt.scaled(-1);
    d.hamiltonian_table = d.field_table;
    d.cs = make_contact(one_form(Chart::ThermoAffine, 5,
                                 [](const auto& c) {
                                     using T = scalar_of<decltype(c)>;
                                     return VecT<T>{T(1.0), -c[3], c[4], T(0.0), T(0.0)};
                                 }),
                        vector_field(Chart::ThermoAffine, 5, [](const auto& c) {
                            using T = scalar_of<decltype(c)>;
                            return VecT<T>{T(1.0), T(0.0), T(0.0), T(0.0), T(0.0)};
                        }));
    d.presets = {{"b1", "0.5"}, {"b2", "1"}, {"b4", "0.3*sin(t)"}, {"b9", "-0.2"}};
    d.sampler = detail::box_sampler({{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}});
    d.sim.chart = Chart::ThermoAffine;
    d.sim.dim = 5;
    d.sim.fields = d.fields;
    d.sim.x0 = {1.0, 1.0, 1.0, 1.0, 1.0};

    ScalingExample s;
    s.ss = make_symplectic(canonical_form(Chart::Thermo6, 3));
    s.symmetry.delta = vector_field(Chart::Thermo6, 6, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        return VecT<T>{T(0.0), T(0.0), T(0.0), x[3], x[4], x[5]};
    });
    s.symmetry.group = ScalingGroup::NonzeroReals;
    s.ss.lambda = symplectic_potential(s.ss.omega, s.symmetry.delta);
    s.F = scalar_field(Chart::Thermo6, 6, [](const auto& x) { return x[3]; });
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            s.fields.push_back(detail::thermo_field(a, b));
            s.hamiltonians.push_back(
                scalar_field(Chart::Thermo6, 6, [a, b](const auto& x) { return x[a] * x[3 + b]; }));
        }
    s.poisson_table = pt;
    s.section = chart_map(Chart::ThermoAffine, 5, Chart::Thermo6, 6, [](const auto& c) {
        using T = scalar_of<decltype(c)>;
        return VecT<T>{c[0], c[1], c[2], T(1.0), -c[3], c[4]};
    });
    s.projection = chart_map(Chart::Thermo6, 6, Chart::ThermoAffine, 5, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        return VecT<T>{x[0], x[1], x[2], -x[4] / x[3], x[5] / x[3]};
    });
    s.printed_eta = d.cs->eta;
    s.eta_sign = -1;
    s.reduced_fields = d.fields;
    s.reduced_hamiltonians = d.hamiltonians;
    s.phase_box = {{-2, 2}, {-2, 2}, {-2, 2}, {0.3, 2}, {-2, 2}, {-2, 2}};
    s.reduced_box = {{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}};
    d.scaling = s;
    return d;
}

namespace detail {

inline std::vector<VectorField> sp4_fields() {
    std::vector<VectorField> v;
    for (int i = 1; i <= 10; ++i) v.push_back(sp4_field(i));
    return v;
}

inline std::vector<ScalarField> sp4_hamiltonians() {
    std::vector<ScalarField> v;
    for (int i = 1; i <= 10; ++i) v.push_back(sp4_hamiltonian(i));
    return v;
}

inline std::map<std::string, std::string> sp4_presets() {
    return {{"b1", "0.3"}, {"b2", "0.2*sin(t)"}, {"b5", "0.5"}, {"b8", "0.5"}, {"b10", "0.1*cos(t)"}};
}

}  // namespace detail

inline SystemDescriptor make_sp4_r4() {
    SystemDescriptor d;
    d.id = "sp4-r4";
    d.title = "sp(4,R) Lie-Hamilton system on R^4";
    d.class_label = "sp(4,R)";
    d.chart = Chart::Ambient;
    d.dim = 4;
    d.ids = detail::numbered("b", 10);
    d.structure = StructureKind::Symplectic;
    d.fields = detail::sp4_fields();
    d.hamiltonians = detail::sp4_hamiltonians();
    d.field_table = sp4_table();
    d.hamiltonian_table = d.field_table.scaled(-1);
    d.ss = make_symplectic(darboux_pairs_form(Chart::Ambient));
    d.presets = detail::sp4_presets();
    d.sampler = detail::box_sampler({{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}});
    d.sim.chart = Chart::Ambient;
    d.sim.dim = 4;
    d.sim.fields = d.fields;
    d.sim.x0 = {1.0, 0.5, -0.3, 0.2};

    const KappaTriple round{1, 1, 1};
    ScalingExample s;
    s.ss = *d.ss;
    s.symmetry.delta = vector_field(Chart::Ambient, 4, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        return VecT<T>{0.5 * x[0], 0.5 * x[1], 0.5 * x[2], 0.5 * x[3]};
    });
    s.ss.lambda = symplectic_potential(s.ss.omega, s.symmetry.delta);
    s.F = ambient_constraint(round);
    s.fields = d.fields;
    s.hamiltonians = d.hamiltonians;
    s.poisson_table = d.hamiltonian_table;
    s.section = parallel_map(round);
    s.projection = chart_map(Chart::Ambient, 4, Chart::Parallel, 3, [round](const auto& x) {
        auto n = sqrt(quadratic_form(round, x, x));
        auto u = x;
        for (auto& c : u) c = c / n;
        return parallel_from_ambient(round, u);
    });
    s.printed_eta = contact_structure(round, Chart::Parallel).eta;
    s.eta_sign = 1;
    for (int i = 1; i <= 10; ++i) {
        s.reduced_fields.push_back(ck_field(round, i));
        s.reduced_hamiltonians.push_back(ck_hamiltonian(round, i));
    }
    s.phase_box = {{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}};
    s.reduced_box = parallel_box(round);
    d.scaling = s;
    return d;
}

inline SystemDescriptor make_sp4_ambient(const std::string& id, const KappaTriple& k) {
    SystemDescriptor d;
    d.id = id;
    d.kappa = k;
    d.class_label = "sp(4,R)";
    d.chart = Chart::Ambient;
    d.dim = 4;
    d.ids = detail::numbered("b", 10);
    d.structure = StructureKind::Contact;
    for (int i = 1; i <= 10; ++i) d.fields.push_back(level_set_projection(k, sp4_field(i)));
    d.hamiltonians = detail::sp4_hamiltonians();
    d.field_table = sp4_table();
    d.hamiltonian_table = d.field_table;
    d.cs = contact_structure(k, Chart::Ambient);
    d.presets = detail::sp4_presets();
    d.sampler = detail::ambient_sampler(k);
    d.sim.chart = Chart::Ambient;
    d.sim.dim = 4;
    d.sim.fields = d.fields;
    d.sim.x0 = embed_parallel(k, Vec{0.1, 0.2, 0.3});
    d.sim.monitors = {detail::constraint_monitor(k)};
    d.sim.constraint_monitor = 0;
    d.sim.to_ambient = chart_map(Chart::Ambient, 4, Chart::Ambient, 4, [](const auto& x) { return x; });
    return d;
}

inline SystemDescriptor make_sp4_s3() {
    SystemDescriptor d = make_sp4_ambient("sp4-s3", KappaTriple{1, 1, 1});
    d.title = "sp(4,R) contact Lie system on S^3 (radially projected fields)";
    return d;
}

inline SystemDescriptor make_sp4_ck(const KappaTriple& k) {
    SystemDescriptor d;
    d.id = "sp4-ck";
    d.title = "sp(4,R) contact Lie system on the Cayley-Klein space " + k.str();
    d.kappa = k;
    d.class_label = "sp(4,R)";
    d.chart = Chart::Parallel;
    d.dim = 3;
    d.ids = detail::numbered("b", 10);
    d.structure = StructureKind::Contact;
    for (int i = 1; i <= 10; ++i) {
        d.fields.push_back(ck_field(k, i));
        d.hamiltonians.push_back(ck_hamiltonian(k, i));
    }
    d.field_table = sp4_table();
    d.hamiltonian_table = d.field_table;
    d.cs = contact_structure(k, Chart::Parallel);
    d.presets = detail::sp4_presets();
    d.sampler = detail::box_sampler(parallel_box(k));
    SystemDescriptor amb = make_sp4_ambient("sp4-ck", k);
    d.sim = amb.sim;
    return d;
}

namespace detail {

// Liouville fields of S³ / AdS in Weierstrass coordinates.
inline std::vector<VectorField> liouville_ambient_fields(double k2) {
    const KappaTriple k{1, k2, 1};
    auto F = [](auto fn) { return vector_field(Chart::Ambient, 4, fn); };
    return {
        F([k2](const auto& x) {
            return VecT<scalar_of<decltype(x)>>{0.5 * x[1], -0.5 * x[0], -0.5 * k2 * x[3], 0.5 * k2 * x[2]};
        }),
        F([k2](const auto& x) {
            return VecT<scalar_of<decltype(x)>>{-0.5 * x[2], -0.5 * k2 * x[3], 0.5 * k2 * x[0], 0.5 * x[1]};
        }),
        F([k2](const auto& x) {
            return VecT<scalar_of<decltype(x)>>{0.5 * k2 * x[3], -0.5 * x[2], 0.5 * k2 * x[1], -0.5 * x[0]};
        }),
        ambient_reeb(k),
    };
}

inline std::vector<ScalarField> liouville_hamiltonians(double k2) {
    auto S = [](auto fn) { return scalar_field(Chart::Ambient, 4, fn); };
    return {
        S([k2](const auto& x) {
            return 0.25 * (x[0] * x[0] + x[1] * x[1] - k2 * x[2] * x[2] - k2 * x[3] * x[3]);
        }),
        S([k2](const auto& x) { return 0.5 * (k2 * x[0] * x[3] - x[1] * x[2]); }),
        S([k2](const auto& x) { return 0.5 * (x[0] * x[2] + k2 * x[1] * x[3]); }),
        constant_scalar(Chart::Ambient, 4, -1.0),
    };
}

inline StructureTable liouville_table(double k2) {
    StructureTable t(4);
    t.add(1, 2, 3, 1).add(1, 3, 2, -1).add(2, 3, 1, k2);
    return t;
}

}  // namespace detail

inline SystemDescriptor make_liouville_sphere(const std::string& id, double k2) {
    const KappaTriple k{1, k2, 1};
    SystemDescriptor d;
    d.id = id;
    d.kappa = k;
    d.title = k2 > 0 ? "Liouville-type contact Lie system on S^3" : "Liouville-type contact Lie system on AdS^{2+1}";
    d.class_label = k2 > 0 ? "so(3)+R" : "so(2,1)+R";
    d.chart = Chart::Ambient;
    d.dim = 4;
    d.ids = detail::numbered("a", 4);
    d.structure = StructureKind::Contact;
    d.fields = detail::liouville_ambient_fields(k2);
    d.hamiltonians = detail::liouville_hamiltonians(k2);
    d.field_table = detail::liouville_table(k2);
    d.hamiltonian_table = d.field_table;
    d.cs = contact_structure(k, Chart::Ambient);
    d.presets = {{"a1", "1"}, {"a2", "0.3"}, {"a3", "0.2*sin(t)"}, {"a4", "0.5"}};
    d.reeb_index = 3;
    ContactStructure cs = *d.cs;
    const char* names[] = {"eta_J01", "eta_J02", "eta_J03", "eta_J12", "eta_J13", "eta_J23"};
    for (int i : {0, 2, 4, 5}) {
        const auto& [a, b] = ck_pairs()[i];
        VectorField K = killing_field(k, a, b);
        OneForm eta = cs.eta;
        d.first_integrals.push_back(
            {names[i], scalar_field(Chart::Ambient, 4, [eta, K](const auto& x) { return dot(eta(x), K(x)); })});
    }
    d.first_integrals.push_back({"h4_printed", scalar_field(Chart::Ambient, 4, [k2](const auto& x) {
                                     return x[0] * x[0] + x[1] * x[1] + k2 * x[2] * x[2] + k2 * x[3] * x[3];
                                 })});
    d.sampler = detail::ambient_sampler(k);
    d.sim.chart = Chart::Ambient;
    d.sim.dim = 4;
    d.sim.fields = d.fields;
    d.sim.x0 = embed_parallel(k, Vec{0.3, -0.2, 0.4});
    d.sim.monitors = {detail::constraint_monitor(k)};
    d.sim.constraint_monitor = 0;
    d.sim.to_ambient = chart_map(Chart::Ambient, 4, Chart::Ambient, 4, [](const auto& x) { return x; });
    return d;
}

namespace detail {

inline void parallel_sim(SystemDescriptor& d, const KappaTriple& k, Vec x0) {
    d.sim.chart = Chart::Parallel;
    d.sim.dim = 3;
    d.sim.fields = d.fields;
    d.sim.x0 = std::move(x0);
    d.sim.to_ambient = parallel_map(k);
}

inline std::vector<FirstIntegral> name_integrals(const std::vector<std::string>& names,
                                                 const std::vector<ScalarField>& fs) {
    std::vector<FirstIntegral> out;
    for (std::size_t i = 0; i < fs.size(); ++i) out.push_back({names[i], fs[i]});
    return out;
}

}  // namespace detail

inline SystemDescriptor make_liouville_flat(const KappaTriple& k) {
    if (k.k1 != 0.0 || k.k3 != 1.0) throw UnsupportedKappa("liouville-flat needs kappa = (0, k2, 1)");
    SystemDescriptor d;
    d.id = "liouville-flat";
    d.kappa = k;
    d.title = "Liouville-type contact Lie system on the flat space " + k.str();
    d.class_label = "h6";
    d.chart = Chart::Parallel;
    d.dim = 3;
    d.ids = {"b2", "b4", "b5", "b6", "b7", "b10"};
    d.structure = StructureKind::Contact;
    auto F = [](auto fn) { return vector_field(Chart::Parallel, 3, fn); };
    auto S = [](auto fn) { return scalar_field(Chart::Parallel, 3, fn); };
    d.fields = {
        F([](const auto& c) { return VecT<scalar_of<decltype(c)>>{-c[2], 1.0 + 0.0 * c[0], 0.0 * c[0]}; }),
        F([](const auto& c) { return VecT<scalar_of<decltype(c)>>{0.0 * c[0], c[1], -c[2]}; }),
        F([](const auto& c) { return VecT<scalar_of<decltype(c)>>{-1.0 + 0.0 * c[0], 0.0 * c[0], 0.0 * c[0]}; }),
        F([](const auto& c) { return VecT<scalar_of<decltype(c)>>{-c[1], 0.0 * c[0], -1.0 + 0.0 * c[0]}; }),
        F([](const auto& c) { return VecT<scalar_of<decltype(c)>>{0.0 * c[0], 0.0 * c[0], -c[1]}; }),
        F([](const auto& c) { return VecT<scalar_of<decltype(c)>>{0.0 * c[0], c[2], 0.0 * c[0]}; }),
    };
    d.hamiltonians = {
        S([](const auto& c) { return c[2]; }),
        S([](const auto& c) { return c[1] * c[2]; }),
        constant_scalar(Chart::Parallel, 3, 0.5),
        S([](const auto& c) { return c[1]; }),
        S([](const auto& c) { return 0.5 * c[1] * c[1]; }),
        S([](const auto& c) { return 0.5 * c[2] * c[2]; }),
    };
    d.field_table = sub_table(sp4_table(), {2, 4, 5, 6, 7, 10});
    d.hamiltonian_table = d.field_table;
    d.cs = contact_structure(k, Chart::Parallel);
    d.presets = {{"b2", "1"}, {"b4", "0.2"}, {"b5", "0.5"}, {"b6", "0.3*cos(t)"}, {"b7", "0.1"}, {"b10", "0.2*sin(t)"}};
    d.reeb_index = 2;
    d.first_integrals = detail::name_integrals({"h2", "h4", "h5", "h6", "h7", "h10"}, d.hamiltonians);
    d.sampler = detail::box_sampler(parallel_box(k));
    detail::parallel_sim(d, k, {0.1, 0.4, -0.3});
    return d;
}

inline SystemDescriptor make_liouville_nh(const KappaTriple& k) {
    if (std::abs(k.k1) != 1.0 || k.k2 != 0.0 || k.k3 != 1.0)
        throw UnsupportedKappa("liouville-nh needs kappa = (+-1, 0, 1)");
    SystemDescriptor d;
    d.id = "liouville-nh";
    d.kappa = k;
    d.title = "Liouville-type contact Lie system on the Newton-Hooke spacetime " + k.str();
    d.class_label = "sl(2,R)+R";
    d.chart = Chart::Parallel;
    d.dim = 3;
    d.ids = {"b4", "b7", "b10", "b5"};
    d.structure = StructureKind::Contact;
    auto F = [](auto fn) { return vector_field(Chart::Parallel, 3, fn); };
    auto S = [](auto fn) { return scalar_field(Chart::Parallel, 3, fn); };
    d.fields = {
        F([](const auto& c) { return VecT<scalar_of<decltype(c)>>{0.0 * c[0], c[1], -c[2]}; }),
        F([](const auto& c) { return VecT<scalar_of<decltype(c)>>{0.0 * c[0], 0.0 * c[0], -c[1]}; }),
        F([](const auto& c) { return VecT<scalar_of<decltype(c)>>{0.0 * c[0], c[2], 0.0 * c[0]}; }),
        F([](const auto& c) { return VecT<scalar_of<decltype(c)>>{-1.0 + 0.0 * c[0], 0.0 * c[0], 0.0 * c[0]}; }),
    };
    d.hamiltonians = {
        S([](const auto& c) { return c[1] * c[2]; }),
        S([](const auto& c) { return 0.5 * c[1] * c[1]; }),
        S([](const auto& c) { return 0.5 * c[2] * c[2]; }),
        constant_scalar(Chart::Parallel, 3, 0.5),
    };
    d.field_table = StructureTable(4);
    d.field_table.add(1, 2, 2, 2).add(1, 3, 3, -2).add(2, 3, 1, -1);
    d.hamiltonian_table = d.field_table;
    d.cs = contact_structure(k, Chart::Parallel);
    d.presets = {{"b4", "0.2"}, {"b5", "1"}, {"b7", "0.3*sin(t)"}, {"b10", "0.1"}};
    d.reeb_index = 3;
    d.first_integrals = detail::name_integrals({"h4", "h7", "h10", "h5_plus_k1_h8"}, d.hamiltonians);
    auto h4 = d.hamiltonians[0], h7 = d.hamiltonians[1], h10 = d.hamiltonians[2];
    d.first_integrals.push_back({"casimir", S([h4, h7, h10](const auto& c) {
                                     auto a = h4(c);
                                     return 4.0 * h7(c) * h10(c) - a * a;
                                 })});
    d.sampler = detail::box_sampler(parallel_box(k));
    detail::parallel_sim(d, k, {0.1, 0.4, -0.3});
    return d;
}

inline SystemDescriptor make_liouville_h3() {
    const KappaTriple k{-1, 1, 1};
    SystemDescriptor d;
    d.id = "liouville-h3";
    d.kappa = k;
    d.title = "Liouville-type contact Lie system on hyperbolic space H^3";
    d.class_label = "R^2";
    d.chart = Chart::Parallel;
    d.dim = 3;
    d.ids = {"a1", "a2"};
    d.structure = StructureKind::Contact;
    d.fields = {
        vector_field(Chart::Parallel, 3,
                     [](const auto& c) {
                         using T = scalar_of<decltype(c)>;
                         return VecT<T>{T(0.0), cosh(c[1]) * tanh(c[2]), -sinh(c[1])};
                     }),
        linear_combination({-0.5}, {contact_structure(k, Chart::Parallel).reeb}),
    };
    d.hamiltonians = {
        scalar_field(Chart::Parallel, 3,
                     [](const auto& c) {
                         auto sy = sinh(c[1]), cz = cosh(c[2]), sz = sinh(c[2]);
                         return 0.5 * (sy * sy * cz * cz + sz * sz);
                     }),
        constant_scalar(Chart::Parallel, 3, 0.5),
    };
    d.field_table = StructureTable(2);
    d.hamiltonian_table = d.field_table;
    d.cs = contact_structure(k, Chart::Parallel);
    d.presets = {{"a1", "1"}, {"a2", "0.5*cos(t)"}};
    d.reeb_index = 1;
    d.first_integrals = detail::name_integrals({"h7_plus_h10", "h5_minus_h7_h8_h10"}, d.hamiltonians);
    d.sampler = detail::box_sampler(parallel_box(k));
    detail::parallel_sim(d, k, {0.1, 0.4, -0.3});
    return d;
}

// ---------------------------------------------------------------------------
// catalog

struct CatalogEntry {
    std::string id;
    bool needs_kappa;
    std::string kappa_note;
};

inline const std::vector<CatalogEntry>& catalog_ids() {
    static const std::vector<CatalogEntry> ids = {
        {"osc2d", false, ""},
        {"thermo", false, ""},
        {"sp4-r4", false, ""},
        {"sp4-s3", false, ""},
        {"sp4-ck", true, "any of the nine normalized triples with k3 = 1"},
        {"liouville-s3", false, "(1,1,1)"},
        {"liouville-ads", false, "(1,-1,1)"},
        {"liouville-flat", true, "(0,k2,1), k2 in {1,0,-1}"},
        {"liouville-nh", true, "(+-1,0,1)"},
        {"liouville-h3", false, "(-1,1,1)"},
    };
    return ids;
}

inline SystemDescriptor catalog_get(const std::string& id, std::optional<KappaTriple> k = std::nullopt) {
    auto fixed = [&](const KappaTriple& want) {
        if (k && !(*k == want))
            throw UnsupportedKappa("system '" + id + "' is defined only for kappa = " + want.str());
    };
    if (id == "osc2d") return make_osc2d();
    if (id == "thermo") return make_thermo();
    if (id == "sp4-r4") return make_sp4_r4();
    if (id == "sp4-s3") {
        fixed({1, 1, 1});
        return make_sp4_s3();
    }
    if (id == "sp4-ck") {
        detail::require_kappa(id, k);
        if (!detail::normalized_space(*k)) throw UnsupportedKappa("sp4-ck needs one of the nine triples with k3 = 1");
        return make_sp4_ck(*k);
    }
    if (id == "liouville-s3") {
        fixed({1, 1, 1});
        return make_liouville_sphere(id, 1.0);
    }
    if (id == "liouville-ads") {
        fixed({1, -1, 1});
        return make_liouville_sphere(id, -1.0);
    }
    if (id == "liouville-flat") {
        detail::require_kappa(id, k);
        return make_liouville_flat(*k);
    }
    if (id == "liouville-nh") {
        detail::require_kappa(id, k);
        return make_liouville_nh(*k);
    }
    if (id == "liouville-h3") {
        fixed({-1, 1, 1});
        return make_liouville_h3();
    }
    throw UnknownSystem("unknown system '" + id + "'");
}

// ---------------------------------------------------------------------------
// instantiation

using CoefficientMap = std::map<std::string, CoefficientExpr>;

inline CoefficientMap parse_coefficients(const std::map<std::string, std::string>& src) {
    CoefficientMap out;
    for (const auto& [k, v] : src) out.emplace(k, parse_coeff(v));
    return out;
}

namespace detail {

inline TimeDependentField assemble(const SystemDescriptor& d, const std::vector<VectorField>& basis,
                                   const CoefficientMap& coeffs) {
    for (const auto& [name, e] : coeffs) {
        (void)e;
        if (std::find(d.ids.begin(), d.ids.end(), name) == d.ids.end())
            throw UnknownCoefficient("system '" + d.id + "' has no coefficient '" + name + "'");
    }
    TimeDependentField F;
    F.chart = basis.front().chart;
    F.dim = basis.front().dim;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto it = coeffs.find(d.ids[i]);
        if (it == coeffs.end() || it->second.is_zero_constant()) continue;
        F.add(it->second, basis[i]);
    }
    return F;
}

}  // namespace detail

// Σ b_i(t) X_i on the descriptor chart; missing coefficients are zero.
inline TimeDependentField instantiate(const SystemDescriptor& d, const CoefficientMap& coeffs) {
    return detail::assemble(d, d.fields, coeffs);
}

// Same combination on the chart used for integration.
inline TimeDependentField instantiate_simulation(const SystemDescriptor& d, const CoefficientMap& coeffs) {
    return detail::assemble(d, d.sim.fields, coeffs);
}

inline std::vector<ScalarField> known_first_integrals(const SystemDescriptor& d) {
    std::vector<ScalarField> out;
    for (const auto& fi : d.first_integrals) out.push_back(fi.f);
    return out;
}

// ---------------------------------------------------------------------------
// descriptor checks

// ι_X ω = dh, or X = X_h for the contact structure (−η(X) = h on ambient models).
inline double pairing_residual(const SystemDescriptor& d, const std::vector<Vec>& samples) {
    if (d.structure == StructureKind::Symplectic)
        return hamiltonian_pairing_residual(*d.ss, d.fields, d.hamiltonians, samples);
    const ContactStructure& cs = *d.cs;
    if (!cs.constraint) return contact_pairing_residual(cs, d.fields, d.hamiltonians, samples);
    double worst = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (const Vec& p : samples)
            worst = std::max(worst, std::abs(-dot(cs.eta(p), d.fields[i](p)) - d.hamiltonians[i](p)));
    return worst;
}

// Function-bracket table: Poisson for symplectic entries, Jacobi for contact ones.
inline double hamiltonian_table_residual(const SystemDescriptor& d, const std::vector<Vec>& samples) {
    if (d.structure == StructureKind::Symplectic) {
        SymplecticStructure ss = *d.ss;
        return verify_function_table(d.hamiltonians, d.hamiltonian_table, samples,
                                     [&ss](const ScalarField& f, const ScalarField& g, const Vec& p) {
                                         return poisson_bracket(ss, f, g, p);
                                     });
    }
    const ContactStructure& cs = *d.cs;
    if (!cs.constraint) {
        return verify_function_table(d.hamiltonians, d.hamiltonian_table, samples,
                                     [&cs](const ScalarField& f, const ScalarField& g, const Vec& p) {
                                         return jacobi_bracket(cs, f, g, p);
                                     });
    }
    // ambient model: X_f g + g R f with the basis field standing in for X_f
    double worst = 0.0;
    for (const Vec& p : samples) {
        Vec R = cs.reeb(p);
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t j = i + 1; j < d.size(); ++j) {
                double b = dot(d.fields[i](p), gradient(d.hamiltonians[j], p)) +
                           d.hamiltonians[j](p) * dot(R, gradient(d.hamiltonians[i], p));
                for (std::size_t k = 0; k < d.size(); ++k) b -= d.hamiltonian_table(i, j, k) * d.hamiltonians[k](p);
                worst = std::max(worst, std::abs(b));
            }
    }
    return worst;
}

}  // namespace ckc

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ckcontact/calculus.hpp"
#include "ckcontact/errors.hpp"
#include "ckcontact/field.hpp"
#include "ckcontact/ktrig.hpp"
#include "ckcontact/linalg.hpp"
#include "ckcontact/rng.hpp"

namespace ckc {

struct KappaTriple {
    double k1 = 1.0, k2 = 1.0, k3 = 1.0;

    double k01() const { return k1; }
    double k02() const { return k1 * k2; }
    double k03() const { return k1 * k2 * k3; }
    double k12() const { return k2; }
    double k13() const { return k2 * k3; }
    double k23() const { return k3; }

    double kab(int a, int b) const {
        if (a > b) std::swap(a, b);
        if (a < 0 || b > 3 || a == b) throw IndexError("kappa index pair out of range");
        static constexpr int code[4][4] = {{-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
        switch (code[a][b]) {
            case 0: return k01();
            case 1: return k02();
            case 2: return k03();
            case 3: return k12();
            case 4: return k13();
            default: return k23();
        }
    }

    // diag(1, κ01, κ02, κ03)
    Vec ambient_diag() const { return {1.0, k01(), k02(), k03()}; }

    bool operator==(const KappaTriple&) const = default;

    std::string str() const {
        auto f = [](double v) {
            if (v == std::floor(v)) return std::to_string(static_cast<long>(v));
            std::string s = std::to_string(v);
            while (!s.empty() && s.back() == '0') s.pop_back();
            return s;
        };
        return "(" + f(k1) + "," + f(k2) + "," + f(k3) + ")";
    }
};

// The nine normalized spaces with κ3 = +1.
inline std::vector<KappaTriple> nine_spaces() {
    return {{1, 1, 1}, {1, -1, 1}, {0, 1, 1}, {-1, 1, 1}, {1, 0, 1},
            {-1, 0, 1}, {0, 0, 1}, {0, -1, 1}, {-1, -1, 1}};
}

inline std::vector<KappaTriple> sign_patterns() {
    std::vector<KappaTriple> out;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c) out.push_back({double(a), double(b), double(c)});
    return out;
}

template <class T>
T quadratic_form(const KappaTriple& k, const VecT<T>& p, const VecT<T>& q) {
    return p[0] * q[0] + k.k01() * p[1] * q[1] + k.k02() * p[2] * q[2] + k.k03() * p[3] * q[3];
}

template <class T>
VecT<T> embed_parallel(const KappaTriple& k, const VecT<T>& c) {
    const T& x = c[0];
    const T& y = c[1];
    const T& z = c[2];
    T cy = ck_cos(k.k02(), y), cz = ck_cos(k.k03(), z);
    return {ck_cos(k.k01(), x) * cy * cz, ck_sin(k.k01(), x) * cy * cz, ck_sin(k.k02(), y) * cz, ck_sin(k.k03(), z)};
}

template <class T>
VecT<T> embed_polar(const KappaTriple& k, const VecT<T>& c) {
    if (!(value(c[0]) > 0)) throw ChartError("embed_polar: r must be positive");
    T sr = ck_sin(k.k1, c[0]);
    T st = ck_sin(k.k2, c[1]);
    return {ck_cos(k.k1, c[0]), sr * ck_cos(k.k2, c[1]), sr * st * ck_cos(k.k3, c[2]), sr * st * ck_sin(k.k3, c[2])};
}

template <class T>
VecT<T> parallel_from_ambient(const KappaTriple& k, const VecT<T>& p) {
    T cz = sqrt(p[0] * p[0] + k.k01() * p[1] * p[1] + k.k02() * p[2] * p[2]);
    T z = ck_atan2(k.k03(), p[3], cz);
    T cyz = sqrt(p[0] * p[0] + k.k01() * p[1] * p[1]);
    T y = ck_atan2(k.k02(), p[2], cyz);
    T x = ck_atan2(k.k01(), p[1], p[0]);
    return {x, y, z};
}

template <class T>
VecT<T> polar_from_ambient(const KappaTriple& k, const VecT<T>& p) {
    T rest = sqrt(p[2] * p[2] + k.k3 * p[3] * p[3]);
    T s = sqrt(p[1] * p[1] + k.k2 * rest * rest);
    T r = ck_atan2(k.k1, s, p[0]);
    T th = ck_atan2(k.k2, rest, p[1]);
    T ph = ck_atan2(k.k3, p[3], p[2]);
    return {r, th, ph};
}

inline ChartMap parallel_map(const KappaTriple& k) {
    return chart_map(Chart::Parallel, 3, Chart::Ambient, 4, [k](const auto& c) { return embed_parallel(k, c); });
}

inline ChartMap polar_map(const KappaTriple& k) {
    return chart_map(Chart::Polar, 3, Chart::Ambient, 4, [k](const auto& c) { return embed_polar(k, c); });
}

inline ChartMap ambient_to_parallel(const KappaTriple& k) {
    return chart_map(Chart::Ambient, 4, Chart::Parallel, 3, [k](const auto& p) { return parallel_from_ambient(k, p); });
}

inline ChartMap ambient_to_polar(const KappaTriple& k) {
    return chart_map(Chart::Ambient, 4, Chart::Polar, 3, [k](const auto& p) { return polar_from_ambient(k, p); });
}

// Safe coordinate ranges for randomized sweeps.
inline double chart_bound(double k) {
    return k > 0 ? (std::numbers::pi / 2 - 0.1) / std::sqrt(k) : 1.5;
}

inline Box parallel_box(const KappaTriple& k) {
    return {{-chart_bound(k.k01()), chart_bound(k.k01())},
            {-chart_bound(k.k02()), chart_bound(k.k02())},
            {-chart_bound(k.k03()), chart_bound(k.k03())}};
}

inline Box polar_box(const KappaTriple& k) {
    return {{0.1, chart_bound(k.k1)}, {0.1, chart_bound(k.k2)}, {-chart_bound(k.k3), chart_bound(k.k3)}};
}

inline Mat metric_parallel(const KappaTriple& k, const Vec& c) {
    const double cy = ck_cos(k.k02(), c[1]), cz = ck_cos(k.k03(), c[2]);
    return diag({cy * cy * cz * cz, k.k2 * cz * cz, k.k2 * k.k3});
}

inline Mat metric_polar(const KappaTriple& k, const Vec& c) {
    const double sr = ck_sin(k.k1, c[0]), st = ck_sin(k.k2, c[1]);
    return diag({1.0, k.k2 * sr * sr, k.k2 * k.k3 * sr * sr * st * st});
}

inline SymTensor metric_parallel_field(const KappaTriple& k) {
    return sym_tensor(Chart::Parallel, 3, [k](const auto& c) {
        using T = typename std::decay_t<decltype(c)>::value_type;
        T cy = ck_cos(k.k02(), c[1]), cz = ck_cos(k.k03(), c[2]);
        MatT<T> g(3, 3);
        g(0, 0) = cy * cy * cz * cz;
        g(1, 1) = k.k2 * cz * cz;
        g(2, 2) = T(k.k2 * k.k3);
        return g;
    });
}

inline SymTensor metric_polar_field(const KappaTriple& k) {
    return sym_tensor(Chart::Polar, 3, [k](const auto& c) {
        using T = typename std::decay_t<decltype(c)>::value_type;
        T sr = ck_sin(k.k1, c[0]), st = ck_sin(k.k2, c[1]);
        MatT<T> g(3, 3);
        g(0, 0) = T(1.0);
        g(1, 1) = k.k2 * sr * sr;
        g(2, 2) = k.k2 * k.k3 * sr * sr * st * st;
        return g;
    });
}

// Flat metric diag(1, κ01, κ02, κ03) of the ambient space.
inline SymTensor ambient_metric(const KappaTriple& k) {
    const Vec d = k.ambient_diag();
    return sym_tensor(Chart::Ambient, 4, [d](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        MatT<T> g(4, 4);
        for (int i = 0; i < 4; ++i) g(i, i) = T(d[i]);
        return g;
    });
}

// Pullback of the ambient metric divided by κ1; undefined for κ1 = 0.
inline Mat metric_parallel_from_ambient(const KappaTriple& k, const Vec& c) {
    if (k.k1 == 0) throw DomainError("ambient metric pullback needs kappa1 != 0");
    Mat g = pullback(parallel_map(k), ambient_metric(k))(c);
    for (double& v : g.a) v /= k.k1;
    return g;
}

inline Mat metric_polar_from_ambient(const KappaTriple& k, const Vec& c) {
    if (k.k1 == 0) throw DomainError("ambient metric pullback needs kappa1 != 0");
    Mat g = pullback(polar_map(k), ambient_metric(k))(c);
    for (double& v : g.a) v /= k.k1;
    return g;
}

// Metric on the leaves x = const of the Newtonian spaces.
inline Mat subsidiary_metric(const KappaTriple& k, double /*leaf*/ = 0.0) {
    if (k.k2 != 0) throw DomainError("subsidiary metric requires kappa2 = 0");
    return identity(2);
}

// gamma[c](a, b) = Γ^c_ab in (r, θ, φ)
struct ConnectionAt {
    std::array<Mat, 3> gamma{Mat(3, 3), Mat(3, 3), Mat(3, 3)};
    double operator()(int c, int a, int b) const { return gamma[c](a, b); }
};

inline ConnectionAt connection_polar(const KappaTriple& k, const Vec& c) {
    const double r = c[0], th = c[1];
    const double cr = ck_cos(k.k1, r), sr = ck_sin(k.k1, r);
    const double ct = ck_cos(k.k2, th), st = ck_sin(k.k2, th);
    const double inv_tr = 1.0 / ck_tan(k.k1, r);
    const double inv_tt = 1.0 / ck_tan(k.k2, th);
    ConnectionAt G;
    auto sym = [&](int up, int a, int b, double v) {
        G.gamma[up](a, b) = v;
        G.gamma[up](b, a) = v;
    };
    sym(1, 1, 0, inv_tr);
    sym(2, 2, 0, inv_tr);
    sym(2, 2, 1, inv_tt);
    sym(0, 1, 1, -k.k2 * cr * sr);
    sym(0, 2, 2, -k.k2 * k.k3 * cr * sr * st * st);
    sym(1, 2, 2, -k.k3 * ct * st);
    return G;
}

// Levi-Civita symbols of a nondegenerate metric field, for cross-checking.
inline ConnectionAt christoffel(const SymTensor& g, const Vec& p) {
    const int n = 3;
    std::array<Mat, 3> dg{partial(g, p, 0), partial(g, p, 1), partial(g, p, 2)};
    Mat gv = g(p);
    ConnectionAt G;
    for (int c = 0; c < n; ++c) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Vec rhs(3);
                for (int l = 0; l < n; ++l) rhs[l] = 0.5 * (dg[a](l, b) + dg[b](l, a) - dg[l](a, b));
                Vec sol = solve(gv, rhs);
                G.gamma[c](a, b) = sol[c];
            }
    }
    return G;
}

// J_ab = κ_ab x^b ∂_a − x^a ∂_b on the ambient space.
inline VectorField killing_field(const KappaTriple& k, int a, int b) {
    if (a < 0 || b > 3 || a >= b) throw IndexError("killing_field: need 0 <= a < b <= 3");
    const double kab = k.kab(a, b);
    return vector_field(Chart::Ambient, 4, [a, b, kab](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        VecT<T> v(4, T(0.0));
        v[a] = kab * x[b];
        v[b] = -x[a];
        return v;
    });
}

inline const std::array<std::pair<int, int>, 6>& ck_pairs() {
    static const std::array<std::pair<int, int>, 6> p{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    return p;
}

inline std::string ck_name(int i) {
    const auto& [a, b] = ck_pairs()[i];
    return "J" + std::to_string(a) + std::to_string(b);
}

inline std::vector<VectorField> killing_basis(const KappaTriple& k) {
    std::vector<VectorField> out;
    for (const auto& [a, b] : ck_pairs()) out.push_back(killing_field(k, a, b));
    return out;
}

// Commutators of so_κ(4) in the basis J01, J02, J03, J12, J13, J23.
inline StructureTable ck_table(const KappaTriple& k) {
    enum { J01 = 1, J02, J03, J12, J13, J23 };
    StructureTable t(6);
    t.add(J01, J02, J12, k.k1).add(J01, J12, J02, -1).add(J02, J12, J01, k.k2);
    t.add(J01, J03, J13, k.k1).add(J01, J13, J03, -1).add(J03, J13, J01, k.k2 * k.k3);
    t.add(J02, J03, J23, k.k1 * k.k2).add(J02, J23, J03, -1).add(J03, J23, J02, k.k3);
    t.add(J12, J13, J23, k.k2).add(J12, J23, J13, -1).add(J13, J23, J12, k.k3);
    return t;
}

inline Mat group_exp(const KappaTriple& k, int a, int b, double s) {
    if (a < 0 || b > 3 || a >= b) throw IndexError("group_exp: need 0 <= a < b <= 3");
    const double kab = k.kab(a, b);
    Mat m = identity(4);
    const double c = ck_cos(kab, s), sn = ck_sin(kab, s);
    m(a, a) = c;
    m(b, b) = c;
    m(a, b) = -kab * sn;
    m(b, a) = sn;
    return m;
}

// Γ(J_ab) = −κ_ab E_ab + E_ba
inline Mat ck_generator_matrix(const KappaTriple& k, int a, int b) {
    Mat m(4, 4);
    m(a, b) = -k.kab(a, b);
    m(b, a) = 1.0;
    return m;
}

inline double isometry_residual(const KappaTriple& k, const Mat& m) {
    Mat I = diag(k.ambient_diag());
    return max_abs_diff(matmul(transpose(m), matmul(I, m)), I);
}

// Quadratic Casimirs as functions on the dual of so_κ(4); ξ in the J basis order.
template <class T>
T casimir1(const KappaTriple& k, const VecT<T>& j) {
    return k.k2 * k.k3 * j[0] * j[0] + k.k3 * j[1] * j[1] + j[2] * j[2] + k.k1 * k.k3 * j[3] * j[3] +
           k.k1 * j[4] * j[4] + k.k1 * k.k2 * j[5] * j[5];
}

template <class T>
T casimir2(const KappaTriple& k, const VecT<T>& j) {
    return k.k2 * j[0] * j[5] - j[1] * j[4] + j[2] * j[3];
}

// sup over ξ, generator e_j of |{C, ξ_j}| for the linear Poisson structure
// {ξ_i, ξ_j} = Σ_k c_ijk ξ_k.
inline double casimir_residual(const KappaTriple& k, const StructureTable& t, const std::vector<Vec>& points) {
    ScalarField c1 = scalar_field(Chart::Generic, 6, [k](const auto& j) { return casimir1(k, j); });
    ScalarField c2 = scalar_field(Chart::Generic, 6, [k](const auto& j) { return casimir2(k, j); });
    double worst = 0.0;
    for (const Vec& xi : points)
        for (const ScalarField* c : {&c1, &c2}) {
            Vec g = gradient(*c, xi);
            for (int j = 0; j < 6; ++j) {
                double s = 0.0;
                for (int i = 0; i < 6; ++i)
                    for (int l = 0; l < 6; ++l) s += g[i] * t(i, j, l) * xi[l];
                worst = std::max(worst, std::abs(s));
            }
        }
    return worst;
}

inline double casimir_invariance(const KappaTriple& k, std::uint64_t seed = 1) {
    Rng rng(seed);
    std::vector<Vec> pts;
    for (int i = 0; i < 50; ++i) pts.push_back(rng.cube(6, -2, 2));
    return casimir_residual(k, ck_table(k), pts);
}

}  // namespace ckc

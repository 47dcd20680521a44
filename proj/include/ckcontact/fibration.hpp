#pragma once

#include <cmath>
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
#include "ckcontact/rng.hpp"
#include "ckcontact/symplectic.hpp"
#include "ckcontact/systems.hpp"

namespace ckc {

// Fl_t(x) for the Reeb field of Σ_κ: rotation in (x0, x1) with C/S of κ01 at 2t,
// rotation in (x2, x3) with C/S of κ3 at 2κ02 t.
template <class T>
VecT<T> reeb_flow(const KappaTriple& k, const VecT<T>& x, const T& t) {
    const T s1 = 2.0 * t, s2 = 2.0 * k.k02() * t;
    const T c1 = ck_cos(k.k01(), s1), n1 = ck_sin(k.k01(), s1);
    const T c2 = ck_cos(k.k3, s2), n2 = ck_sin(k.k3, s2);
    return {c1 * x[0] - k.k01() * n1 * x[1], n1 * x[0] + c1 * x[1], c2 * x[2] - k.k3 * n2 * x[3],
            n2 * x[2] + c2 * x[3]};
}

inline Vec reeb_flow(const KappaTriple& k, const Vec& x, double t) { return reeb_flow<double>(k, x, t); }

// sup over the sample grid of ‖Fl_t(x) − numerical flow of R_κ‖∞ on [0, t1].
inline double reeb_flow_deviation(const KappaTriple& k, const Vec& x, double t1, double tol = 1e-14) {
    VectorField R = ambient_reeb(k);
    IntegratorOptions opt;
    opt.tol = tol;
    opt.sample_dt = 0.25;
    Trajectory tr = integrate([&R](double, const Vec& y) { return R(y); }, x, 0.0, t1, opt);
    double worst = 0.0;
    for (const auto& s : tr.samples) worst = std::max(worst, max_abs_diff(reeb_flow(k, x, s.t), s.x));
    return worst;
}

// Geodesic equation c'' + Γ(c', c') for t ↦ polar chart image of Fl_t(x), at parameter t.
inline double reeb_geodesic_residual(const KappaTriple& k, const Vec& x, double t) {
    VecT<D2> xd(x.begin(), x.end());
    D2 td(D1(t, 1.0), D1(1.0, 0.0));
    VecT<D2> c = polar_from_ambient(k, reeb_flow(k, xd, td));
    Vec pos(3), vel(3), acc(3);
    for (int i = 0; i < 3; ++i) {
        pos[i] = c[i].v.v;
        vel[i] = c[i].v.d;
        acc[i] = c[i].d.d;
    }
    ConnectionAt G = connection_polar(k, pos);
    double worst = 0.0;
    for (int m = 0; m < 3; ++m) {
        double r = acc[m];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) r += G(m, a, b) * vel[a] * vel[b];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

// sup of reeb_geodesic_residual over n polar-chart points and t ∈ {0, 0.05, 0.1}.
inline double reeb_geodesic_sweep(const KappaTriple& k, Rng& rng, int n) {
    const Box b = polar_box(k);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec x = embed_polar(k, rng.box(b));
        for (double t : {0.0, 0.05, 0.1}) worst = std::max(worst, reeb_geodesic_residual(k, x, t));
    }
    return worst;
}

// Along Fl_t the ambient acceleration is −4(κ01 x0, κ01 x1, κ02κ03 x2, κ02κ03 x3),
// normal to Σ_κ at every point only when κ01 = κ02 κ03.
inline bool reeb_orbits_are_geodesics(const KappaTriple& k) { return k.k01() == k.k02() * k.k03(); }

// The two de Sitter Reeb orbits through O = (1,0,0,0) and Q = (0,0,1,0).
struct DeSitterOrbits {
    double origin_orbit_residual = 0.0;  // vs (cosh 2t, sinh 2t, 0, 0)
    double q_orbit_residual = 0.0;       // vs (0, 0, cos 2t, sin 2t)
    double q_return = 0.0;               // ‖Fl_π(Q) − Q‖
    double origin_min_return = 0.0;      // min over t ∈ [1, 5] of ‖Fl_t(O) − O‖
};

inline DeSitterOrbits de_sitter_orbits() {
    const KappaTriple k{-1, -1, 1};
    const Vec O{1, 0, 0, 0}, Q{0, 0, 1, 0};
    DeSitterOrbits r;
    r.origin_min_return = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100; ++i) {
        const double t = 5.0 * i / 100;
        r.origin_orbit_residual = std::max(
            r.origin_orbit_residual, max_abs_diff(reeb_flow(k, O, t), Vec{std::cosh(2 * t), std::sinh(2 * t), 0, 0}));
        r.q_orbit_residual = std::max(r.q_orbit_residual,
                                      max_abs_diff(reeb_flow(k, Q, t), Vec{0, 0, std::cos(2 * t), std::sin(2 * t)}));
        if (t >= 1.0) r.origin_min_return = std::min(r.origin_min_return, max_abs_diff(reeb_flow(k, O, t), O));
    }
    r.q_return = max_abs_diff(reeb_flow(k, Q, std::numbers::pi), Q);
    return r;
}

// ---------------------------------------------------------------------------
// principal bundle projections

enum class TargetSpace { Sphere2, Disk, Plane };

struct FibrationMap {
    KappaTriple kappa;
    std::string name;
    TargetSpace target = TargetSpace::Plane;
    Chart chart = Chart::Plane;  // chart of the target points
    int target_dim = 2;
    ChartMap map;  // Ambient → target
    TwoForm omega;
    std::string class_label;

    Vec operator()(const Vec& x) const { return map(x); }
};

inline constexpr double kDiskGuard = 1e-6;
inline constexpr double kSheetGuard = 1e-9;

namespace detail {

inline FibrationMap hopf_map() {
    FibrationMap f;
    f.kappa = {1, 1, 1};
    f.name = "hopf";
    f.target = TargetSpace::Sphere2;
    f.chart = Chart::Sphere2Ambient;
    f.target_dim = 3;
    f.class_label = "P1";
    f.map = chart_map(Chart::Ambient, 4, Chart::Sphere2Ambient, 3, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        return VecT<T>{x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - x[3] * x[3], 2.0 * (x[0] * x[2] + x[1] * x[3]),
                       2.0 * (x[1] * x[2] - x[0] * x[3])};
    });
    // −¼ of the area form of the unit sphere, written on the ambient triple
    f.omega = two_form(Chart::Sphere2Ambient, 3, [](const auto& s) {
        using T = scalar_of<decltype(s)>;
        MatT<T> w(3, 3);
        w(0, 1) = -0.25 * s[2];
        w(1, 0) = 0.25 * s[2];
        w(0, 2) = 0.25 * s[1];
        w(2, 0) = -0.25 * s[1];
        w(1, 2) = -0.25 * s[0];
        w(2, 1) = 0.25 * s[0];
        return w;
    });
    return f;
}

inline FibrationMap ads_map() {
    FibrationMap f;
    f.kappa = {1, -1, 1};
    f.name = "anti-de-sitter";
    f.target = TargetSpace::Disk;
    f.chart = Chart::Disk;
    f.class_label = "P1 (hyperbolic)";
    f.map = chart_map(Chart::Ambient, 4, Chart::Disk, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        T d = x[0] * x[0] + x[1] * x[1];
        VecT<T> w{(x[0] * x[2] - x[1] * x[3]) / d, (x[0] * x[3] + x[1] * x[2]) / d};
        if (value(w[0] * w[0] + w[1] * w[1]) >= 1.0 - kDiskGuard) throw DomainError("disk projection: too close to the boundary");
        return w;
    });
    f.omega = two_form(Chart::Disk, 2, [](const auto& u) {
        using T = scalar_of<decltype(u)>;
        T s = 1.0 - u[0] * u[0] - u[1] * u[1];
        MatT<T> w(2, 2);
        w(0, 1) = 1.0 / (s * s);
        w(1, 0) = -w(0, 1);
        return w;
    });
    return f;
}

inline TwoForm plane_form() {
    return two_form(Chart::Plane, 2, [](const auto& u) {
        using T = scalar_of<decltype(u)>;
        MatT<T> w(2, 2);
        w(0, 1) = T(1.0);
        w(1, 0) = T(-1.0);
        return w;
    });
}

inline FibrationMap last_pair_map(const KappaTriple& k, std::string name, std::string label) {
    FibrationMap f;
    f.kappa = k;
    f.name = std::move(name);
    f.class_label = std::move(label);
    f.map = chart_map(Chart::Ambient, 4, Chart::Plane, 2,
                      [](const auto& x) { return VecT<scalar_of<decltype(x)>>{x[2], x[3]}; });
    f.omega = plane_form();
    return f;
}

inline FibrationMap hyperbolic_map() {
    FibrationMap f;
    f.kappa = {-1, 1, 1};
    f.name = "hyperbolic";
    f.class_label = "I1";
    f.map = chart_map(Chart::Ambient, 4, Chart::Plane, 2, [](const auto& x) {
        using T = scalar_of<decltype(x)>;
        if (value(x[0]) - std::abs(value(x[1])) <= kSheetGuard)
            throw DomainError("hyperbolic projection: point off the upper sheet");
        T psi = atanh(x[1] / x[0]);
        T c = cos(psi), s = sin(psi);
        return VecT<T>{x[2] * c - x[3] * s, x[2] * s + x[3] * c};
    });
    f.omega = plane_form();
    return f;
}

}  // namespace detail

inline FibrationMap fibration(const KappaTriple& k) {
    if (k == KappaTriple{-1, -1, 1})
        throw NotRegular("the Reeb orbits of de Sitter space are not all diffeomorphic; no principal bundle exists");
    if (k == KappaTriple{1, 1, 1}) return detail::hopf_map();
    if (k == KappaTriple{1, -1, 1}) return detail::ads_map();
    if (k == KappaTriple{-1, 1, 1}) return detail::hyperbolic_map();
    if (k.k1 == 0.0 && k.k3 == 1.0 && (k.k2 == 1.0 || k.k2 == 0.0 || k.k2 == -1.0))
        return detail::last_pair_map(k, "flat", "P5");
    if ((k.k1 == 1.0 || k.k1 == -1.0) && k.k2 == 0.0 && k.k3 == 1.0)
        return detail::last_pair_map(k, k.k1 > 0 ? "newton-hooke-oscillating" : "newton-hooke-expanding", "I5");
    throw UnsupportedKappa("no fibration is defined for kappa = " + k.str());
}

// The eight regular spaces among the nine normalized triples.
inline std::vector<KappaTriple> regular_spaces() {
    std::vector<KappaTriple> out;
    for (const auto& k : nine_spaces())
        if (!(k == KappaTriple{-1, -1, 1})) out.push_back(k);
    return out;
}

// |ω(Dπ v, Dπ w) − dη(v, w)| at an ambient point p.
inline double verify_pullback(const FibrationMap& f, const ContactStructure& cs, const Vec& p, const Vec& v,
                              const Vec& w) {
    Vec q = f(p);
    const double up = two_form_apply(f.omega(q), pushforward(f.map, p, v), pushforward(f.map, p, w));
    const double down = two_form_apply(exterior_d(cs.eta, p), v, w);
    return std::abs(up - down);
}

// Sample point on the part of Σ_κ where the projection is defined.
inline Vec fibration_sample(const FibrationMap& f, Rng& rng) {
    const KappaTriple& k = f.kappa;
    Box b = parallel_box(k);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Vec x = embed_parallel(k, rng.box(b));
        if (f.target == TargetSpace::Disk) {
            const double d = x[0] * x[0] + x[1] * x[1];
            const double r2 = (x[2] * x[2] + x[3] * x[3]) / d;
            if (r2 > 0.8) continue;
        }
        return x;
    }
    throw DomainError("fibration_sample: no admissible point found");
}

// sup of verify_pullback over n random tangent pairs.
inline double pullback_residual(const FibrationMap& f, Rng& rng, int n) {
    ContactStructure cs = contact_structure(f.kappa, Chart::Ambient);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec p = fibration_sample(f, rng);
        Vec v = tangent_part(f.kappa, p, rng.cube(4, -1, 1));
        Vec w = tangent_part(f.kappa, p, rng.cube(4, -1, 1));
        worst = std::max(worst, verify_pullback(f, cs, p, v, w));
    }
    return worst;
}

// sup of ‖π(Fl_t(x)) − π(x)‖ over sampled points and times.
inline double fiber_invariance(const FibrationMap& f, Rng& rng, int points, int times) {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        Vec x = fibration_sample(f, rng);
        Vec base = f(x);
        for (int j = 0; j < times; ++j) {
            const double t = rng.uniform(0.0, 2.0);
            Vec y = reeb_flow(f.kappa, x, t);
            if (f.target == TargetSpace::Disk) {
                // the AdS orbit stays in the same fiber, but Fl_t(x) may wander near x0 = x1 = 0
                const double d = y[0] * y[0] + y[1] * y[1];
                if (d < 1e-3) continue;
            }
            worst = std::max(worst, max_abs_diff(f(y), base));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// downstairs systems

namespace detail {

inline VectorField field2(Chart c, auto fn) { return vector_field(c, 2, fn); }
inline ScalarField scalar2(Chart c, auto fn) { return scalar_field(c, 2, fn); }

inline TwoForm sphere_angle_form() {
    return two_form(Chart::Sphere2, 2, [](const auto& a) {
        using T = scalar_of<decltype(a)>;
        MatT<T> w(2, 2);
        w(0, 1) = -0.25 * cos(a[1]);
        w(1, 0) = -w(0, 1);
        return w;
    });
}

inline SystemDescriptor downstairs_base(const SystemDescriptor& up, const FibrationMap& f, Chart chart,
                                        const TwoForm& omega) {
    SystemDescriptor d;
    d.id = up.id + "/reduced";
    d.title = "reduction of " + up.id + " along the Reeb fibration (" + f.name + ")";
    d.class_label = f.class_label;
    d.kappa = up.kappa;
    d.chart = chart;
    d.dim = 2;
    d.ids = up.ids;
    d.structure = StructureKind::Symplectic;
    d.ss = make_symplectic(omega);
    d.field_table = up.field_table;
    d.hamiltonian_table = up.field_table.scaled(-1);
    d.presets = up.presets;
    return d;
}

inline void plane_sim(SystemDescriptor& d, const FibrationMap& f) {
    d.sim.chart = d.chart;
    d.sim.dim = 2;
    d.sim.fields = d.fields;
    (void)f;
}

inline SystemDescriptor reduce_sphere(const SystemDescriptor& up, const FibrationMap& f) {
    SystemDescriptor d = downstairs_base(up, f, Chart::Sphere2, sphere_angle_form());
    const Chart c = Chart::Sphere2;
    // angles (x, y) with triple (cos x cos y, sin x cos y, sin y)
    d.fields = {
        field2(c, [](const auto& a) { return VecT<scalar_of<decltype(a)>>{cos(a[0]) * tan(a[1]), -sin(a[0])}; }),
        field2(c, [](const auto& a) { return VecT<scalar_of<decltype(a)>>{1.0 + 0.0 * a[0], 0.0 * a[0]}; }),
        field2(c, [](const auto& a) { return VecT<scalar_of<decltype(a)>>{sin(a[0]) * tan(a[1]), cos(a[0])}; }),
        zero_field(c, 2),
    };
    d.hamiltonians = {
        scalar2(c, [](const auto& a) { return 0.25 * cos(a[0]) * cos(a[1]); }),
        scalar2(c, [](const auto& a) { return -0.25 * sin(a[1]); }),
        scalar2(c, [](const auto& a) { return 0.25 * sin(a[0]) * cos(a[1]); }),
        constant_scalar(c, 2, -1.0),
    };
    d.sampler = box_sampler({{-3.0, 3.0}, {-1.4, 1.4}});
    // integrated on the ambient triple, where the fields have no poles
    const Chart s = Chart::Sphere2Ambient;
    auto F = [s](auto fn) { return vector_field(s, 3, fn); };
    d.sim.chart = s;
    d.sim.dim = 3;
    d.sim.fields = {
        F([](const auto& u) { return VecT<scalar_of<decltype(u)>>{0.0 * u[0], u[2], -u[1]}; }),
        F([](const auto& u) { return VecT<scalar_of<decltype(u)>>{-u[1], u[0], 0.0 * u[0]}; }),
        F([](const auto& u) { return VecT<scalar_of<decltype(u)>>{-u[2], 0.0 * u[0], u[0]}; }),
        zero_field(s, 3),
    };
    d.sim.monitors = {{"unit_norm", [](const Vec& u) { return dot(u, u) - 1.0; }, false}};
    d.sim.constraint_monitor = 0;
    return d;
}

inline SystemDescriptor reduce_disk(const SystemDescriptor& up, const FibrationMap& f) {
    SystemDescriptor d = downstairs_base(up, f, Chart::Disk, f.omega);
    const Chart c = Chart::Disk;
    d.fields = {
        field2(c, [](const auto& u) { return VecT<scalar_of<decltype(u)>>{u[1], -u[0]}; }),
        field2(c,
               [](const auto& u) {
                   return VecT<scalar_of<decltype(u)>>{0.5 * (u[0] * u[0] - u[1] * u[1] - 1.0), u[0] * u[1]};
               }),
        field2(c,
               [](const auto& u) {
                   return VecT<scalar_of<decltype(u)>>{u[0] * u[1], -0.5 * (u[0] * u[0] - u[1] * u[1] + 1.0)};
               }),
        zero_field(c, 2),
    };
    d.hamiltonians = {
        scalar2(c,
                [](const auto& u) {
                    auto r2 = u[0] * u[0] + u[1] * u[1];
                    return (1.0 + r2) / (4.0 * (1.0 - r2));
                }),
        scalar2(c, [](const auto& u) { return -u[1] / (2.0 * (1.0 - u[0] * u[0] - u[1] * u[1])); }),
        scalar2(c, [](const auto& u) { return u[0] / (2.0 * (1.0 - u[0] * u[0] - u[1] * u[1])); }),
        constant_scalar(c, 2, -1.0),
    };
    d.sampler = [](Rng& r) {
        const double rad = 0.9 * std::sqrt(r.uniform(0.0, 1.0)), th = r.uniform(-std::numbers::pi, std::numbers::pi);
        return Vec{rad * std::cos(th), rad * std::sin(th)};
    };
    plane_sim(d, f);
    return d;
}

inline SystemDescriptor reduce_flat(const SystemDescriptor& up, const FibrationMap& f) {
    SystemDescriptor d = downstairs_base(up, f, Chart::Plane, f.omega);
    const Chart c = Chart::Plane;
    // (q, p) = (y, z)
    d.fields = {
        field2(c, [](const auto& u) { return VecT<scalar_of<decltype(u)>>{1.0 + 0.0 * u[0], 0.0 * u[0]}; }),
        field2(c, [](const auto& u) { return VecT<scalar_of<decltype(u)>>{u[0], -u[1]}; }),
        zero_field(c, 2),
        field2(c, [](const auto& u) { return VecT<scalar_of<decltype(u)>>{0.0 * u[0], -1.0 + 0.0 * u[0]}; }),
        field2(c, [](const auto& u) { return VecT<scalar_of<decltype(u)>>{0.0 * u[0], -u[0]}; }),
        field2(c, [](const auto& u) { return VecT<scalar_of<decltype(u)>>{u[1], 0.0 * u[0]}; }),
    };
    d.hamiltonians = {
        scalar2(c, [](const auto& u) { return u[1]; }),
        scalar2(c, [](const auto& u) { return u[0] * u[1]; }),
        constant_scalar(c, 2, 0.5),
        scalar2(c, [](const auto& u) { return u[0]; }),
        scalar2(c, [](const auto& u) { return 0.5 * u[0] * u[0]; }),
        scalar2(c, [](const auto& u) { return 0.5 * u[1] * u[1]; }),
    };
    d.sampler = box_sampler({{-2, 2}, {-2, 2}});
    plane_sim(d, f);
    return d;
}

inline SystemDescriptor reduce_nh(const SystemDescriptor& up, const FibrationMap& f) {
    SystemDescriptor d = downstairs_base(up, f, Chart::Plane, f.omega);
    const Chart c = Chart::Plane;
    d.fields = {
        field2(c, [](const auto& u) { return VecT<scalar_of<decltype(u)>>{u[0], -u[1]}; }),
        field2(c, [](const auto& u) { return VecT<scalar_of<decltype(u)>>{0.0 * u[0], -u[0]}; }),
        field2(c, [](const auto& u) { return VecT<scalar_of<decltype(u)>>{u[1], 0.0 * u[0]}; }),
        zero_field(c, 2),
    };
    d.hamiltonians = {
        scalar2(c, [](const auto& u) { return u[0] * u[1]; }),
        scalar2(c, [](const auto& u) { return 0.5 * u[0] * u[0]; }),
        scalar2(c, [](const auto& u) { return 0.5 * u[1] * u[1]; }),
        constant_scalar(c, 2, 0.5),
    };
    d.sampler = box_sampler({{-2, 2}, {-2, 2}});
    plane_sim(d, f);
    return d;
}

inline SystemDescriptor reduce_h3(const SystemDescriptor& up, const FibrationMap& f) {
    SystemDescriptor d = downstairs_base(up, f, Chart::Plane, f.omega);
    const Chart c = Chart::Plane;
    d.fields = {
        field2(c, [](const auto& u) { return VecT<scalar_of<decltype(u)>>{u[1], -u[0]}; }),
        zero_field(c, 2),
    };
    d.hamiltonians = {
        scalar2(c, [](const auto& u) { return 0.5 * (u[0] * u[0] + u[1] * u[1]); }),
        constant_scalar(c, 2, 0.5),
    };
    d.sampler = box_sampler({{-2, 2}, {-2, 2}});
    plane_sim(d, f);
    return d;
}

}  // namespace detail

// Map from the integration chart of a projected system to the target chart of f.
inline ChartMap downstairs_to_target(const SystemDescriptor& down, const FibrationMap& f) {
    return chart_map(down.sim.chart, down.sim.dim, f.chart, f.target_dim, [](const auto& u) { return u; });
}

// Reduced LH system on the base of the Reeb fibration.
inline SystemDescriptor project_system(const SystemDescriptor& d, const FibrationMap& f) {
    if (d.structure != StructureKind::Contact || !d.cs) throw NotLiouville("system '" + d.id + "' is not a contact system");
    if (!d.kappa || !(*d.kappa == f.kappa))
        throw UnsupportedKappa("system '" + d.id + "' does not live on the space of this fibration");
    Rng rng(0x5eed);
    std::vector<Vec> pts = d.samples(rng, 32);
    for (std::size_t i = 0; i < d.size(); ++i) {
        LiouvilleCheck c = is_liouville(*d.cs, d.hamiltonians[i], pts);
        if (!c.liouville) throw NotLiouville("Hamiltonian " + d.ids[i] + " of '" + d.id + "' is not a Reeb first integral");
    }
    switch (f.target) {
        case TargetSpace::Sphere2: return detail::reduce_sphere(d, f);
        case TargetSpace::Disk: return detail::reduce_disk(d, f);
        case TargetSpace::Plane: break;
    }
    if (f.kappa == KappaTriple{-1, 1, 1}) return detail::reduce_h3(d, f);
    if (f.class_label == "P5") return detail::reduce_flat(d, f);
    return detail::reduce_nh(d, f);
}

// Upstairs integration chart → ambient point → base point.
inline ChartMap upstairs_projection(const SystemDescriptor& up, const FibrationMap& f) {
    if (!up.sim.to_ambient) throw ChartError("system '" + up.id + "' has no ambient realization");
    return compose(f.map, *up.sim.to_ambient);
}

struct CommutationResult {
    double residual = 0.0;
    std::size_t samples = 0;
};

namespace detail {

inline Trajectory flow_of(const TimeDependentField& F, const Vec& x0, double t1, const IntegratorOptions& opt) {
    return integrate(
        [&F](double t, const Vec& x) { return F.terms.empty() ? Vec(x.size(), 0.0) : F(t, x); }, x0, 0.0, t1, opt);
}

}  // namespace detail

// sup over common sample times of ‖P_up(Fl^up_t(x0)) − P_down(Fl^down_t(y0))‖∞.
inline CommutationResult commutation_check(const TimeDependentField& upstairs, const TimeDependentField& downstairs,
                                           const ChartMap& up_map, const ChartMap& down_map, const Vec& x0,
                                           const Vec& y0, double t1, double tol) {
    IntegratorOptions opt;
    opt.tol = tol;
    opt.sample_dt = 0.1;
    const Trajectory a = detail::flow_of(upstairs, x0, t1, opt);
    const Trajectory b = detail::flow_of(downstairs, y0, t1, opt);
    CommutationResult r;
    std::size_t j = 0;
    for (const auto& s : a.samples) {
        while (j < b.samples.size() && b.samples[j].t < s.t - 1e-12) ++j;
        if (j == b.samples.size()) break;
        if (std::abs(b.samples[j].t - s.t) > 1e-12) continue;
        r.residual = std::max(r.residual, max_abs_diff(up_map(s.x), down_map(b.samples[j].x)));
        ++r.samples;
    }
    return r;
}

// Same comparison for a Liouville-type system and its projection, starting downstairs at π(x0).
inline CommutationResult commutation_check(const TimeDependentField& upstairs, const TimeDependentField& downstairs,
                                           const FibrationMap& f, const ChartMap& up_to_ambient, const Vec& x0,
                                           double t1, double tol) {
    ChartMap up_map = compose(f.map, up_to_ambient);
    ChartMap down_map = chart_map(f.chart, f.target_dim, f.chart, f.target_dim, [](const auto& u) { return u; });
    return commutation_check(upstairs, downstairs, up_map, down_map, x0, up_map(x0), t1, tol);
}

// Full reduction run for a catalog entry with the given coefficients.
inline CommutationResult reduction_commutation(const SystemDescriptor& up, const CoefficientMap& coeffs, double t1,
                                               double tol) {
    FibrationMap f = fibration(*up.kappa);
    SystemDescriptor down = project_system(up, f);
    return commutation_check(instantiate_simulation(up, coeffs), instantiate_simulation(down, coeffs), f,
                             *up.sim.to_ambient, up.sim.x0, t1, tol);
}

// Scaling reduction: upstairs phase space vs reduced contact chart, compared in model coordinates.
inline CommutationResult scaling_commutation(const SystemDescriptor& up, const ChartMap& model,
                                             const CoefficientMap& coeffs, double t1, double tol) {
    const ScalingExample& s = *up.scaling;
    TimeDependentField U = detail::assemble(up, s.fields, coeffs);
    TimeDependentField D = detail::assemble(up, s.reduced_fields, coeffs);
    // start on the section so the comparison is exact at t = 0; the simulation state may
    // already live on the reduced chart
    const bool reduced_start = static_cast<int>(up.sim.x0.size()) == s.projection.target_dim;
    Vec y0 = reduced_start ? up.sim.x0 : s.projection(up.sim.x0);
    Vec x0 = s.section(y0);
    return commutation_check(U, D, compose(model, s.projection), model, x0, y0, t1, tol);
}

// Model coordinates (ρ, cos θ1, sin θ1, cos θ2, sin θ2) of the reduced oscillator chart.
inline ChartMap oscillator_model() {
    return chart_map(Chart::OscReduced, 3, Chart::OscModel, 5, [](const auto& c) {
        return VecT<scalar_of<decltype(c)>>{c[0], cos(c[1]), sin(c[1]), cos(c[2]), sin(c[2])};
    });
}

}  // namespace ckc

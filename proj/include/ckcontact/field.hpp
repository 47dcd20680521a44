#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <type_traits>

#include "ckcontact/dual.hpp"
#include "ckcontact/errors.hpp"
#include "ckcontact/linalg.hpp"

namespace ckc {

enum class Chart {
    Generic,
    Ambient,       // Weierstrass coordinates x0..x3 (also plain R^4)
    Parallel,      // geodesic parallel (x, y, z)
    Polar,         // geodesic polar (r, theta, phi)
    Plane,         // (q, p)
    Sphere2,       // (x, y) longitude/latitude on S^2
    Sphere2Ambient,// unit triple in R^3
    Disk,          // (u, v) in the open unit disk
    OscCart,       // (q1, q2, p1, p2)
    OscPolar,      // (rho1, theta1, rho2, theta2)
    OscReduced,    // (rho, theta1, theta2)
    OscModel,      // (rho, cos theta1, sin theta1, cos theta2, sin theta2)
    Thermo6,       // (q1, q2, q3, p1, p2, p3)
    ThermoAffine,  // (U, S, V, T, P)
};

inline std::string chart_name(Chart c) {
    switch (c) {
        case Chart::Generic: return "generic";
        case Chart::Ambient: return "ambient";
        case Chart::Parallel: return "parallel";
        case Chart::Polar: return "polar";
        case Chart::Plane: return "plane";
        case Chart::Sphere2: return "sphere2";
        case Chart::Sphere2Ambient: return "sphere2-ambient";
        case Chart::Disk: return "disk";
        case Chart::OscCart: return "osc-cartesian";
        case Chart::OscPolar: return "osc-polar";
        case Chart::OscReduced: return "osc-reduced";
        case Chart::OscModel: return "osc-model";
        case Chart::Thermo6: return "thermo-phase";
        case Chart::ThermoAffine: return "thermo-affine";
    }
    return "unknown";
}

template <class T>
using Id = T;

inline constexpr int kMaxLevels = 4;

// A function of chart coordinates evaluable on double and on nested duals up
// to depth three. `levels` counts the usable depths starting at double.
template <template <class> class R>
struct Leveled {
    Chart chart = Chart::Generic;
    int dim = 0;
    int levels = 0;
    std::function<R<double>(const VecT<double>&)> f0;
    std::function<R<D1>(const VecT<D1>&)> f1;
    std::function<R<D2>(const VecT<D2>&)> f2;
    std::function<R<D3>(const VecT<D3>&)> f3;

    template <class T>
    R<T> operator()(const VecT<T>& x) const {
        if constexpr (std::is_same_v<T, double>) {
            require(0);
            return f0(x);
        } else if constexpr (std::is_same_v<T, D1>) {
            require(1);
            return f1(x);
        } else if constexpr (std::is_same_v<T, D2>) {
            require(2);
            return f2(x);
        } else if constexpr (std::is_same_v<T, D3>) {
            require(3);
            return f3(x);
        } else {
            static_assert(std::is_same_v<T, double>, "derivative depth beyond three");
        }
    }

    void require(int level) const {
        if (level >= levels) throw DomainError("derivative depth " + std::to_string(level) + " unavailable");
    }
};

struct ScalarField : Leveled<Id> {};

enum class DiffMode { Automatic, FiniteDifference };

struct VectorField : Leveled<VecT> {
    DiffMode mode = DiffMode::Automatic;
};

struct OneForm : Leveled<VecT> {};
struct TwoForm : Leveled<MatT> {};
// symmetric rank-2 covariant tensor (metrics)
struct SymTensor : Leveled<MatT> {};

struct ChartMap : Leveled<VecT> {
    Chart target = Chart::Generic;
    int target_dim = 0;
};

namespace detail {

template <class Obj, class G>
void fill_all(Obj& o, G g) {
    o.f0 = [g](const VecT<double>& x) { return g(x); };
    o.f1 = [g](const VecT<D1>& x) { return g(x); };
    o.f2 = [g](const VecT<D2>& x) { return g(x); };
    o.f3 = [g](const VecT<D3>& x) { return g(x); };
    o.levels = kMaxLevels;
}

// Same derivative depth as the inputs (pointwise algebra).
template <class Obj, class G>
void fill_same(Obj& o, int levels, G g) {
    o.f0 = [g](const VecT<double>& x) { return g(x); };
    o.f1 = [g](const VecT<D1>& x) { return g(x); };
    o.f2 = [g](const VecT<D2>& x) { return g(x); };
    o.f3 = [g](const VecT<D3>& x) { return g(x); };
    o.levels = levels;
}

// One derivative of the inputs consumed.
template <class Obj, class G>
void fill_derived(Obj& o, int base_levels, G g) {
    o.f0 = [g](const VecT<double>& x) { return g(x); };
    o.f1 = [g](const VecT<D1>& x) { return g(x); };
    o.f2 = [g](const VecT<D2>& x) { return g(x); };
    o.levels = std::min(base_levels - 1, 3);
}

}  // namespace detail

template <class G>
ScalarField scalar_field(Chart c, int dim, G g) {
    ScalarField f;
    f.chart = c;
    f.dim = dim;
    detail::fill_all(f, g);
    return f;
}

template <class G>
VectorField vector_field(Chart c, int dim, G g) {
    VectorField f;
    f.chart = c;
    f.dim = dim;
    detail::fill_all(f, g);
    return f;
}

template <class G>
OneForm one_form(Chart c, int dim, G g) {
    OneForm f;
    f.chart = c;
    f.dim = dim;
    detail::fill_all(f, g);
    return f;
}

template <class G>
TwoForm two_form(Chart c, int dim, G g) {
    TwoForm f;
    f.chart = c;
    f.dim = dim;
    detail::fill_all(f, g);
    return f;
}

template <class G>
SymTensor sym_tensor(Chart c, int dim, G g) {
    SymTensor f;
    f.chart = c;
    f.dim = dim;
    detail::fill_all(f, g);
    return f;
}

template <class G>
ChartMap chart_map(Chart from, int from_dim, Chart to, int to_dim, G g) {
    ChartMap m;
    m.chart = from;
    m.dim = from_dim;
    m.target = to;
    m.target_dim = to_dim;
    detail::fill_all(m, g);
    return m;
}

inline ScalarField constant_scalar(Chart c, int dim, double v) {
    return scalar_field(c, dim, [v](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        return T(v);
    });
}

inline VectorField zero_field(Chart c, int dim) {
    return vector_field(c, dim, [dim](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        return VecT<T>(static_cast<std::size_t>(dim), T(0.0));
    });
}

// Σ c_i X_i with constant coefficients.
inline VectorField linear_combination(const std::vector<double>& c, const std::vector<VectorField>& xs) {
    VectorField out;
    out.chart = xs.front().chart;
    out.dim = xs.front().dim;
    int lv = kMaxLevels;
    for (const auto& x : xs) {
        if (x.chart != out.chart) throw ChartMismatch("linear_combination: charts differ");
        lv = std::min(lv, x.levels);
    }
    const int dim = out.dim;
    detail::fill_same(out, lv, [c, xs, dim](const auto& p) {
        using T = typename std::decay_t<decltype(p)>::value_type;
        VecT<T> r(static_cast<std::size_t>(dim), T(0.0));
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (c[i] == 0.0) continue;
            VecT<T> v = xs[i](p);
            for (int k = 0; k < dim; ++k) r[k] += c[i] * v[k];
        }
        return r;
    });
    return out;
}

inline ScalarField linear_combination(const std::vector<double>& c, const std::vector<ScalarField>& fs) {
    ScalarField out;
    out.chart = fs.front().chart;
    out.dim = fs.front().dim;
    int lv = kMaxLevels;
    for (const auto& f : fs) lv = std::min(lv, f.levels);
    detail::fill_same(out, lv, [c, fs](const auto& p) {
        using T = typename std::decay_t<decltype(p)>::value_type;
        T r(0.0);
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (c[i] != 0.0) r += c[i] * fs[i](p);
        return r;
    });
    return out;
}

// f∘φ for a scalar on the target chart of φ.
inline ScalarField compose(const ScalarField& f, const ChartMap& phi) {
    ScalarField out;
    out.chart = phi.chart;
    out.dim = phi.dim;
    detail::fill_same(out, std::min(f.levels, phi.levels), [f, phi](const auto& p) { return f(phi(p)); });
    return out;
}

inline ChartMap compose(const ChartMap& psi, const ChartMap& phi) {
    ChartMap out;
    out.chart = phi.chart;
    out.dim = phi.dim;
    out.target = psi.target;
    out.target_dim = psi.target_dim;
    detail::fill_same(out, std::min(psi.levels, phi.levels), [psi, phi](const auto& p) { return psi(phi(p)); });
    return out;
}

}  // namespace ckc

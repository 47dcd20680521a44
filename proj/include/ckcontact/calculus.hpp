#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <type_traits>
#include <utility>
#include <vector>

#include "ckcontact/dual.hpp"
#include "ckcontact/field.hpp"
#include "ckcontact/linalg.hpp"

namespace ckc {

namespace detail {

template <class T>
VecT<Dual<T>> lift(const VecT<T>& p) {
    VecT<Dual<T>> q;
    q.reserve(p.size());
    for (const T& x : p) q.emplace_back(x, T(0.0));
    return q;
}

template <class T>
T tangent(const Dual<T>& x) { return x.d; }
template <class T>
VecT<T> tangent(const VecT<Dual<T>>& v) {
    VecT<T> r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(x.d);
    return r;
}
template <class T>
MatT<T> tangent(const MatT<Dual<T>>& m) {
    MatT<T> r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].d;
    return r;
}

inline void same_chart(Chart a, Chart b, const char* what) {
    if (a != b) throw ChartMismatch(std::string(what) + ": chart " + chart_name(a) + " vs " + chart_name(b));
}

}  // namespace detail

// Derivative of F along direction v at p (seeded once).
template <template <class> class R, class T>
R<T> directional(const Leveled<R>& F, const VecT<T>& p, const VecT<T>& v) {
    VecT<Dual<T>> q;
    q.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q.emplace_back(p[i], v[i]);
    return detail::tangent(F(q));
}

template <template <class> class R, class T>
R<T> partial(const Leveled<R>& F, const VecT<T>& p, int j) {
    auto q = detail::lift(p);
    q[j].d = T(1.0);
    return detail::tangent(F(q));
}

// J(i, j) = ∂_j F^i
template <class T>
MatT<T> jacobian(const Leveled<VecT>& F, const VecT<T>& p) {
    const int n = static_cast<int>(p.size());
    MatT<T> J;
    for (int j = 0; j < n; ++j) {
        VecT<T> col = partial(F, p, j);
        if (j == 0) J = MatT<T>(static_cast<int>(col.size()), n);
        for (int i = 0; i < J.rows; ++i) J(i, j) = col[i];
    }
    return J;
}

template <class T>
VecT<T> gradient(const ScalarField& f, const VecT<T>& p) {
    const int n = static_cast<int>(p.size());
    VecT<T> g(static_cast<std::size_t>(n), T(0.0));
    for (int j = 0; j < n; ++j) g[j] = partial(f, p, j);
    return g;
}

inline double fd_step(double x) {
    return std::max(1.0, std::abs(x)) * std::cbrt(std::numeric_limits<double>::epsilon());
}

// Central finite differences, kept as an independent check on the AD path.
inline Mat jacobian_fd(const Leveled<VecT>& F, const Vec& p) {
    const int n = static_cast<int>(p.size());
    Mat J;
    for (int j = 0; j < n; ++j) {
        const double h = fd_step(p[j]);
        Vec a = p, b = p;
        a[j] += h;
        b[j] -= h;
        Vec fa = F(a), fb = F(b);
        if (j == 0) J = Mat(static_cast<int>(fa.size()), n);
        for (int i = 0; i < J.rows; ++i) J(i, j) = (fa[i] - fb[i]) / (2 * h);
    }
    return J;
}

template <class T>
MatT<T> field_jacobian(const VectorField& X, const VecT<T>& p) {
    if constexpr (std::is_same_v<T, double>) {
        if (X.mode == DiffMode::FiniteDifference) return jacobian_fd(X, p);
    }
    return jacobian(X, p);
}

// [X, Y] = (DY)X − (DX)Y
template <class T>
VecT<T> lie_bracket(const VectorField& X, const VectorField& Y, const VecT<T>& p) {
    detail::same_chart(X.chart, Y.chart, "lie_bracket");
    VecT<T> xv = X(p), yv = Y(p);
    VecT<T> a = matvec(field_jacobian(Y, p), xv);
    VecT<T> b = matvec(field_jacobian(X, p), yv);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    detail::same_chart(X.chart, Y.chart, "lie_bracket");
    VectorField out;
    out.chart = X.chart;
    out.dim = X.dim;
    detail::fill_derived(out, std::min(X.levels, Y.levels),
                         [X, Y](const auto& p) { return lie_bracket(X, Y, p); });
    return out;
}

// (dα)_ij = ∂_i α_j − ∂_j α_i
template <class T>
MatT<T> exterior_d(const OneForm& alpha, const VecT<T>& p) {
    MatT<T> J = jacobian(alpha, p);  // J(j, i) = ∂_i α_j
    const int n = J.cols;
    MatT<T> d(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) = J(j, i) - J(i, j);
    return d;
}

inline TwoForm exterior_d(const OneForm& alpha) {
    TwoForm out;
    out.chart = alpha.chart;
    out.dim = alpha.dim;
    detail::fill_derived(out, alpha.levels, [alpha](const auto& p) { return exterior_d(alpha, p); });
    return out;
}

inline OneForm exterior_d(const ScalarField& f) {
    OneForm out;
    out.chart = f.chart;
    out.dim = f.dim;
    detail::fill_derived(out, f.levels, [f](const auto& p) { return gradient(f, p); });
    return out;
}

// (dω)_ijk for a two-form, used for closedness checks.
inline double exterior_d_residual(const TwoForm& w, const Vec& p) {
    const int n = static_cast<int>(p.size());
    std::vector<Mat> dw;
    for (int i = 0; i < n; ++i) dw.push_back(partial(w, p, i));
    double m = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                m = std::max(m, std::abs(dw[i](j, k) + dw[j](k, i) + dw[k](i, j)));
    return m;
}

// (ι_X ω)_j = X^i ω_ij
template <class T>
VecT<T> interior(const VecT<T>& X, const MatT<T>& w) {
    VecT<T> r(static_cast<std::size_t>(w.cols), T(0.0));
    for (int i = 0; i < w.rows; ++i)
        for (int j = 0; j < w.cols; ++j) r[j] += X[i] * w(i, j);
    return r;
}

inline OneForm interior(const VectorField& X, const TwoForm& w) {
    detail::same_chart(X.chart, w.chart, "interior");
    OneForm out;
    out.chart = X.chart;
    out.dim = X.dim;
    detail::fill_same(out, std::min(X.levels, w.levels), [X, w](const auto& p) { return interior(X(p), w(p)); });
    return out;
}

template <class T>
T pairing(const OneForm& a, const VectorField& X, const VecT<T>& p) {
    return dot(a(p), X(p));
}

template <class T>
T two_form_apply(const MatT<T>& w, const VecT<T>& v, const VecT<T>& u) {
    T s(0.0);
    for (int i = 0; i < w.rows; ++i)
        for (int j = 0; j < w.cols; ++j) s += v[i] * w(i, j) * u[j];
    return s;
}

// Lie derivatives
template <class T>
T lie_derivative(const VectorField& X, const ScalarField& f, const VecT<T>& p) {
    detail::same_chart(X.chart, f.chart, "lie_derivative");
    return directional(f, p, X(p));
}

template <class T>
VecT<T> lie_derivative(const VectorField& X, const OneForm& a, const VecT<T>& p) {
    detail::same_chart(X.chart, a.chart, "lie_derivative");
    VecT<T> xv = X(p);
    VecT<T> r = directional(a, p, xv);
    VecT<T> av = a(p);
    MatT<T> J = field_jacobian(X, p);
    const int n = static_cast<int>(p.size());
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) r[j] += av[i] * J(i, j);
    return r;
}

template <class T>
MatT<T> lie_derivative_tensor(const VectorField& X, const Leveled<MatT>& w, const VecT<T>& p) {
    detail::same_chart(X.chart, w.chart, "lie_derivative");
    VecT<T> xv = X(p);
    MatT<T> r = directional(w, p, xv);
    MatT<T> wv = w(p);
    MatT<T> J = field_jacobian(X, p);
    const int n = static_cast<int>(p.size());
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) r(j, k) += wv(i, k) * J(i, j) + wv(j, i) * J(i, k);
    return r;
}

template <class T>
MatT<T> lie_derivative(const VectorField& X, const TwoForm& w, const VecT<T>& p) {
    return lie_derivative_tensor(X, w, p);
}

template <class T>
MatT<T> lie_derivative(const VectorField& X, const SymTensor& g, const VecT<T>& p) {
    return lie_derivative_tensor(X, g, p);
}

template <class T>
VecT<T> lie_derivative(const VectorField& X, const VectorField& Y, const VecT<T>& p) {
    return lie_bracket(X, Y, p);
}

// Dφ(p)·v
template <class T>
VecT<T> pushforward(const ChartMap& phi, const VecT<T>& p, const VecT<T>& v) {
    return directional(phi, p, v);
}

template <class T>
VecT<T> pushforward(const ChartMap& phi, const VectorField& X, const VecT<T>& p) {
    detail::same_chart(phi.chart, X.chart, "pushforward");
    return directional(phi, p, X(p));
}

inline OneForm pullback(const ChartMap& phi, const OneForm& a) {
    detail::same_chart(phi.target, a.chart, "pullback");
    OneForm out;
    out.chart = phi.chart;
    out.dim = phi.dim;
    detail::fill_derived(out, std::min(phi.levels, a.levels + 1), [phi, a](const auto& p) {
        auto J = jacobian(phi, p);
        auto av = a(phi(p));
        using T = typename std::decay_t<decltype(p)>::value_type;
        VecT<T> r(p.size(), T(0.0));
        for (int j = 0; j < J.cols; ++j)
            for (int i = 0; i < J.rows; ++i) r[j] += av[i] * J(i, j);
        return r;
    });
    return out;
}

template <class Form>
Form pullback_tensor(const ChartMap& phi, const Form& w) {
    detail::same_chart(phi.target, w.chart, "pullback");
    Form out;
    out.chart = phi.chart;
    out.dim = phi.dim;
    detail::fill_derived(out, std::min(phi.levels, w.levels + 1), [phi, w](const auto& p) {
        auto J = jacobian(phi, p);
        auto wv = w(phi(p));
        return matmul(transpose(J), matmul(wv, J));
    });
    return out;
}

inline TwoForm pullback(const ChartMap& phi, const TwoForm& w) { return pullback_tensor(phi, w); }
inline SymTensor pullback(const ChartMap& phi, const SymTensor& g) { return pullback_tensor(phi, g); }

namespace detail {

inline int permutation_sign(const std::vector<int>& s) {
    int sign = 1;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] > s[j]) sign = -sign;
    return sign;
}

}  // namespace detail

// Component of η ∧ (dη)^k on the coordinate frame, n = 2k + 1.
inline double contact_volume(const Vec& eta, const Mat& D) {
    const int n = static_cast<int>(eta.size());
    if (n == 3) return eta[0] * D(1, 2) - eta[1] * D(0, 2) + eta[2] * D(0, 1);
    std::vector<int> s(static_cast<std::size_t>(n));
    std::iota(s.begin(), s.end(), 0);
    double sum = 0.0;
    do {
        double term = eta[s[0]];
        for (int i = 1; i + 1 < n; i += 2) term *= D(s[i], s[i + 1]);
        sum += detail::permutation_sign(s) * term;
    } while (std::next_permutation(s.begin(), s.end()));
    return sum / std::pow(2.0, (n - 1) / 2);
}

// η ∧ dη ∧ dF on R^4, the contact density of η restricted to a level set of F.
inline double ambient_contact_volume(const Vec& eta, const Mat& D, const Vec& dF) {
    std::vector<int> s = {0, 1, 2, 3};
    double sum = 0.0;
    do {
        sum += detail::permutation_sign(s) * eta[s[0]] * D(s[1], s[2]) * dF[s[3]];
    } while (std::next_permutation(s.begin(), s.end()));
    return sum / 2.0;
}

// c[i][j][k] with [e_i, e_j] = Σ_k c_ijk e_k
struct StructureTable {
    int n = 0;
    std::vector<double> c;

    StructureTable() = default;
    explicit StructureTable(int size) : n(size), c(static_cast<std::size_t>(size * size * size), 0.0) {}

    double operator()(int i, int j, int k) const { return c[idx(i, j, k)]; }
    double& at(int i, int j, int k) { return c[idx(i, j, k)]; }

    // zero-based, keeps antisymmetry
    void set(int i, int j, int k, double v) {
        at(i, j, k) = v;
        at(j, i, k) = -v;
    }

    // one-based entry [e_i, e_j] += v e_k, as tables are usually written
    StructureTable& add(int i, int j, int k, double v) {
        at(i - 1, j - 1, k - 1) += v;
        at(j - 1, i - 1, k - 1) -= v;
        return *this;
    }

    StructureTable scaled(double s) const {
        StructureTable t = *this;
        for (double& x : t.c) x *= s;
        return t;
    }

    bool antisymmetric() const {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if ((*this)(i, j, k) != -(*this)(j, i, k)) return false;
        return true;
    }

   private:
    std::size_t idx(int i, int j, int k) const { return static_cast<std::size_t>((i * n + j) * n + k); }
};

// sup over (i, j, p) of ‖[X_i, X_j](p) − Σ_k c_ijk X_k(p)‖∞
inline double verify_structure(const std::vector<VectorField>& fields, const StructureTable& table,
                               const std::vector<Vec>& points) {
    if (static_cast<int>(fields.size()) != table.n) throw DomainError("verify_structure: table size mismatch");
    double worst = 0.0;
    for (const Vec& p : points) {
        std::vector<Vec> vals;
        for (const auto& f : fields) vals.push_back(f(p));
        for (int i = 0; i < table.n; ++i)
            for (int j = i + 1; j < table.n; ++j) {
                Vec b = lie_bracket(fields[i], fields[j], p);
                for (int k = 0; k < table.n; ++k) {
                    double c = table(i, j, k);
                    if (c != 0.0) b = axpy(-c, vals[k], b);
                }
                worst = std::max(worst, max_abs(b));
            }
    }
    return worst;
}

// Same check for a bracket on functions.
template <class Bracket>
double verify_function_table(const std::vector<ScalarField>& fs, const StructureTable& table,
                             const std::vector<Vec>& points, Bracket bracket) {
    double worst = 0.0;
    for (const Vec& p : points) {
        std::vector<double> vals;
        for (const auto& f : fs) vals.push_back(f(p));
        for (int i = 0; i < table.n; ++i)
            for (int j = i + 1; j < table.n; ++j) {
                double b = bracket(fs[i], fs[j], p);
                for (int k = 0; k < table.n; ++k) b -= table(i, j, k) * vals[k];
                worst = std::max(worst, std::abs(b));
            }
    }
    return worst;
}

}  // namespace ckc

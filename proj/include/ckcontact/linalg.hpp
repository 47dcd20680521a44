#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "ckcontact/dual.hpp"
#include "ckcontact/errors.hpp"

namespace ckc {

template <class T>
using VecT = std::vector<T>;
using Vec = VecT<double>;

template <class T>
struct MatT {
    int rows = 0;
    int cols = 0;
    std::vector<T> a;

    MatT() = default;
    MatT(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c), T(0.0)) {}

    T& operator()(int i, int j) { return a[static_cast<std::size_t>(i * cols + j)]; }
    const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * cols + j)]; }
};
using Mat = MatT<double>;

inline constexpr double kRankTolerance = 1e-10;

template <class T>
MatT<T> transpose(const MatT<T>& m) {
    MatT<T> t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

template <class T>
MatT<T> matmul(const MatT<T>& x, const MatT<T>& y) {
    MatT<T> r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k)
            for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    return r;
}

template <class T>
VecT<T> matvec(const MatT<T>& m, const VecT<T>& v) {
    VecT<T> r(static_cast<std::size_t>(m.rows), T(0.0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
    return r;
}

template <class T>
T dot(const VecT<T>& x, const VecT<T>& y) {
    T s(0.0);
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

inline Mat diag(const Vec& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

// Gaussian elimination with partial pivoting on the value part; works for
// dual-valued systems so the solution carries derivatives.
template <class T>
VecT<T> solve(MatT<T> A, VecT<T> b, double rank_tol = kRankTolerance) {
    const int n = A.rows;
    double scale = 0.0;
    for (const T& x : A.a) scale = std::max(scale, std::abs(value(x)));
    const double tol = rank_tol * std::max(1.0, scale);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(value(A(r, col))) > std::abs(value(A(piv, col)))) piv = r;
        if (std::abs(value(A(piv, col))) < tol) throw SingularSolve("linear system is rank-deficient");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(A(col, j), A(piv, j));
            std::swap(b[col], b[piv]);
        }
        for (int r = col + 1; r < n; ++r) {
            T f = A(r, col) / A(col, col);
            for (int j = col; j < n; ++j) A(r, j) -= f * A(col, j);
            b[r] -= f * b[col];
        }
    }
    VecT<T> x(static_cast<std::size_t>(n), T(0.0));
    for (int i = n - 1; i >= 0; --i) {
        T s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

inline double max_abs(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs(const Mat& m) { return max_abs(m.a); }

inline double max_abs_diff(const Vec& x, const Vec& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

inline double max_abs_diff(const Mat& x, const Mat& y) { return max_abs_diff(x.a, y.a); }

inline double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline Vec axpy(double a, const Vec& x, const Vec& y) {
    Vec r = y;
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += a * x[i];
    return r;
}

inline Vec scaled(double a, const Vec& x) {
    Vec r = x;
    for (double& v : r) v *= a;
    return r;
}

inline Vec sub(const Vec& x, const Vec& y) {
    Vec r = x;
    for (std::size_t i = 0; i < x.size(); ++i) r[i] -= y[i];
    return r;
}

}  // namespace ckc

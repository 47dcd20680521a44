#pragma once

#include <cmath>
#include <type_traits>

namespace ckc {

// Forward-mode dual number a + b·ε with ε² = 0. Nesting Dual<Dual<T>> gives
// higher derivatives.
template <class T>
struct Dual {
    T v{};
    T d{};

    Dual() = default;
    Dual(double x) : v(x), d(0.0) {}
    template <class U>
        requires(std::is_same_v<U, T> && !std::is_same_v<T, double>)
    Dual(const U& x) : v(x), d(0.0) {}
    Dual(const T& x, const T& dx) : v(x), d(dx) {}

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
    Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

template <class T> struct is_dual : std::false_type {};
template <class T> struct is_dual<Dual<T>> : std::true_type {};

inline double value(double x) { return x; }
template <class T>
double value(const Dual<T>& x) { return value(x.v); }

// bring the double overloads in so unqualified calls resolve for every level
using std::asin;
using std::atan;
using std::atan2;
using std::atanh;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
using std::tanh;

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}
template <class T>
Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T>
Dual<T> operator+(const Dual<T>& a) { return a; }

template <class T>
Dual<T> operator+(const Dual<T>& a, double b) { return {a.v + b, a.d}; }
template <class T>
Dual<T> operator+(double a, const Dual<T>& b) { return {a + b.v, b.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a, double b) { return {a.v - b, a.d}; }
template <class T>
Dual<T> operator-(double a, const Dual<T>& b) { return {a - b.v, -b.d}; }
template <class T>
Dual<T> operator*(const Dual<T>& a, double b) { return {a.v * b, a.d * b}; }
template <class T>
Dual<T> operator*(double a, const Dual<T>& b) { return {a * b.v, a * b.d}; }
template <class T>
Dual<T> operator/(const Dual<T>& a, double b) { return {a.v / b, a.d / b}; }
template <class T>
Dual<T> operator/(double a, const Dual<T>& b) {
    T q = a / b.v;
    return {q, -q * b.d / b.v};
}

template <class T>
Dual<T> sin(const Dual<T>& a) { return {sin(a.v), a.d * cos(a.v)}; }
template <class T>
Dual<T> cos(const Dual<T>& a) { return {cos(a.v), -(a.d * sin(a.v))}; }
template <class T>
Dual<T> tan(const Dual<T>& a) {
    T t = tan(a.v);
    return {t, a.d * (1.0 + t * t)};
}
template <class T>
Dual<T> exp(const Dual<T>& a) {
    T e = exp(a.v);
    return {e, a.d * e};
}
template <class T>
Dual<T> log(const Dual<T>& a) { return {log(a.v), a.d / a.v}; }
template <class T>
Dual<T> sqrt(const Dual<T>& a) {
    T s = sqrt(a.v);
    return {s, a.d / (2.0 * s)};
}
template <class T>
Dual<T> sinh(const Dual<T>& a) { return {sinh(a.v), a.d * cosh(a.v)}; }
template <class T>
Dual<T> cosh(const Dual<T>& a) { return {cosh(a.v), a.d * sinh(a.v)}; }
template <class T>
Dual<T> tanh(const Dual<T>& a) {
    T t = tanh(a.v);
    return {t, a.d * (1.0 - t * t)};
}
template <class T>
Dual<T> atan(const Dual<T>& a) { return {atan(a.v), a.d / (1.0 + a.v * a.v)}; }
template <class T>
Dual<T> atanh(const Dual<T>& a) { return {atanh(a.v), a.d / (1.0 - a.v * a.v)}; }
template <class T>
Dual<T> asin(const Dual<T>& a) { return {asin(a.v), a.d / sqrt(1.0 - a.v * a.v)}; }
template <class T>
Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
    T r2 = x.v * x.v + y.v * y.v;
    return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / r2};
}
template <class T>
Dual<T> pow(const Dual<T>& a, double p) {
    T base = pow(a.v, p - 1.0);
    return {base * a.v, p * base * a.d};
}

// variable seeded with unit tangent
template <class T>
Dual<T> make_variable(const T& x) { return Dual<T>(x, T(1.0)); }

template <class T>
T sq(const T& x) { return x * x; }

}  // namespace ckc

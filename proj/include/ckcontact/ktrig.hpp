#pragma once

#include <cmath>

#include "ckcontact/dual.hpp"
#include "ckcontact/errors.hpp"

namespace ckc {

inline constexpr double kPoleTolerance = 1e-13;

template <class T>
T ck_cos(double k, const T& x) {
    if (k > 0) return cos(std::sqrt(k) * x);
    if (k == 0) return T(1.0);
    return cosh(std::sqrt(-k) * x);
}

template <class T>
T ck_sin(double k, const T& x) {
    if (k > 0) {
        double s = std::sqrt(k);
        return sin(s * x) / s;
    }
    if (k == 0) return x;
    double s = std::sqrt(-k);
    return sinh(s * x) / s;
}

template <class T>
T ck_tan(double k, const T& x) {
    T c = ck_cos(k, x);
    if (std::abs(value(c)) < kPoleTolerance) throw PoleError("ck_tan: cosine vanishes");
    return ck_sin(k, x) / c;
}

// Inverse of (C_k(a), S_k(a)) ∝ (c, s) for c > 0 (or any sign when k > 0).
template <class T>
T ck_atan2(double k, const T& s, const T& c) {
    if (k > 0) {
        double r = std::sqrt(k);
        return atan2(r * s, c) / r;
    }
    if (k == 0) return s / c;
    double r = std::sqrt(-k);
    return atanh(r * s / c) / r;
}

}  // namespace ckc

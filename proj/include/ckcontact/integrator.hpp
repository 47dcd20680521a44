#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ckcontact/errors.hpp"
#include "ckcontact/field.hpp"
#include "ckcontact/linalg.hpp"
#include "ckcontact/parser.hpp"

namespace ckc {

// X(t, x) = Σ b_i(t) X_i(x)
struct TimeDependentField {
    Chart chart = Chart::Generic;
    int dim = 0;
    std::vector<std::pair<CoefficientExpr, VectorField>> terms;

    Vec operator()(double t, const Vec& x) const {
        Vec r(static_cast<std::size_t>(dim), 0.0);
        for (const auto& [b, X] : terms) {
            const double c = b(t);
            if (c == 0.0) continue;
            Vec v = X(x);
            for (int i = 0; i < dim; ++i) r[i] += c * v[i];
        }
        return r;
    }

    void add(CoefficientExpr b, VectorField X) {
        if (terms.empty()) {
            chart = X.chart;
            dim = X.dim;
        } else if (X.chart != chart) {
            throw ChartMismatch("time-dependent field: basis fields on different charts");
        }
        terms.emplace_back(std::move(b), std::move(X));
    }
};

struct Monitor {
    std::string name;
    std::function<double(const Vec&)> f;
    // drift is |f(x) − f(x0)| when true, |f(x)| otherwise
    bool relative_to_start = true;
};

struct Sample {
    double t = 0.0;
    Vec x;
    bool accepted = true;
};

struct Trajectory {
    std::vector<Sample> samples;
    std::vector<std::string> monitor_names;
    std::vector<Vec> drift;  // one row per sample
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    bool flagged = false;

    const Vec& final_state() const { return samples.back().x; }

    double max_drift(std::size_t i) const {
        double m = 0.0;
        for (const Vec& row : drift) m = std::max(m, row[i]);
        return m;
    }
};

struct IntegratorOptions {
    double tol = 1e-10;
    double sample_dt = 0.05;
    double min_step = 1e-12;
    std::vector<Monitor> monitors;
    // index into monitors whose drift beyond flag_threshold flags the run
    int constraint_monitor = -1;
    double flag_threshold = 1e-4;
};

using OdeRhs = std::function<Vec(double, const Vec&)>;

namespace detail {

struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    // fifth minus fourth order weights
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
};

inline Vec combo(const Vec& x, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec r = x;
    for (const auto& [c, k] : terms) {
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += h * c * (*k)[i];
    }
    return r;
}

inline bool finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace detail

// Adaptive Dormand–Prince 5(4). Samples are recorded on the grid t0 + k·sample_dt
// (plus t1); steps never cross a grid point.
inline Trajectory integrate(const OdeRhs& f, const Vec& x0, double t0, double t1, const IntegratorOptions& opt = {}) {
    if (!(t1 > t0)) throw DomainError("integrate: t1 must exceed t0");
    if (!(opt.tol > 0)) throw DomainError("integrate: tolerance must be positive");
    using P = detail::Dopri5;
    Trajectory tr;
    for (const auto& m : opt.monitors) tr.monitor_names.push_back(m.name);
    Vec ref;
    for (const auto& m : opt.monitors) ref.push_back(m.f(x0));

    auto record = [&](double t, const Vec& x) {
        tr.samples.push_back({t, x, true});
        Vec row;
        for (std::size_t i = 0; i < opt.monitors.size(); ++i) {
            double v = opt.monitors[i].f(x);
            row.push_back(opt.monitors[i].relative_to_start ? std::abs(v - ref[i]) : std::abs(v));
        }
        if (opt.constraint_monitor >= 0 && row[opt.constraint_monitor] > opt.flag_threshold) tr.flagged = true;
        tr.drift.push_back(std::move(row));
    };

    const double span = t1 - t0;
    const long nseg = std::max(1L, static_cast<long>(std::ceil(span / opt.sample_dt - 1e-9)));
    double t = t0;
    Vec x = x0;
    record(t, x);
    Vec k1 = f(t, x);
    double h = std::min(opt.sample_dt, 1e-2 * span + 1e-3);

    for (long seg = 1; seg <= nseg; ++seg) {
        const double target = (seg == nseg) ? t1 : t0 + seg * opt.sample_dt;
        while (t < target) {
            if (target - t <= 1e-13 * std::max(1.0, std::abs(target))) {
                t = target;
                break;
            }
            bool last = false;
            const double h_free = h;
            if (t + h >= target) {
                h = target - t;
                last = true;
            }
            if (h < opt.min_step) throw StepFailure("integrate: step size underflow at t = " + std::to_string(t));
            Vec k2 = f(t + P::c2 * h, detail::combo(x, h, {{P::a21, &k1}}));
            Vec k3 = f(t + P::c3 * h, detail::combo(x, h, {{P::a31, &k1}, {P::a32, &k2}}));
            Vec k4 = f(t + P::c4 * h, detail::combo(x, h, {{P::a41, &k1}, {P::a42, &k2}, {P::a43, &k3}}));
            Vec k5 = f(t + P::c5 * h,
                       detail::combo(x, h, {{P::a51, &k1}, {P::a52, &k2}, {P::a53, &k3}, {P::a54, &k4}}));
            Vec k6 = f(t + h, detail::combo(x, h, {{P::a61, &k1}, {P::a62, &k2}, {P::a63, &k3}, {P::a64, &k4},
                                                   {P::a65, &k5}}));
            Vec xn = detail::combo(x, h, {{P::b1, &k1}, {P::b3, &k3}, {P::b4, &k4}, {P::b5, &k5}, {P::b6, &k6}});
            Vec k7 = f(t + h, xn);
            double err = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double e = h * (P::e1 * k1[i] + P::e3 * k3[i] + P::e4 * k4[i] + P::e5 * k5[i] + P::e6 * k6[i] +
                                P::e7 * k7[i]);
                double sc = opt.tol + opt.tol * std::max(std::abs(x[i]), std::abs(xn[i]));
                err = std::max(err, std::abs(e) / sc);
            }
            if (!detail::finite(xn) || !std::isfinite(err)) err = 1e10;
            double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (err <= 1.0) {
                t = last ? target : t + h;
                x = std::move(xn);
                k1 = std::move(k7);
                ++tr.accepted_steps;
                h = std::min(last ? std::max(h * factor, h_free) : h * factor, opt.sample_dt);
            } else {
                ++tr.rejected_steps;
                h *= std::min(factor, 0.9);
                if (h < opt.min_step) throw StepFailure("integrate: step size underflow at t = " + std::to_string(t));
            }
        }
        record(t, x);
    }
    return tr;
}

inline Trajectory integrate(const TimeDependentField& F, const Vec& x0, double t0, double t1,
                            const IntegratorOptions& opt = {}) {
    return integrate([&F](double t, const Vec& x) { return F(t, x); }, x0, t0, t1, opt);
}

// Runs the flow from t1 back to t0 by integrating s ↦ −F(t1 − s, x).
inline Trajectory integrate_backward(const OdeRhs& f, const Vec& x1, double t0, double t1,
                                     const IntegratorOptions& opt = {}) {
    auto g = [&f, t1](double s, const Vec& x) { return scaled(-1.0, f(t1 - s, x)); };
    Trajectory tr = integrate(g, x1, 0.0, t1 - t0, opt);
    for (auto& s : tr.samples) s.t = t1 - s.t;
    return tr;
}

}  // namespace ckc

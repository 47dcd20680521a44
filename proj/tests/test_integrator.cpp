#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

#include "ckcontact/integrator.hpp"
#include "ckcontact/rng.hpp"
#include "ckcontact/systems.hpp"

using namespace ckc;

TEST(Integrator, OscillatorClosedForm) {
    SystemDescriptor d = make_osc2d();
    TimeDependentField F = instantiate(d, parse_coefficients({{"b1", "1"}, {"b3", "1"}}));
    Trajectory tr = integrate(F, {1, 0, 0, 0}, 0.0, 10.0);
    double worst = 0;
    for (const auto& s : tr.samples) {
        worst = std::max(worst, std::abs(s.x[0] - std::cos(s.t)));
        worst = std::max(worst, std::abs(s.x[2] + std::sin(s.t)));
    }
    EXPECT_LT(worst, 1e-8);
    EXPECT_NEAR(tr.samples.back().t, 10.0, 1e-12);
}

TEST(Integrator, ZeroFieldIsConstant) {
    Trajectory tr = integrate([](double, const Vec& x) { return Vec(x.size(), 0.0); }, {1, 2, 3}, 0.0, 1.0);
    for (const auto& s : tr.samples) EXPECT_EQ(s.x, (Vec{1, 2, 3}));
}

TEST(Integrator, Sp4FlowMatchesMatrixExponential) {
    Rng rng(3);
    std::map<std::string, std::string> src;
    Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
    for (int i = 1; i <= 10; ++i) {
        const double b = rng.uniform(-1, 1);
        src["b" + std::to_string(i)] = std::to_string(b);
        // the fields are linear, so their matrices are their Jacobians
        const Mat J = jacobian(sp4_field(i), Vec{0, 0, 0, 0});
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) A(r, c) += std::stod(src["b" + std::to_string(i)]) * J(r, c);
    }
    SystemDescriptor d = make_sp4_r4();
    const Vec x0{0.4, -0.2, 0.9, 0.1};
    Trajectory tr = integrate(instantiate(d, parse_coefficients(src)), x0, 0.0, 1.0);
    Eigen::Vector4d e = A.exp() * Eigen::Vector4d(x0[0], x0[1], x0[2], x0[3]);
    const Vec x1 = tr.final_state();
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(x1[i], e(i), 1e-8);
}

TEST(Integrator, BackwardUndoesForward) {
    auto f = [](double t, const Vec& x) { return Vec{x[1], -std::sin(x[0]) + 0.1 * std::cos(t)}; };
    IntegratorOptions opt;
    const Vec x0{0.5, 0.1};
    Trajectory fw = integrate(f, x0, 0.0, 3.0, opt);
    Trajectory bw = integrate_backward(f, fw.final_state(), 0.0, 3.0, opt);
    EXPECT_LT(max_abs_diff(bw.final_state(), x0), 1e-8);
}

TEST(Integrator, MonitorsAndFlagging) {
    IntegratorOptions opt;
    opt.monitors = {{"radius", [](const Vec& x) { return x[0] * x[0] + x[1] * x[1]; }, true},
                    {"drifting", [](const Vec& x) { return x[0]; }, false}};
    opt.constraint_monitor = 1;
    Trajectory tr = integrate([](double, const Vec& x) { return Vec{-x[1], x[0]}; }, {1, 0}, 0.0, 6.0, opt);
    EXPECT_LT(tr.max_drift(0), 1e-8);
    EXPECT_TRUE(tr.flagged);
    ASSERT_EQ(tr.monitor_names.size(), 2u);
    EXPECT_EQ(tr.monitor_names[0], "radius");
}

TEST(Integrator, SampleGridIsRegular) {
    IntegratorOptions opt;
    opt.sample_dt = 0.25;
    Trajectory tr = integrate([](double, const Vec& x) { return x; }, {1.0}, 0.0, 1.0, opt);
    ASSERT_EQ(tr.samples.size(), 5u);
    EXPECT_NEAR(tr.final_state()[0], std::exp(1.0), 1e-9);
}

TEST(Integrator, BlowUpReportsStepFailure) {
    EXPECT_THROW(integrate([](double, const Vec& x) { return Vec{x[0] * x[0]}; }, {1.0}, 0.0, 2.0), StepFailure);
}

TEST(Integrator, RejectsEmptyInterval) {
    EXPECT_THROW(integrate([](double, const Vec& x) { return x; }, {1.0}, 1.0, 1.0), DomainError);
}

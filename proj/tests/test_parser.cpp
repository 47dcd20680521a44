#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ckcontact/errors.hpp"
#include "ckcontact/parser.hpp"

using namespace ckc;

TEST(Parser, Constants) {
    EXPECT_EQ(parse_coeff("0")(3.0), 0.0);
    EXPECT_TRUE(parse_coeff("0").is_zero_constant());
    EXPECT_EQ(parse_coeff("2.5e-1")(0.0), 0.25);
}

TEST(Parser, Periodic) {
    const auto e = parse_coeff("1 + 0.5*sin(t)");
    EXPECT_DOUBLE_EQ(e(0.0), 1.0);
    EXPECT_DOUBLE_EQ(e(std::numbers::pi / 2), 1.5);
}

TEST(Parser, PrecedenceAndAssociativity) {
    EXPECT_DOUBLE_EQ(parse_coeff("1 - 2 - 3")(0), -4.0);
    EXPECT_DOUBLE_EQ(parse_coeff("8 / 4 / 2")(0), 1.0);
    EXPECT_DOUBLE_EQ(parse_coeff("2 + 3 * t")(2.0), 8.0);
    EXPECT_DOUBLE_EQ(parse_coeff("-t*t")(3.0), -9.0);
    EXPECT_DOUBLE_EQ(parse_coeff("(1 + t) * (1 - t)")(0.5), 0.75);
}

TEST(Parser, Functions) {
    EXPECT_NEAR(parse_coeff("exp(t) * cos(2*t) + tanh(t)")(0.3),
                std::exp(0.3) * std::cos(0.6) + std::tanh(0.3), 1e-15);
    EXPECT_NEAR(parse_coeff("pow(t, 3)")(1.5), 3.375, 1e-15);
}

TEST(Parser, UnclosedParenthesis) {
    try {
        parse_coeff("2*cos(3*t");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset, 9u);
        ASSERT_FALSE(e.expected.empty());
        EXPECT_EQ(e.expected.front(), "')'");
    }
}

TEST(Parser, RejectsGarbage) {
    EXPECT_THROW(parse_coeff(""), ParseError);
    EXPECT_THROW(parse_coeff("1 +"), ParseError);
    EXPECT_THROW(parse_coeff("foo(t)"), ParseError);
    EXPECT_THROW(parse_coeff("t t"), ParseError);
    EXPECT_THROW(parse_coeff("x"), ParseError);
}

TEST(Parser, KeepsSource) { EXPECT_EQ(parse_coeff("0.3*sin(t)").source(), "0.3*sin(t)"); }

TEST(Parser, DivisionByZeroAtEvaluation) { EXPECT_THROW(parse_coeff("1/t")(0.0), DomainError); }

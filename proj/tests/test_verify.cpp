#include <gtest/gtest.h>

#include "ckcontact/verify.hpp"

using namespace ckc;

TEST(Verify, KtrigSuitePasses) {
    const Report r = run_verify("ktrig", 42);
    EXPECT_TRUE(r.pass());
    EXPECT_GE(r.checks.size(), 4u);
}

TEST(Verify, RecordsAreSortedByName) {
    const Report r = run_verify("contact", 42);
    for (std::size_t i = 1; i < r.checks.size(); ++i) EXPECT_LT(r.checks[i - 1].name, r.checks[i].name);
}

TEST(Verify, UnknownSuiteThrows) { EXPECT_THROW(run_verify("bogus", 1), DomainError); }

TEST(Verify, SuiteSeedsAreIndependent) {
    EXPECT_NE(suite_seed(42, "ktrig"), suite_seed(42, "geometry"));
    EXPECT_EQ(suite_seed(42, "ktrig"), suite_seed(42, "ktrig"));
    const Report a = run_verify("ktrig", 42), b = run_verify("ktrig", 42);
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) EXPECT_EQ(a.checks[i].residual, b.checks[i].residual);
}

TEST(Verify, TableValidationListsKnownDiscrepancies) {
    const Report r = run_verify("systems", 42);
    int discrepancies = 0;
    for (const auto& t : r.table_validation) discrepancies += t.discrepancy;
    EXPECT_EQ(discrepancies, 4);
    EXPECT_TRUE(r.pass());
}

TEST(Verify, RecorderBounds) {
    Recorder rec;
    rec.upper("a", 0.5, 1.0, 1);
    rec.upper("b", std::numeric_limits<double>::quiet_NaN(), 1.0, 1);
    rec.lower("c", 2.0, 1.0, 1);
    rec.expect_throw<DomainError>("d", [] { throw DomainError("x"); });
    rec.expect_throw<DomainError>("e", [] {});
    EXPECT_TRUE(rec.checks_[0].pass);
    EXPECT_FALSE(rec.checks_[1].pass);
    EXPECT_TRUE(rec.checks_[2].pass);
    EXPECT_TRUE(rec.checks_[3].pass);
    EXPECT_FALSE(rec.checks_[4].pass);
}

#include <vector>

#include <gtest/gtest.h>

#include "qalg/errors.hpp"
#include "qalg/wform.hpp"
#include "support.hpp"

using namespace qalg;
using qtest::q;

namespace {

std::vector<ParameterSet> w_families() {
    return {qtest::classical(), qtest::theta2(), qtest::sklyanin_C_concrete(), qtest::sklyanin_k_concrete(), qtest::cdv_real(),
            make_family("theta"), make_family("sklyanin_C")};
}

}  // namespace

TEST(WForm, Epsilon) {
    EXPECT_EQ(epsilon({0, 1, 2, 3}), 1);
    EXPECT_EQ(epsilon({1, 0, 2, 3}), -1);
    EXPECT_EQ(epsilon({0, 1, 3, 2}), -1);
    EXPECT_EQ(epsilon({1, 2, 3, 0}), -1);
    EXPECT_EQ(epsilon({0, 0, 2, 3}), 0);
}

TEST(WForm, TablesAndPreRegularity) {
    for (const auto& ps : w_families()) {
        WTensor w = build_w(ps);
        EXPECT_TRUE(w_tables_check(w, ps).passed()) << ps.family;
        IdentityReport r = pre_regularity(w);
        EXPECT_TRUE(r.passed()) << ps.family << " " << r.to_json().dump();
        EXPECT_EQ(r.data["rank"], 4u);
    }
}

TEST(WForm, RelationsMatch) {
    for (const auto& ps : w_families()) {
        IdentityReport r = relations_match(build_w(ps), ps);
        EXPECT_TRUE(r.passed()) << ps.family;
        EXPECT_EQ(r.data["rank_w"], 6u);
        EXPECT_EQ(r.data["rank_a"], 6u);
    }
}

TEST(WForm, ClassicalIsTheVolumeTensor) {
    WTensor w = build_w(qtest::classical());
    EXPECT_EQ(w.W({0, 1, 2, 3}), Scalar(1));
    EXPECT_EQ(w.W({0, 1, 3, 2}), Scalar(-1));
    EXPECT_EQ(w.W({0, 1, 0, 1}), Scalar(0));
}

TEST(WForm, TamperedPBreaksCyclicity) {
    ParameterSet ps = qtest::theta2();
    WTensor w = build_w(ps);
    w.P[0][1] = ps.p[2][3];
    IdentityReport r = pre_regularity(w);
    EXPECT_FALSE(r.passed());
}

TEST(WForm, VolumeCoefficients) {
    auto k_of = [](const ParameterSet& ps) { return volume_expand(build_w(ps), FormSystem(ps)).k; };
    EXPECT_EQ(k_of(qtest::classical()), Scalar(-24));
    EXPECT_EQ(k_of(qtest::theta2()), q("-528/25"));
    ParameterSet c = make_family("sklyanin_C");
    Scalar k = k_of(c);
    EXPECT_TRUE((k + Scalar(2) * (Scalar(8) + Scalar(4) * c.l[0][1] * c.l[0][1])).is_zero()) << k;
    EXPECT_EQ(k, volume_closed_form(c));
}

TEST(WForm, VolumeByEliminationAgreesInEveryOrder) {
    for (const auto& ps : {qtest::theta2(), qtest::sklyanin_C_concrete(), qtest::cdv_real()}) {
        WTensor w = build_w(ps);
        Scalar k = volume_expand(w, FormSystem(ps)).k;
        for (auto order : {RowOrder::simplest_first, RowOrder::as_given, RowOrder::reversed, RowOrder::shuffled})
            EXPECT_EQ(volume_by_elimination(w, ps, order, 9), k) << ps.family;
    }
}

TEST(WForm, VolumeReport) {
    for (const auto& ps : {qtest::theta2(), qtest::classical()}) {
        IdentityReport r = volume_report(build_w(ps), FormSystem(ps));
        EXPECT_TRUE(r.passed()) << r.to_json().dump();
        EXPECT_EQ(r.data["k"], r.data["closed_form"]);
    }
}

TEST(WForm, NeedsNonzeroL) {
    EXPECT_THROW(build_w(make_family("zero_l", {{"p10", q("1")}, {"p20", q("1")}, {"p30", q("1")}})), AssumptionViolated);
}

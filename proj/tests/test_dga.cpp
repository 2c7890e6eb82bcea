#include <vector>

#include <gtest/gtest.h>

#include "qalg/dga.hpp"
#include "qalg/errors.hpp"
#include "support.hpp"

using namespace qalg;
using qtest::q;

namespace {

std::vector<ParameterSet> form_families() {
    return {qtest::classical(), qtest::theta2(), qtest::sklyanin_C_concrete(), qtest::sklyanin_k_concrete(), qtest::cdv_real()};
}

ParameterSet minus_branch(const Scalar& p01) {
    ParameterSet ps = qtest::classical();
    ps.l[0][2] = ps.l[2][0] = ps.l[1][3] = ps.l[3][1] = q("-1");
    ps.p[0][1] = p01;
    ps.p[1][0] = -p01;
    return ps;
}

}  // namespace

TEST(Dga, ThreeFormsHaveBasisTheta) {
    for (const auto& ps : form_families()) {
        FormSystem fs(ps);
        IdentityReport r = three_form_audit(fs);
        EXPECT_TRUE(r.passed()) << ps.family << " " << r.to_json().dump();
        EXPECT_EQ(r.data["dimension"], 4u);
        EXPECT_EQ(r.data["normal_words"], 4u);
    }
}

TEST(Dga, FourFormsAreOneDimensional) {
    for (const auto& ps : form_families()) {
        FormSystem fs(ps);
        IdentityReport r = four_form_audit(fs);
        EXPECT_TRUE(r.passed()) << ps.family << " " << r.to_json().dump();
        EXPECT_EQ(r.data["dimension4"], 1u);
        EXPECT_EQ(r.data["dimension5"], 0u);
        EXPECT_EQ(r.data["eta"].size(), 36u);
    }
}

TEST(Dga, EtaLiterals) {
    ParameterSet ps = qtest::theta2();
    IdentityReport r = four_form_audit(FormSystem(ps));
    const auto& eta = r.data["eta"];
    EXPECT_EQ(eta["0132"], "1");
    EXPECT_EQ(q(eta["0123"].get<std::string>()), -ps.l[0][1]);
    EXPECT_EQ(q(eta["0101"].get<std::string>()), -ps.p[0][1]);
    EXPECT_EQ(q(eta["0231"].get<std::string>()), -Scalar(1));
}

TEST(Dga, SymbolicFourForms) {
    IdentityReport r = four_form_audit(FormSystem(make_family("theta")));
    EXPECT_TRUE(r.passed()) << r.to_json().dump();
}

TEST(Dga, ThreeFormAntisymmetry) {
    for (const auto& ps : form_families()) EXPECT_TRUE(antisymmetry_audit(FormSystem(ps)).passed()) << ps.family;
}

TEST(Dga, OneFormRelationsAreConsistent) {
    for (const auto& ps : form_families()) EXPECT_TRUE(one_form_consistency(FormSystem(ps)).passed()) << ps.family;
}

TEST(Dga, DifferentialSquaresToZero) {
    for (const auto& ps : {qtest::theta2(), qtest::sklyanin_C_concrete()}) {
        FormSystem fs(ps);
        IdentityReport r = d_squared_audit(fs);
        EXPECT_TRUE(r.passed()) << ps.family;
        EXPECT_GT(r.data["monomials"].get<int>(), 0);
        EXPECT_TRUE(d_relations_audit(fs).passed()) << ps.family;
    }
}

TEST(Dga, LeibnizRuleOnRandomWords) {
    FormSystem fs(qtest::theta2());
    for (unsigned seed : {0u, 1u, 2u, 17u}) EXPECT_TRUE(leibniz_samples(fs, seed).passed()) << seed;
}

TEST(Dga, WorkedDifferential) {
    FormSystem fs(qtest::theta2());
    auto A = fs.alphabet();
    NCPoly d = differential(parse_ncpoly(A, "x0 x1"), fs);
    EXPECT_EQ(d, form_reduce(parse_ncpoly(A, "dx0 x1 + x0 dx1"), fs));
    EXPECT_TRUE(differential(parse_ncpoly(A, "x1 x0 - 4/5 x0 x1 - 3/5 x2 x3"), fs).is_zero());
}

TEST(Dga, MixedDegreeIsReportedOnly) {
    IdentityReport r = mixed_degree_report(FormSystem(qtest::theta2()));
    EXPECT_EQ(r.status, Status::reported);
}

TEST(Dga, SphereCalculus) {
    for (const auto& ps : {qtest::theta2(), qtest::sklyanin_C_concrete(), make_family("theta")})
        EXPECT_TRUE(sphere_calculus_report(FormSystem(ps)).passed()) << ps.family;
    EXPECT_THROW(sphere_calculus(FormSystem(qtest::sklyanin_k_concrete())), CentralityNotSatisfied);
}

TEST(Dga, MinusBranchAcceptedOnlyWithVanishingP) {
    ParameterSet ok = minus_branch(Scalar(0));
    ASSERT_TRUE(validate(ok).passed());
    FormSystem fs(ok);
    EXPECT_EQ(fs.assumptions().branch, Branch::minus);
    EXPECT_TRUE(three_form_audit(fs).passed());
    EXPECT_THROW(four_form_audit(fs), AssumptionViolated);
    EXPECT_THROW(FormSystem(minus_branch(q("1/2"))), AssumptionViolated);
}

TEST(Dga, ConstructorRequiresNonzeroL) {
    ParameterSet z = make_family("zero_l", {{"p10", q("1")}, {"p20", q("1")}, {"p30", q("1")}});
    EXPECT_THROW(FormSystem{z}, AssumptionViolated);
    ParameterSet neither = qtest::theta2();
    neither.l[0][2] = neither.l[2][0] = neither.l[1][3] = neither.l[3][1] = q("1/7");
    EXPECT_THROW(FormSystem{neither}, AssumptionViolated);
}

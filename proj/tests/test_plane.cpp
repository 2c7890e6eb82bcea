#include <vector>

#include <gtest/gtest.h>

#include "qalg/errors.hpp"
#include "qalg/plane.hpp"
#include "support.hpp"

using namespace qalg;
using qtest::q;

namespace {

std::vector<ParameterSet> all_families() {
    return {make_family("classical"), make_family("sklyanin_k"), make_family("sklyanin_C"), make_family("cdv"),
            make_family("theta"),     make_family("zero_l", {{"p10", q("1")}, {"p20", q("1")}, {"p30", q("1")}})};
}

}  // namespace

TEST(Plane, RelationsAreInvolutive) {
    for (const auto& ps : all_families()) EXPECT_TRUE(plane_involutivity(ps).passed()) << ps.family;
}

TEST(Plane, RMatrixSquaresToIdentity) {
    for (const auto& ps : all_families()) EXPECT_TRUE(r_squared_check(ps).passed()) << ps.family;
}

TEST(Plane, YangBaxterDefect) {
    IdentityReport c = ybe_report(qtest::classical());
    EXPECT_EQ(c.status, Status::reported);
    EXPECT_EQ(c.data["quantum_zero"], true);
    EXPECT_TRUE(c.residuals.empty());
    IdentityReport t = ybe_report(qtest::theta2());
    EXPECT_EQ(t.status, Status::reported);
    EXPECT_EQ(t.data["quantum_zero"], false);
    EXPECT_GT(t.data["quantum_nonzero_entries"].get<int>(), 0);
    YbeDefect d = ybe_defect(qtest::theta2());
    EXPECT_FALSE(d.quantum_zero);
}

TEST(Plane, RelationsReduceToZero) {
    ParameterSet ps = qtest::theta2();
    RewriteSystem rs = plane_system(ps);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) EXPECT_TRUE(reduce(NCPoly(rs.alphabet(), plane_relation(ps, a, b)), rs).is_zero());
}

TEST(Plane, WorkedReduction) {
    RewriteSystem rs = plane_system(qtest::theta2());
    NCPoly f = reduce(parse_ncpoly(rs.alphabet(), "x1 x0"), rs);
    EXPECT_EQ(f, parse_ncpoly(rs.alphabet(), "4/5 x0 x1 + 3/5 x2 x3"));
}

TEST(Plane, LemmaOnQuadraticWords) {
    for (const auto& ps : {qtest::classical(), qtest::theta2(), qtest::sklyanin_C_concrete(), make_family("theta")})
        EXPECT_TRUE(lemma_xx_check(plane_system(ps)).passed()) << ps.family;
}

TEST(Plane, SumOfSquaresIsCentral) {
    for (const char* fam : {"theta", "cdv", "sklyanin_C"})
        EXPECT_TRUE(central_element_check(plane_system(make_family(fam)), unit_coefficients()).passed()) << fam;
}

TEST(Plane, SecondCentralElement) {
    ParameterSet ps = make_family("sklyanin_C");
    EXPECT_TRUE(central_element_check(plane_system(ps), second_central_coefficients(ps)).passed());
}

TEST(Plane, SklyaninKSumOfSquaresIsNotCentral) {
    IdentityReport r = central_element_check(plane_system(qtest::sklyanin_k_concrete()), unit_coefficients());
    EXPECT_FALSE(r.passed());
}

TEST(Plane, NullspaceVectorsAreCentral) {
    for (const auto& ps : {qtest::sklyanin_C_concrete(), qtest::sklyanin_k_concrete(), qtest::theta2(), qtest::cdv_real()}) {
        RewriteSystem rs = plane_system(ps);
        for (const auto& c : central_coefficients(ps)) EXPECT_TRUE(central_element_check(rs, c).passed()) << ps.family;
    }
}

TEST(Plane, Sphere) {
    SphereAlgebra s(plane_system(qtest::theta2()));
    auto A = alphabets::plane();
    EXPECT_EQ(sphere_reduce(parse_ncpoly(A, "x0 x0 + x1 x1 + x2 x2 + x3 x3"), s), NCPoly::constant(A, Scalar(1)));
    EXPECT_EQ(sphere_reduce(parse_ncpoly(A, "x3 x3"), s), parse_ncpoly(A, "1 - x0 x0 - x1 x1 - x2 x2"));
    EXPECT_THROW(SphereAlgebra(plane_system(qtest::sklyanin_k_concrete())), CentralityNotSatisfied);
}

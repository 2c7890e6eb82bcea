#include <array>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qalg/errors.hpp"
#include "qalg/linalg.hpp"
#include "qalg/params.hpp"
#include "support.hpp"

using namespace qalg;
using qtest::q;

namespace {

std::vector<ParameterSet> symbolic_families() {
    return {make_family("classical"), make_family("sklyanin_k"), make_family("sklyanin_C"),
            make_family("cdv"),       make_family("theta"),      make_family("zero_l", {{"p10", q("1")}, {"p20", q("1")}, {"p30", q("1")}})};
}

bool in_span(const std::vector<std::array<Scalar, 4>>& basis, const std::array<Scalar, 4>& v) {
    Echelon e;
    for (const auto& b : basis) e.insert(to_sparse({b[0], b[1], b[2], b[3]}));
    return e.contains(to_sparse({v[0], v[1], v[2], v[3]}));
}

}  // namespace

TEST(Params, EveryFamilySatisfiesTheDefiningConditions) {
    for (auto ps : symbolic_families()) {
        IdentityReport r = validate(ps);
        EXPECT_TRUE(r.passed()) << ps.family << " " << r.to_json().dump();
        EXPECT_TRUE(ps.flags.valid_def21);
    }
}

TEST(Params, SymbolicFamiliesDeclareTheirVariables) {
    EXPECT_EQ(make_family("sklyanin_k").variables, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(make_family("sklyanin_C").variables, (std::vector<std::string>{"alpha", "beta"}));
    EXPECT_EQ(make_family("cdv").variables, (std::vector<std::string>{"t0", "t1", "t2", "t3"}));
    EXPECT_EQ(make_family("theta").variables, (std::vector<std::string>{"lam"}));
    EXPECT_TRUE(make_family("classical").variables.empty());
}

TEST(Params, TamperedAntisymmetryFailsAtB) {
    ParameterSet ps = qtest::theta2();
    ps.p[0][1] = -ps.p[0][1] + q("1");
    IdentityReport r = validate(ps);
    ASSERT_FALSE(r.passed());
    bool at_b = false;
    for (const auto& res : r.residuals) at_b |= res.location.rfind("(b)", 0) == 0;
    EXPECT_TRUE(at_b);
    EXPECT_FALSE(ps.flags.valid_def21);
}

TEST(Params, TamperedQuadraticConditionFailsAtC) {
    ParameterSet ps = qtest::theta2();
    ps.l[0][1] = ps.l[1][0] = ps.l[2][3] = ps.l[3][2] = q("1/2");
    IdentityReport r = validate(ps);
    ASSERT_FALSE(r.passed());
    bool at_c = false;
    for (const auto& res : r.residuals) at_c |= res.location.rfind("(c)", 0) == 0;
    EXPECT_TRUE(at_c);
}

TEST(Params, PrimePairs) {
    EXPECT_EQ(prime_pair({0, 1}), (IndexPair{2, 3}));
    EXPECT_EQ(prime_pair({1, 0}), (IndexPair{3, 2}));
    EXPECT_EQ(prime_pair({3, 1}), (IndexPair{2, 0}));
    EXPECT_EQ(prime_pair({2, 2}), (IndexPair{2, 2}));
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) EXPECT_EQ(prime_pair(prime_pair({m, n})), (IndexPair{m, n}));
}

TEST(Params, IndexIdentitiesHoldForEveryFamily) {
    for (const auto& ps : symbolic_families()) EXPECT_TRUE(index_identities(ps).passed()) << ps.family;
}

TEST(Params, Branches) {
    EXPECT_EQ(make_family("classical").flags.hyp_l02, Branch::plus);
    EXPECT_EQ(make_family("theta").flags.hyp_l02, Branch::plus);
    EXPECT_EQ(make_family("sklyanin_C").flags.hyp_l02, Branch::plus);
    EXPECT_EQ(make_family("cdv").flags.hyp_l02, Branch::plus);
    ParameterSet minus = make_family("classical");
    minus.l[0][2] = minus.l[2][0] = minus.l[1][3] = minus.l[3][1] = q("-1");
    EXPECT_EQ(classify_branch(minus), Branch::minus);
    EXPECT_TRUE(validate(minus).passed());
    EXPECT_TRUE(branch_check(minus).passed());
    minus.p[0][1] = q("1/2");
    EXPECT_FALSE(branch_check(minus).passed());
}

TEST(Params, SumOfSquaresCentrality) {
    for (const char* fam : {"theta", "cdv", "sklyanin_C", "classical"})
        EXPECT_TRUE(centrality_condition(make_family(fam), unit_coefficients()).passed()) << fam;
    EXPECT_FALSE(centrality_condition(make_family("sklyanin_k"), unit_coefficients()).passed());
}

TEST(Params, NullspaceReproducesBothCentralVectors) {
    ParameterSet ps = make_family("sklyanin_C");
    auto cs = central_coefficients(ps);
    EXPECT_EQ(cs.size(), 2u);
    EXPECT_TRUE(in_span(cs, unit_coefficients()));
    EXPECT_TRUE(in_span(cs, second_central_coefficients(ps)));
    EXPECT_TRUE(centrality_condition(ps, second_central_coefficients(ps)).passed());
}

TEST(Params, StarCompatibility) {
    ParameterSet c = make_family("sklyanin_C");
    EXPECT_TRUE(star_compatibility(c).passed());
    ParameterSet cc = qtest::sklyanin_C_concrete();
    EXPECT_TRUE(star_compatibility(cc).passed());
    ParameterSet d = make_family("cdv");
    EXPECT_TRUE(star_compatibility(d).passed());
    ParameterSet du = qtest::cdv_unit();
    EXPECT_TRUE(star_compatibility(du).passed());
    ParameterSet t = qtest::theta2();
    EXPECT_FALSE(star_compatibility(t).passed());
    EXPECT_FALSE(t.flags.star_compatible);
}

TEST(Params, FourPlaneIdentities) {
    std::array<Scalar, 4> t{Scalar::var("t0"), Scalar::var("t1"), Scalar::var("t2"), Scalar::var("t3")};
    EXPECT_TRUE(cdv_identities(t).passed());
}

TEST(Params, RefreshFlags) {
    ParameterSet ps = make_family("theta");
    refresh_flags(ps);
    EXPECT_TRUE(ps.flags.valid_def21);
    EXPECT_TRUE(ps.flags.centrality_R);
    EXPECT_TRUE(ps.flags.star_compatible);
}

TEST(Params, ConstructorErrors) {
    EXPECT_THROW(make_family("nope"), SchemaError);
    EXPECT_THROW(make_family("theta", {{"lam", Scalar::i()}}), DegenerateFamilyParameters);
    EXPECT_THROW(make_family("sklyanin_k", {{"a", q("1")}}), DegenerateFamilyParameters);
    EXPECT_THROW(make_family("zero_l", {{"p10", q("0")}}), DegenerateFamilyParameters);
}

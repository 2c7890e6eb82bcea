#include <vector>

#include <gtest/gtest.h>

#include "qalg/bialgebra.hpp"
#include "qalg/errors.hpp"
#include "support.hpp"

using namespace qalg;
using qtest::q;

TEST(Bialgebra, WorkedReduction) {
    MatrixBialgebra mb(qtest::theta2());
    auto A = mb.alphabet();
    EXPECT_EQ(m_reduce(parse_ncpoly(A, "M10 M01"), mb),
              parse_ncpoly(A, "16/25 M01 M10 - 12/25 M03 M12 + 12/25 M21 M30 - 9/25 M23 M32"));
}

TEST(Bialgebra, ReductionIsIdempotentLinearAndGraded) {
    MatrixBialgebra mb(qtest::theta2());
    auto A = mb.alphabet();
    NCPoly f = parse_ncpoly(A, "M33 M10 M01 - 2 M21 M12");
    NCPoly g = parse_ncpoly(A, "M32 M23 + M13 M31 M00");
    NCPoly nf = m_reduce(f, mb);
    EXPECT_EQ(m_reduce(nf, mb), nf);
    EXPECT_EQ(m_reduce(f + q("3/4") * g, mb), nf + q("3/4") * m_reduce(g, mb));
    for (const auto& [w, c] : m_reduce(g, mb).terms()) EXPECT_TRUE(w.size() == 2 || w.size() == 3);
    EXPECT_EQ(m_reduce(g.slice(2, Grading::word_length), mb), m_reduce(g, mb).slice(2, Grading::word_length));
}

TEST(Bialgebra, DegreeTwoDimension) {
    for (const auto& ps : {qtest::classical(), qtest::theta2(), qtest::sklyanin_C_concrete(), qtest::sklyanin_k_concrete()}) {
        IdentityReport r = matrix_degree2(MatrixBialgebra(ps));
        EXPECT_TRUE(r.passed()) << ps.family;
        EXPECT_EQ(r.data["dimension"], 136u);
    }
}

TEST(Bialgebra, InvolutivityAndRelationEquivalence) {
    for (const auto& ps : {qtest::theta2(), make_family("theta"), make_family("sklyanin_C"), qtest::cdv_unit()}) {
        MatrixBialgebra mb(ps);
        EXPECT_TRUE(involutivity_audit(mb).passed()) << ps.family;
        IdentityReport r = relA_equivalence(mb);
        EXPECT_TRUE(r.passed()) << ps.family;
        EXPECT_EQ(r.data["rank_commutation"], 120u);
    }
}

TEST(Bialgebra, CounitOnSymbolicParameters) {
    IdentityReport r = coalgebra_audit(MatrixBialgebra(make_family("sklyanin_C")), false);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.data["delta"], "skipped");
}

TEST(Bialgebra, CoproductOnConcreteParameters) {
    for (const auto& ps : {qtest::theta2(), qtest::sklyanin_C_concrete()}) {
        IdentityReport r = coalgebra_audit(MatrixBialgebra(ps));
        EXPECT_TRUE(r.passed()) << ps.family << " " << r.to_json().dump();
    }
}

TEST(Bialgebra, TensorLegsReduceIndependently) {
    MatrixBialgebra mb(qtest::theta2());
    auto& eng = mb.engine();
    auto leg = [&eng](const Word& w) { return eng.normal_form(w); };
    Word left{bialg::gen(1, 0), bialg::gen(0, 1)};
    Word right{bialg::gen(3, 3), bialg::gen(2, 1)};
    Word both = left;
    for (Letter l : right) both.push_back(static_cast<Letter>(l + 16));
    LinComb got = reduce_legs(LinComb{{both, Scalar(1)}}, 16, leg, leg);
    LinComb want;
    for (const auto& [u, x] : eng.normal_form(left))
        for (const auto& [v, y] : eng.normal_form(right)) {
            Word t = u;
            for (Letter l : v) t.push_back(static_cast<Letter>(l + 16));
            add_to(want, t, x * y);
        }
    EXPECT_TRUE(got == want);
    EXPECT_FALSE(got.empty());
}

TEST(Bialgebra, CoproductOfAGeneratorIsCoassociative) {
    LinComb one{{Word{bialg::gen(2, 1)}, Scalar(1)}};
    LinComb d = bialg::coproduct_at(one, 0);
    EXPECT_EQ(d.size(), 4u);
    EXPECT_TRUE(bialg::coproduct_at(d, 0) == bialg::coproduct_at(d, 1));
    EXPECT_TRUE(bialg::counit_at(d, 0) == one);
    EXPECT_TRUE(bialg::counit_at(d, 1) == one);
}

TEST(Bialgebra, Coaction) {
    for (const auto& ps : {qtest::theta2(), qtest::classical(), make_family("theta")}) {
        MatrixBialgebra mb(ps);
        IdentityReport r = coaction_audit(mb, FormSystem(ps));
        EXPECT_TRUE(r.passed()) << ps.family << " " << r.to_json().dump();
        EXPECT_EQ(r.data["rank_conditions"], 120u);
        EXPECT_EQ(r.data["rank_commutation"], 120u);
    }
}

TEST(Bialgebra, SphereCoaction) { EXPECT_TRUE(sphere_coaction_check().passed()); }

TEST(Bialgebra, ColumnsAreCopiesOfThePlane) {
    for (const auto& ps : {qtest::theta2(), qtest::sklyanin_k_concrete(), make_family("cdv")}) {
        MatrixBialgebra mb(ps);
        for (int c = 0; c < 4; ++c) {
            IdentityReport r = column_iso_audit(mb, c);
            EXPECT_TRUE(r.passed()) << ps.family << " column " << c;
            EXPECT_EQ(r.data["relations"], 6u);
        }
    }
}

TEST(Bialgebra, Star) {
    for (const auto& ps : {qtest::sklyanin_C_concrete(), make_family("sklyanin_C"), qtest::cdv_unit(), make_family("cdv")})
        EXPECT_TRUE(star_audit(MatrixBialgebra(ps)).passed()) << ps.family;
    EXPECT_THROW(star_audit(MatrixBialgebra(qtest::theta2())), StarNotCompatible);
}

TEST(Bialgebra, OrthogonalityIsEvidenceOnly) {
    IdentityReport r = orthogonality_residual(MatrixBialgebra(qtest::sklyanin_C_concrete()));
    EXPECT_EQ(r.status, Status::reported);
    EXPECT_TRUE(r.data.contains("MtM_nonzero"));
    EXPECT_THROW(orthogonality_residual(MatrixBialgebra(qtest::sklyanin_k_concrete())), CentralityNotSatisfied);
}

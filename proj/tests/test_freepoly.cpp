#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qalg/errors.hpp"
#include "qalg/freepoly.hpp"
#include "support.hpp"

using namespace qalg;
using qtest::q;

namespace {

NCPoly random_poly(const AlphabetPtr& a, std::mt19937& rng) {
    std::uniform_int_distribution<int> len(0, 3), letter(0, static_cast<int>(a->size()) - 1), coef(-4, 4), count(1, 4);
    NCPoly f(a);
    for (int k = count(rng); k > 0; --k) {
        Word w;
        for (int j = len(rng); j > 0; --j) w.push_back(static_cast<Letter>(letter(rng)));
        f += NCPoly::monomial(a, w, Scalar(coef(rng)));
    }
    return f;
}

}  // namespace

TEST(FreePoly, ParseAndPrint) {
    auto A = alphabets::plane();
    NCPoly f = parse_ncpoly(A, "x1 x0 - 2/3 x0 x1 + 4");
    EXPECT_EQ(f.coeff(A->word({"x1", "x0"})), Scalar(1));
    EXPECT_EQ(f.coeff(A->word({"x0", "x1"})), q("-2/3"));
    EXPECT_EQ(f.coeff(Word{}), Scalar(4));
    EXPECT_EQ(parse_ncpoly(A, f.str()), f);
}

TEST(FreePoly, ScalarCoefficientsMayBeSymbolic) {
    auto A = alphabets::plane();
    NCPoly f = parse_ncpoly(A, "(2*lam/(lam^2+1)) x0 x1");
    EXPECT_EQ(f.coeff(A->word({"x0", "x1"})), q("2*lam/(lam^2+1)"));
}

TEST(FreePoly, RingAxiomsOnRandomSamples) {
    auto A = alphabets::form();
    std::mt19937 rng(3);
    for (int k = 0; k < 30; ++k) {
        NCPoly f = random_poly(A, rng), g = random_poly(A, rng), h = random_poly(A, rng);
        EXPECT_EQ((f * g) * h, f * (g * h));
        EXPECT_EQ(f * (g + h), f * g + f * h);
        EXPECT_EQ((f + g) * h, f * h + g * h);
        EXPECT_TRUE((f - f).is_zero());
    }
}

TEST(FreePoly, UnknownNamesAreScalarSymbols) {
    NCPoly f = parse_ncpoly(alphabets::plane(), "x7 x0");
    EXPECT_EQ(f.coeff(alphabets::plane()->word({"x0"})), q("x7"));
}

TEST(FreePoly, NoncommutativeProduct) {
    auto A = alphabets::plane();
    NCPoly x0 = NCPoly::gen(A, "x0"), x1 = NCPoly::gen(A, "x1");
    EXPECT_FALSE(x0 * x1 == x1 * x0);
}

TEST(FreePoly, FormDegreeSlices) {
    auto A = alphabets::form();
    NCPoly f = parse_ncpoly(A, "x0 dx1 + dx0 dx1 + x0 x1 x2");
    EXPECT_EQ(f.slice(1, Grading::form_degree), parse_ncpoly(A, "x0 dx1"));
    EXPECT_EQ(f.slice(2, Grading::word_length), parse_ncpoly(A, "x0 dx1 + dx0 dx1"));
    EXPECT_EQ(A->form_degree(A->word({"dx0", "x1", "dx2"})), 2);
}

TEST(FreePoly, TensorLegs) {
    auto A = alphabets::matrix_square();
    EXPECT_EQ(A->size(), 32u);
    EXPECT_EQ((*A)[A->at("M00")].leg, 0);
    EXPECT_EQ((*A)[A->at("M00'")].leg, 1);
    EXPECT_EQ(alphabets::coaction_form()->size(), 24u);
}

TEST(FreePoly, Errors) {
    EXPECT_THROW(NCPoly::gen(alphabets::plane(), "x0") + NCPoly::gen(alphabets::form(), "x0"), AlphabetMismatch);
    EXPECT_THROW(parse_ncpoly(alphabets::plane(), "x0 x1 / x2"), ParseError);
    EXPECT_THROW(parse_ncpoly(alphabets::plane(), "x0 +"), ParseError);
}

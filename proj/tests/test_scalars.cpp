#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qalg/errors.hpp"
#include "qalg/scalar.hpp"
#include "support.hpp"

using qalg::Scalar;
using qtest::q;

namespace {

std::vector<Scalar> sample_pool(unsigned seed, int n) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-7, 7), den(1, 5), pick(0, 5);
    std::vector<Scalar> out;
    Scalar x = Scalar::var("x"), y = Scalar::var("y");
    for (int k = 0; k < n; ++k) {
        Scalar c = Scalar::rational(num(rng), den(rng));
        switch (pick(rng)) {
            case 0: out.push_back(c); break;
            case 1: out.push_back(c + x); break;
            case 2: out.push_back(c * x * y - Scalar::i()); break;
            case 3: out.push_back((x + c) / (y + Scalar(2))); break;
            case 4: out.push_back(c * Scalar::i() + y * y); break;
            default: out.push_back(Scalar(1) / (x * x + Scalar(1))); break;
        }
    }
    return out;
}

}  // namespace

TEST(Scalars, ParseAndPrintRoundTrip) {
    for (const char* s : {"0", "1", "-3/7", "2*lam/(lam^2 + 1)", "(-lam^2 + 1)/(lam^2 + 1)", "3/5 + 4/5*i", "a*b - 1"}) {
        Scalar x = q(s);
        EXPECT_EQ(q(x.str()), x) << s;
        EXPECT_EQ(q(x.str()).str(), x.str()) << s;
    }
}

TEST(Scalars, CanonicalFormCancelsCommonFactors) {
    EXPECT_EQ(q("(lam^2 - 1)/(lam - 1)"), q("lam + 1"));
    EXPECT_EQ(q("(a*b + a)/(b + 1)").str(), "a");
    EXPECT_TRUE((q("1/(x+1)") - q("x/(x^2+x)")).is_zero());
}

TEST(Scalars, GaussianRationals) {
    Scalar i = Scalar::i();
    EXPECT_EQ(i * i, Scalar(-1));
    EXPECT_EQ(q("1/(3/5 + 4/5*i)"), q("3/5 - 4/5*i"));
    EXPECT_EQ(q("2*i").conj({}), q("-2*i"));
}

TEST(Scalars, ConjugationFollowsBindings) {
    qalg::Bindings inv{{"lam", q("1/lam")}};
    EXPECT_EQ(q("2*lam/(lam^2+1)").conj(inv), q("2*lam/(lam^2+1)"));
    EXPECT_EQ(q("(1 - lam^2)/(1 + lam^2)").conj(inv), -q("(1 - lam^2)/(1 + lam^2)"));
    EXPECT_EQ(q("i*alpha").conj({{"alpha", q("alpha")}}), q("-i*alpha"));
}

TEST(Scalars, FieldAxiomsOnRandomSamples) {
    auto pool = sample_pool(7, 24);
    for (std::size_t k = 0; k + 2 < pool.size(); ++k) {
        const Scalar &a = pool[k], &b = pool[k + 1], &c = pool[k + 2];
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inverse(), Scalar(1));
        }
    }
}

TEST(Scalars, SubstitutionIsARingMap) {
    auto pool = sample_pool(11, 12);
    qalg::Bindings at{{"x", q("3")}, {"y", q("1/2")}};
    for (std::size_t k = 0; k + 1 < pool.size(); ++k) {
        const Scalar &a = pool[k], &b = pool[k + 1];
        EXPECT_EQ((a * b).substitute(at), a.substitute(at) * b.substitute(at));
        EXPECT_EQ((a + b).substitute(at), a.substitute(at) + b.substitute(at));
    }
}

TEST(Scalars, VariablesAreSorted) {
    EXPECT_EQ(q("b*a + c").variables(), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_TRUE(q("7/3").variables().empty());
}

TEST(Scalars, Errors) {
    EXPECT_THROW(Scalar(0).inverse(), qalg::DivisionByZero);
    EXPECT_THROW(q("1/(x - x)"), qalg::ParseError);
    try {
        q("2*/3");
        FAIL() << "no parse error";
    } catch (const qalg::ParseError& e) {
        EXPECT_EQ(e.offset, 2u);
    }
}

#include <string>

#include <gtest/gtest.h>

#include "qalg/errors.hpp"
#include "qalg/io.hpp"
#include "support.hpp"

using namespace qalg;
using qtest::q;

namespace {

std::pair<std::size_t, std::size_t> schema_position(const std::string& text) {
    try {
        params_from_json(text);
    } catch (const SchemaError& e) {
        return {e.line, e.column};
    }
    ADD_FAILURE() << "no schema error for " << text;
    return {0, 0};
}

}  // namespace

TEST(Io, FamilyFile) {
    ParameterSet ps = params_from_json(R"({"family": "theta", "args": {"lam": "2"}})");
    EXPECT_EQ(ps.family, "theta");
    EXPECT_EQ(ps.l[0][1], q("4/5"));
    EXPECT_EQ(ps.p[0][1], q("-3/5"));
}

TEST(Io, IntegerEntriesAreAccepted) {
    ParameterSet ps = params_from_json(R"({"family": "theta", "args": {"lam": 2}})");
    EXPECT_EQ(ps.l[0][1], q("4/5"));
}

TEST(Io, RoundTripIsStable) {
    for (const auto& ps : {qtest::theta2(), make_family("theta"), make_family("sklyanin_C"), make_family("cdv"), qtest::cdv_unit()}) {
        std::string once = params_to_json(ps);
        ParameterSet back = params_from_json(once);
        EXPECT_EQ(params_to_json(back), once);
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
                EXPECT_EQ(back.l[m][n], ps.l[m][n]);
                EXPECT_EQ(back.p[m][n], ps.p[m][n]);
            }
        EXPECT_EQ(back.variables, ps.variables);
        EXPECT_EQ(back.flags.hyp_l02, ps.flags.hyp_l02);
    }
}

TEST(Io, ConjugationSurvivesTheRoundTrip) {
    ParameterSet back = params_from_json(params_to_json(make_family("theta")));
    EXPECT_EQ(back.conjugation.at("lam"), q("1/lam"));
    EXPECT_TRUE(star_compatibility(back).passed());
}

TEST(Io, SyntaxErrorPosition) {
    EXPECT_EQ(schema_position("{\n  \"family\": \"theta\",\n  \"args\": {\"lam\": 2,}\n}\n"), (std::pair<std::size_t, std::size_t>{3, 21}));
}

TEST(Io, UnknownArgumentPosition) {
    EXPECT_EQ(schema_position("{\n  \"family\": \"theta\",\n  \"args\": {\"mu\": \"2\"}\n}\n"), (std::pair<std::size_t, std::size_t>{3, 18}));
}

TEST(Io, UndeclaredVariablePosition) {
    std::string text =
        "{\n  \"variables\": [\"a\"],\n  \"l\": [[\"1\",\"1\",\"1\",\"1\"],[\"1\",\"1\",\"1\",\"1\"],\n"
        "        [\"1\",\"1\",\"b\",\"1\"],[\"1\",\"1\",\"1\",\"1\"]],\n"
        "  \"p\": [[\"0\",\"0\",\"0\",\"0\"],[\"0\",\"0\",\"0\",\"0\"],[\"0\",\"0\",\"0\",\"0\"],[\"0\",\"0\",\"0\",\"0\"]]\n}\n";
    EXPECT_EQ(schema_position(text), (std::pair<std::size_t, std::size_t>{4, 18}));
}

TEST(Io, BadExpressionPointsInsideTheString) {
    EXPECT_EQ(schema_position(R"({"family":"theta","args":{"lam":"2*/3"}})"), (std::pair<std::size_t, std::size_t>{1, 36}));
}

TEST(Io, ShapeErrors) {
    EXPECT_THROW(params_from_json("[1, 2]"), SchemaError);
    EXPECT_THROW(params_from_json(R"({"family": "nope"})"), SchemaError);
    EXPECT_THROW(params_from_json(R"({"family": "theta", "extra": 1})"), SchemaError);
    EXPECT_THROW(params_from_json(R"({"l": [[1]], "p": []})"), SchemaError);
    EXPECT_THROW(params_from_json(R"({"p": []})"), SchemaError);
    EXPECT_THROW(params_from_json(R"({"family": "theta", "args": {"lam": 1.5}})"), SchemaError);
    EXPECT_THROW(params_from_json(R"({"variables": [], "conjugation": {"z": "z"}, "l": [], "p": []})"), SchemaError);
}

TEST(Io, FamilyArgumentNames) {
    EXPECT_EQ(family_arg_names("cdv").size(), 4u);
    EXPECT_TRUE(family_arg_names("classical").empty());
    EXPECT_THROW(family_arg_names("nope"), SchemaError);
}

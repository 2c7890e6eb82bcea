#include <array>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "qalg/bialgebra.hpp"
#include "qalg/dga.hpp"
#include "qalg/errors.hpp"
#include "qalg/linalg.hpp"
#include "qalg/params.hpp"
#include "qalg/plane.hpp"
#include "qalg/rewrite.hpp"
#include "qalg/wform.hpp"

using namespace qalg;

namespace {

struct Criterion {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void expect(const IdentityReport& r, const std::string& what) {
        if (!r.passed()) failures.push_back(what + " " + r.to_json().dump().substr(0, 400));
    }
};

Scalar q(const char* s) { return parse_scalar(s); }

ParameterSet theta2() { return make_family("theta", {{"lam", q("2")}}); }
ParameterSet sklyanin_k_concrete() { return make_family("sklyanin_k", {{"a", q("1/2")}, {"b", q("1/3")}}); }
ParameterSet sklyanin_C_concrete() { return make_family("sklyanin_C", {{"alpha", q("1/2")}, {"beta", q("1/3")}}); }
ParameterSet zero_l_ones() { return make_family("zero_l", {{"p10", q("1")}, {"p20", q("1")}, {"p30", q("1")}}); }

std::vector<ParameterSet> listed_families() {
    return {make_family("classical"), make_family("sklyanin_k"), make_family("sklyanin_C"),
            make_family("cdv"),       make_family("theta"),      zero_l_ones()};
}

void check_defining_conditions(Criterion& c) {
    for (auto ps : listed_families()) c.expect(validate(ps), ps.family);
}

void check_r_matrix(Criterion& c) {
    for (const auto& ps : listed_families()) c.expect(r_squared_check(ps), ps.family);
    c.expect(ybe_defect(make_family("classical")).quantum_zero, "classical YBE defect is zero");
    c.expect(!ybe_defect(theta2()).quantum_zero, "theta(2) YBE defect is nonzero");
}

void check_dimensions(Criterion& c) {
    for (const auto& ps : {make_family("classical"), theta2(), sklyanin_k_concrete()}) {
        RewriteSystem rs = plane_system(ps);
        for (auto [n, dim] : {std::pair{2, 10u}, std::pair{3, 20u}}) {
            IdentityReport r = confluence_probe(rs, n);
            c.expect(r, ps.family);
            c.expect(r.data["normal_monomials"] == dim, ps.family + " normal words in degree " + std::to_string(n));
            c.expect(component_by_linear_algebra(rs, n).dimension == dim, ps.family + " elimination in degree " + std::to_string(n));
        }
        IdentityReport m = matrix_degree2(MatrixBialgebra(ps));
        c.expect(m, ps.family + " matrix degree 2");
    }
}

void check_forms(Criterion& c) {
    for (const auto& ps : {theta2(), sklyanin_C_concrete(), make_family("classical"), make_family("theta")}) {
        FormSystem fs(ps);
        IdentityReport three = three_form_audit(fs);
        c.expect(three, ps.family + " three-forms");
        c.expect(three.data["dimension"] == 4u, ps.family + " three-form dimension");
        IdentityReport four = four_form_audit(fs);
        c.expect(four, ps.family + " four-forms");
        c.expect(four.data["dimension4"] == 1u && four.data["eta"].size() == 36u, ps.family + " four-form dimension and eta count");
        c.expect(d_squared_audit(fs), ps.family + " d^2");
    }
    ParameterSet minus = make_family("classical");
    minus.l[0][2] = minus.l[2][0] = minus.l[1][3] = minus.l[3][1] = q("-1");
    bool accepted = true;
    try {
        FormSystem ok(minus);
    } catch (const AssumptionViolated&) {
        accepted = false;
    }
    c.expect(accepted, "minus branch with p = 0 accepted");
    minus.p[0][1] = q("1/2");
    minus.p[1][0] = q("-1/2");
    bool rejected = false;
    try {
        FormSystem bad(minus);
    } catch (const AssumptionViolated&) {
        rejected = true;
    }
    c.expect(rejected, "minus branch with p01 != 0 rejected");
}

void check_volume(Criterion& c) {
    auto k_of = [](const ParameterSet& ps) { return volume_expand(build_w(ps), FormSystem(ps)).k; };
    c.expect(k_of(make_family("classical")) == Scalar(-24), "classical k = -24");
    c.expect(k_of(theta2()) == q("-528/25"), "theta(2) k = -528/25");
    ParameterSet sc = make_family("sklyanin_C");
    const Scalar& l01 = sc.l[0][1];
    c.expect((k_of(sc) + Scalar(2) * (Scalar(8) + Scalar(4) * l01 * l01)).is_zero(), "sklyanin_C k + 2(8 + 4 l01^2) = 0");
    for (const auto& ps : {make_family("classical"), theta2(), sc}) c.expect(volume_report(build_w(ps), FormSystem(ps)), ps.family + " volume");
}

void check_w_form(Criterion& c) {
    for (const auto& ps : {make_family("classical"), make_family("sklyanin_k"), make_family("sklyanin_C"), make_family("cdv"),
                           make_family("theta"), theta2()}) {
        if (ps.l[0][1].is_zero() || ps.l[0][2].is_zero()) continue;
        WTensor w = build_w(ps);
        IdentityReport pre = pre_regularity(w);
        c.expect(pre, ps.family + " pre-regularity");
        c.expect(pre.data["rank"] == 4u, ps.family + " rank 4");
        c.expect(relations_match(w, ps), ps.family + " relations");
    }
}

bool in_span(const std::vector<std::array<Scalar, 4>>& basis, const std::array<Scalar, 4>& v) {
    Echelon e;
    for (const auto& b : basis) e.insert(to_sparse({b[0], b[1], b[2], b[3]}));
    return e.contains(to_sparse({v[0], v[1], v[2], v[3]}));
}

void check_centrality(Criterion& c) {
    for (const char* fam : {"theta", "cdv", "sklyanin_C"})
        c.expect(central_element_check(plane_system(make_family(fam)), unit_coefficients()), std::string(fam) + " sum of squares");
    ParameterSet sc = make_family("sklyanin_C");
    c.expect(central_element_check(plane_system(sc), second_central_coefficients(sc)), "sklyanin_C second central element");
    c.expect(!central_element_check(plane_system(make_family("sklyanin_k")), unit_coefficients()).passed(),
             "sklyanin_k sum of squares is not central");
    auto basis = central_coefficients(sc);
    c.expect(basis.size() == 2 && in_span(basis, unit_coefficients()) && in_span(basis, second_central_coefficients(sc)),
             "nullspace reproduces both vectors");
}

void check_bialgebra(Criterion& c) {
    for (const auto& ps : {theta2(), make_family("theta"), make_family("sklyanin_C")}) {
        MatrixBialgebra mb(ps);
        c.expect(involutivity_audit(mb), ps.family + " involutivity");
        c.expect(relA_equivalence(mb), ps.family + " relA");
        c.expect(coalgebra_audit(mb, ps.variables.empty()), ps.family + " coalgebra");
        for (int col = 0; col < 4; ++col) c.expect(column_iso_audit(mb, col), ps.family + " column");
    }
    MatrixBialgebra t(theta2());
    c.expect(coaction_audit(t, FormSystem(theta2())), "theta(2) coaction");
    for (const auto& ps : {sklyanin_C_concrete(), make_family("sklyanin_C"), make_family("cdv")})
        c.expect(star_audit(MatrixBialgebra(ps)), ps.family + " star");
}

std::string capture(const std::string& cmd) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    pclose(p);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "qalg";
    using Check = std::function<void(Criterion&)>;
    const std::vector<std::pair<std::string, Check>> criteria{
        {"defining conditions for every family", Check(check_defining_conditions)},
        {"R^2 = 1 and the Yang-Baxter defect", Check(check_r_matrix)},
        {"degree 2 and 3 dimensions, matrix degree 2", Check(check_dimensions)},
        {"three-forms, four-forms, eta, d^2, branch", Check(check_forms)},
        {"volume coefficient", Check(check_volume)},
        {"W pre-regularity and relations", Check(check_w_form)},
        {"central quadratic elements", Check(check_centrality)},
        {"bialgebra audits", Check(check_bialgebra)},
        {"deterministic report stream", Check([&cli](Criterion& c) {
             for (const char* args : {" check --family theta --lam 2 --suite all", " check --family sklyanin_C --suite all"}) {
                 std::string a = capture(cli + args), b = capture(cli + args);
                 c.expect(!a.empty() && a == b, args);
             }
         })},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Criterion c;
        try {
            criteria[k].second(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        bool ok = c.failures.empty();
        failed += ok ? 0 : 1;
        std::cout << (ok ? "PASS " : "FAIL ") << k + 1 << " " << criteria[k].first << '\n';
        for (const auto& f : c.failures) std::cout << "  " << f << '\n';
        std::cout << std::flush;
    }
    return failed ? 1 : 0;
}

#pragma once

// Runs the audits of every module in dependency order and streams one JSON
// object per report: params -> plane -> dga -> wform -> bialg.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qalg/bialgebra.hpp"
#include "qalg/dga.hpp"
#include "qalg/errors.hpp"
#include "qalg/params.hpp"
#include "qalg/plane.hpp"
#include "qalg/report.hpp"
#include "qalg/rewrite.hpp"
#include "qalg/wform.hpp"

namespace qalg {

struct SuiteOptions {
    std::string suite = "all";        // def21, plane, dga, wform, bialg, all
    std::vector<std::string> checks;  // empty: every check of the selected suites
    int degree_budget = 3;            // highest degree probed in the plane suite
    bool symbolic = false;            // allow the expensive checks on symbolic parameters
    bool strict = false;              // invalid parameters and assumption failures are hard errors
    unsigned seed = 0;                // randomized samples only
    bool timing = false;
};

struct SuiteTally {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t reported = 0;
    std::size_t skipped = 0;
    std::size_t errors = 0;
    bool invalid = false;     // the defining conditions fail
    bool assumption = false;  // a stage refused its input
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> n{"def21", "plane", "dga", "wform", "bialg", "all"};
    return n;
}

class SuiteRunner {
public:
    using Emit = std::function<void(const nlohmann::ordered_json&)>;

    SuiteRunner(ParameterSet ps, SuiteOptions opts, Emit emit)
        : ps_(std::move(ps)), opts_(std::move(opts)), emit_(std::move(emit)) {}

    const SuiteTally& tally() const { return tally_; }

    /// 0 when nothing failed, 1 on a failed check, 3 on refused input (or invalid input under strict).
    int exit_code() const {
        if (tally_.assumption || (opts_.strict && tally_.invalid)) return 3;
        return tally_.fail ? 1 : 0;
    }

    nlohmann::ordered_json summary() const {
        nlohmann::ordered_json s;
        s["pass"] = tally_.pass;
        s["fail"] = tally_.fail;
        s["reported"] = tally_.reported;
        s["skipped"] = tally_.skipped;
        s["errors"] = tally_.errors;
        s["exit_code"] = exit_code();
        return nlohmann::ordered_json{{"summary", s}};
    }

    int run() {
        const std::string& s = opts_.suite;
        bool all = s == "all";
        if (!validate_stage(all || s == "def21")) return exit_code();
        if (all || s == "plane") plane_stage();
        if (all || s == "dga") dga_stage();
        if (all || s == "wform") wform_stage();
        if (all || s == "bialg") bialg_stage();
        return exit_code();
    }

private:
    bool wants(const std::string& id) const {
        if (opts_.checks.empty()) return true;
        std::string tail = id.substr(id.find('.') + 1);
        for (std::string t : opts_.checks) {
            if (t == "columns") t = "column";
            if (t == "ortho") t = "orthogonality";
            for (const std::string& s : {id, tail})
                if (s == t || s.rfind(t + ".", 0) == 0) return true;
        }
        return false;
    }

    void emit_report(const IdentityReport& r) {
        switch (r.status) {
            case Status::pass:
                ++tally_.pass;
                break;
            case Status::fail:
                ++tally_.fail;
                break;
            case Status::reported:
                ++tally_.reported;
                break;
        }
        emit_(r.to_json(opts_.timing));
    }

    void skip(const std::string& id, const std::string& reason) {
        if (!wants(id)) return;
        ++tally_.skipped;
        emit_(nlohmann::ordered_json{{"skipped", id}, {"reason", reason}});
    }

    void error(const std::string& stage, const std::string& kind, const std::string& msg) {
        ++tally_.errors;
        emit_(nlohmann::ordered_json{{"error", kind}, {"stage", stage}, {"message", msg}});
    }

    void check(const std::string& id, const std::function<IdentityReport()>& f) {
        if (!wants(id)) return;
        try {
            emit_report(f());
        } catch (const AssumptionViolated& e) {
            tally_.assumption = true;
            error(id, "AssumptionViolated", e.what());
        } catch (const NonTermination& e) {
            ++tally_.fail;
            error(id, "NonTermination", e.what());
        } catch (const DegreeBudgetExceeded& e) {
            tally_.assumption = true;
            error(id, "DegreeBudgetExceeded", e.what());
        }
    }

    bool concrete_or_allowed() const { return ps_.variables.empty() || opts_.symbolic; }

    bool validate_stage(bool emit) {
        IdentityReport v = validate(ps_);
        if (!v.passed()) tally_.invalid = true;
        if (emit || !v.passed()) {
            if (wants(v.check_id) || !v.passed()) {
                // Invalid input is data unless strict; it does not count as a failed check.
                if (v.passed() || opts_.strict) emit_report(v);
                else emit_(v.to_json(opts_.timing));
            }
        }
        if (emit) {
            check("params.indices", [&] { return index_identities(ps_); });
            check("params.branch", [&] { return branch_check(ps_); });
            check("params.star", [&] {
                IdentityReport r("params.star", "conj(l_mn) = l_mn and conj(p_mn) = p_nm");
                try {
                    IdentityReport s = star_compatibility(ps_);
                    r = s;
                } catch (const UndeclaredConjugation& e) {
                    r.fail_at("conjugation", e.what());
                    ps_.flags.star_compatible = false;
                }
                // A classification of the input: the star structure exists only for some parameters.
                r.data["star_compatible"] = ps_.flags.star_compatible;
                r.status = Status::reported;
                return r;
            });
            check("params.centrality", [&] {
                IdentityReport r = centrality_condition(ps_, unit_coefficients());
                r.data["central_sum_of_squares"] = r.passed();
                auto cs = nlohmann::ordered_json::array();
                for (const auto& c : central_coefficients(ps_)) cs.push_back(vec_str(c));
                r.data["central_coefficients"] = std::move(cs);
                r.status = Status::reported;
                return r;
            });
        }
        if (!v.passed()) {
            for (const char* stage : {"plane", "dga", "wform", "bialg"})
                if (opts_.suite == "all" || opts_.suite == stage) skip(std::string(stage), "parameters fail the defining conditions");
            return false;
        }
        ps_.flags.centrality_R = centrality_condition(ps_, unit_coefficients()).passed();
        try {
            star_compatibility(ps_);
        } catch (const UndeclaredConjugation&) {
            ps_.flags.star_compatible = false;
        }
        return true;
    }

    void plane_stage() {
        RewriteSystem rs = plane_system(ps_);
        check("plane.involutivity", [&] { return plane_involutivity(ps_); });
        check("plane.r_squared", [&] { return r_squared_check(ps_); });
        check("plane.ybe", [&] { return ybe_report(ps_); });
        int top = opts_.degree_budget;
        DegreeBudget budget{opts_.symbolic ? std::max(top, 4) : 4, std::max(top, 6)};
        for (int n = 2; n <= top; ++n) check("rewrite.confluence.plane.deg" + std::to_string(n), [&] { return confluence_probe(rs, n, budget); });
        check("plane.lemma_xx", [&] { return lemma_xx_check(rs); });
        auto cs = central_coefficients(ps_);
        for (std::size_t k = 0; k < cs.size(); ++k)
            check("plane.center." + std::to_string(k), [&] { return central_element_check(rs, cs[k], "plane.center." + std::to_string(k)); });
        if (ps_.flags.centrality_R) {
            check("plane.sphere", [&] {
                IdentityReport r("plane.sphere", "sum x_m x_m = 1 and x3 x3 = 1 - x0^2 - x1^2 - x2^2 in the sphere algebra");
                ReportTimer timer(r);
                SphereAlgebra s(rs);
                auto A = alphabets::plane();
                NCPoly q = quadratic_element(unit_coefficients());
                NCPoly one = NCPoly::monomial(A, Word{}, Scalar(1));
                NCPoly d = sphere_reduce(q, s) - one;
                if (!d.is_zero()) r.fail_at("sum x^2 - 1", d.str());
                NCPoly x33 = sphere_reduce(NCPoly::monomial(A, word_of({3, 3}), Scalar(1)), s);
                for (int m = 0; m < 3; ++m) x33 += NCPoly::monomial(A, word_of({m, m}), Scalar(1));
                x33 -= one;
                if (!x33.is_zero()) r.fail_at("x3 x3", x33.str());
                return r;
            });
        } else {
            skip("plane.sphere", "sum of squares is not central");
        }
    }

    FormSystem* forms(const std::string& stage) {
        if (fs_) return fs_.get();
        if (fs_error_) {
            error(stage, "AssumptionViolated", *fs_error_);
            return nullptr;
        }
        try {
            fs_ = std::make_unique<FormSystem>(ps_);
        } catch (const AssumptionViolated& e) {
            tally_.assumption = true;
            fs_error_ = e.what();
            error(stage, "AssumptionViolated", e.what());
        }
        return fs_.get();
    }

    void dga_stage() {
        FormSystem* fs = forms("dga");
        if (!fs) return;
        check("dga.one_form_consistency", [&] { return one_form_consistency(*fs); });
        check("dga.three_forms", [&] { return three_form_audit(*fs); });
        if (fs->assumptions().branch == Branch::plus) {
            check("dga.three_form_antisymmetry", [&] { return antisymmetry_audit(*fs); });
            check("dga.four_forms", [&] { return four_form_audit(*fs); });
        } else {
            skip("dga.three_form_antisymmetry", "antisymmetry of three-forms assumes l02 = l01 l03");
            skip("dga.four_forms", "the four-form tables assume l02 = l01 l03");
        }
        check("dga.d_squared", [&] { return d_squared_audit(*fs); });
        check("dga.d_relations", [&] { return d_relations_audit(*fs); });
        check("dga.leibniz", [&] { return leibniz_samples(*fs, opts_.seed); });
        check("dga.mixed_degree", [&] { return mixed_degree_report(*fs); });
        if (ps_.flags.centrality_R) check("dga.sphere", [&] { return sphere_calculus_report(*fs); });
        else skip("dga.sphere", "sum of squares is not central");
    }

    void wform_stage() {
        if (classify_branch(ps_) == Branch::minus) {
            for (const char* id : {"wform.tables", "wform.pre_regularity", "wform.relations_match", "wform.volume"})
                skip(id, "W assumes l02 = l01 l03");
            return;
        }
        std::optional<WTensor> w;
        try {
            w = build_w(ps_);
        } catch (const AssumptionViolated& e) {
            tally_.assumption = true;
            error("wform", "AssumptionViolated", e.what());
            return;
        } catch (const OrbitInconsistency& e) {
            ++tally_.fail;
            error("wform", "OrbitInconsistency", e.what());
            return;
        }
        check("wform.tables", [&] {
            IdentityReport r = w_tables_check(*w, ps_);
            r.data = w_json(*w);
            return r;
        });
        check("wform.pre_regularity", [&] { return pre_regularity(*w); });
        check("wform.relations_match", [&] { return relations_match(*w, ps_); });
        if (!wants("wform.volume")) return;
        FormSystem* fs = forms("wform");
        if (!fs) return;
        check("wform.volume", [&] { return volume_report(*w, *fs); });
    }

    void bialg_stage() {
        MatrixBialgebra mb(ps_);
        check("bialg.involutivity", [&] { return involutivity_audit(mb); });
        check("bialg.relA", [&] { return relA_equivalence(mb); });
        check("bialg.degree2", [&] { return matrix_degree2(mb); });
        check("bialg.coalgebra", [&] { return coalgebra_audit(mb, concrete_or_allowed()); });
        if (wants("bialg.coaction")) {
            if (FormSystem* fs = forms("bialg")) check("bialg.coaction", [&] { return coaction_audit(mb, *fs); });
        }
        check("bialg.sphere_coaction", [&] { return sphere_coaction_check(); });
        for (int c = 0; c < 4; ++c) check("bialg.column." + std::to_string(c), [&] { return column_iso_audit(mb, c); });
        if (ps_.flags.star_compatible) check("bialg.star", [&] { return star_audit(mb); });
        else skip("bialg.star", "parameters are not star compatible");
        if (!ps_.flags.centrality_R) skip("bialg.orthogonality", "sum of squares is not central");
        else if (!concrete_or_allowed()) skip("bialg.orthogonality", "symbolic parameters; pass --symbolic");
        else check("bialg.orthogonality", [&] { return orthogonality_residual(mb); });
    }

    ParameterSet ps_;
    SuiteOptions opts_;
    Emit emit_;
    SuiteTally tally_;
    std::unique_ptr<FormSystem> fs_;
    std::optional<std::string> fs_error_;
};

}  // namespace qalg

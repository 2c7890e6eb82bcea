#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qalg/bialgebra.hpp"
#include "qalg/dga.hpp"
#include "qalg/errors.hpp"
#include "qalg/io.hpp"
#include "qalg/params.hpp"
#include "qalg/plane.hpp"
#include "qalg/suite.hpp"
#include "qalg/wform.hpp"

namespace {

using qalg::ParameterSet;

struct ParamSource {
    std::string family;
    std::string file;
    std::map<std::string, std::string> args;
};

void add_param_flags(CLI::App* app, ParamSource& src) {
    app->add_option("--family", src.family, "classical, sklyanin_k, sklyanin_C, theta, cdv, zero_l");
    app->add_option("--file", src.file, "parameter file (JSON)");
    for (const char* k : {"a", "b", "lam", "t0", "t1", "t2", "t3", "alpha", "beta", "p10", "p20", "p30"})
        app->add_option(std::string("--") + k, src.args[k], std::string("family argument ") + k);
}

ParameterSet load(const ParamSource& src) {
    if (!src.file.empty()) {
        if (!src.family.empty()) throw qalg::SchemaError("--file and --family are exclusive");
        std::ifstream in(src.file);
        if (!in) throw qalg::SchemaError("cannot read " + src.file);
        std::stringstream ss;
        ss << in.rdbuf();
        return qalg::params_from_json(ss.str());
    }
    std::string fam = src.family.empty() ? "classical" : src.family;
    const auto& names = qalg::family_arg_names(fam);
    qalg::Bindings b;
    for (const auto& [k, v] : src.args) {
        if (v.empty()) continue;
        if (!names.count(k)) throw qalg::SchemaError("family " + fam + " takes no argument --" + k);
        try {
            b[k] = qalg::parse_scalar(v);
        } catch (const qalg::ParseError& e) {
            throw qalg::SchemaError("--" + k + ": " + e.what());
        }
    }
    return qalg::make_family(fam, b);
}

void emit(const nlohmann::ordered_json& j) { std::cout << j.dump() << '\n' << std::flush; }

struct SuiteFlags {
    qalg::SuiteOptions opts;
    std::string checks;
    std::string out = "reports";
};

void add_suite_flags(CLI::App* app, SuiteFlags& f, bool with_suite) {
    if (with_suite)
        app->add_option("--suite", f.opts.suite, "def21, plane, dga, wform, bialg, all")
            ->check(CLI::IsMember(qalg::suite_names()));
    app->add_option("--checks", f.checks, "comma separated check names or prefixes");
    app->add_option("--degree-budget", f.opts.degree_budget, "highest degree probed for the plane")->check(CLI::Range(2, 8));
    app->add_flag("--symbolic", f.opts.symbolic, "run the expensive checks on symbolic parameters");
    app->add_flag("--strict", f.opts.strict, "treat invalid parameters as a hard error");
    app->add_option("--seed", f.opts.seed, "seed for randomized samples");
    app->add_option("--out", f.out, "reports or summary")->check(CLI::IsMember({"reports", "summary"}));
    app->add_flag("--timing", f.opts.timing, "include runtime_ms in reports");
}

int run_suite(const ParamSource& src, SuiteFlags f, const std::string& suite) {
    if (!suite.empty()) f.opts.suite = suite;
    std::stringstream ss(f.checks);
    for (std::string t; std::getline(ss, t, ',');)
        if (!t.empty()) f.opts.checks.push_back(t);
    qalg::SuiteRunner runner(load(src), f.opts, emit);
    int code = runner.run();
    if (f.out == "summary") emit(runner.summary());
    return code;
}

int emit_reports(const std::vector<qalg::IdentityReport>& rs, bool timing) {
    int code = 0;
    for (const auto& r : rs) {
        emit(r.to_json(timing));
        if (r.status == qalg::Status::fail) code = 1;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Audits of the four-dimensional quadratic algebras A_{l,p}, their forms and matrix bialgebras"};
    app.require_subcommand(1);
    int code = 0;
    ParamSource src;
    SuiteFlags flags;

    auto* check = app.add_subcommand("check", "run audit suites and stream one JSON report per line");
    add_param_flags(check, src);
    add_suite_flags(check, flags, true);
    check->callback([&] { code = run_suite(src, flags, ""); });

    auto* params = app.add_subcommand("params", "parameter tables");
    params->require_subcommand(1);
    auto* show = params->add_subcommand("show", "print the canonical parameter file");
    add_param_flags(show, src);
    show->callback([&] { std::cout << qalg::params_to_json(load(src)); });

    auto* plane = app.add_subcommand("plane", "the algebra A_{l,p}");
    plane->require_subcommand(1);
    auto* plane_check = plane->add_subcommand("check", "plane suite");
    add_param_flags(plane_check, src);
    add_suite_flags(plane_check, flags, false);
    plane_check->callback([&] { code = run_suite(src, flags, "plane"); });
    auto* ybe = plane->add_subcommand("ybe", "R-matrix square and Yang-Baxter defect");
    add_param_flags(ybe, src);
    ybe->callback([&] {
        ParameterSet ps = load(src);
        code = emit_reports({qalg::r_squared_check(ps), qalg::ybe_report(ps)}, false);
    });
    auto* center = plane->add_subcommand("center", "central quadratic elements");
    add_param_flags(center, src);
    center->callback([&] {
        ParameterSet ps = load(src);
        auto rs = qalg::plane_system(ps);
        std::vector<qalg::IdentityReport> out{qalg::centrality_condition(ps, qalg::unit_coefficients())};
        out.back().status = qalg::Status::reported;
        auto cs = qalg::central_coefficients(ps);
        for (std::size_t k = 0; k < cs.size(); ++k)
            out.push_back(qalg::central_element_check(rs, cs[k], "plane.center." + std::to_string(k)));
        code = emit_reports(out, false);
    });
    std::string expr;
    auto* reduce = plane->add_subcommand("reduce", "normal form of an expression in x0..x3");
    add_param_flags(reduce, src);
    reduce->add_option("--expr", expr, "expression")->required();
    reduce->callback([&] {
        auto rs = qalg::plane_system(load(src));
        std::cout << qalg::reduce(qalg::parse_ncpoly(qalg::alphabets::plane(), expr), rs).str() << '\n';
    });

    auto* sphere = app.add_subcommand("sphere", "the quotient by sum x_m^2 - 1");
    sphere->require_subcommand(1);
    auto* sreduce = sphere->add_subcommand("reduce", "normal form on the sphere");
    add_param_flags(sreduce, src);
    sreduce->add_option("--expr", expr, "expression")->required();
    sreduce->callback([&] {
        qalg::SphereAlgebra s(qalg::plane_system(load(src)));
        std::cout << qalg::sphere_reduce(qalg::parse_ncpoly(qalg::alphabets::plane(), expr), s).str() << '\n';
    });

    auto* dga = app.add_subcommand("dga", "differential calculus");
    dga->require_subcommand(1);
    auto* dga_audit = dga->add_subcommand("audit", "dga suite");
    add_param_flags(dga_audit, src);
    add_suite_flags(dga_audit, flags, false);
    dga_audit->callback([&] { code = run_suite(src, flags, "dga"); });
    auto* dreduce = dga->add_subcommand("reduce", "normal form of an expression in x0..x3, dx0..dx3");
    add_param_flags(dreduce, src);
    dreduce->add_option("--expr", expr, "expression")->required();
    bool apply_d = false;
    dreduce->add_flag("--d", apply_d, "apply the differential first");
    dreduce->callback([&] {
        qalg::FormSystem fs(load(src));
        auto f = qalg::parse_ncpoly(qalg::alphabets::form(), expr);
        std::cout << (apply_d ? qalg::differential(f, fs) : qalg::form_reduce(f, fs)).str() << '\n';
    });

    auto* wform = app.add_subcommand("wform", "the tensor W and the volume form");
    wform->require_subcommand(1);
    auto* wform_audit = wform->add_subcommand("audit", "wform suite");
    add_param_flags(wform_audit, src);
    add_suite_flags(wform_audit, flags, false);
    wform_audit->callback([&] { code = run_suite(src, flags, "wform"); });

    auto* bialg = app.add_subcommand("bialg", "the matrix bialgebra M_{l,p}");
    bialg->require_subcommand(1);
    auto* bialg_audit = bialg->add_subcommand("audit", "bialgebra suite");
    add_param_flags(bialg_audit, src);
    add_suite_flags(bialg_audit, flags, false);
    bialg_audit->callback([&] { code = run_suite(src, flags, "bialg"); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const qalg::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return 2;
    } catch (const qalg::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const qalg::AssumptionViolated& e) {
        emit({{"error", "AssumptionViolated"}, {"message", e.what()}});
        return 3;
    } catch (const qalg::DegenerateFamilyParameters& e) {
        emit({{"error", "DegenerateFamilyParameters"}, {"message", e.what()}});
        return 3;
    } catch (const qalg::Error& e) {
        emit({{"error", "Error"}, {"message", e.what()}});
        return 4;
    }
    return code;
}

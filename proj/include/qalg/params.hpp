#pragma once

// Index combinatorics, the (ℓ, p) parameter tables with their validity
// conditions, and constructors for the standard families.

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qalg/linalg.hpp"
#include "qalg/report.hpp"
#include "qalg/scalar.hpp"

namespace qalg {

struct IndexPair {
    int mu = 0;
    int nu = 0;
    friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Complementary pair: for μ>ν the complement ordered decreasingly, for
/// μ<ν increasingly, and the identity on the diagonal.
constexpr IndexPair prime_pair(IndexPair pr) {
    if (pr.mu == pr.nu) return pr;
    int rest[2], k = 0;
    for (int s = 0; s < 4; ++s)
        if (s != pr.mu && s != pr.nu) rest[k++] = s;
    return pr.mu > pr.nu ? IndexPair{rest[1], rest[0]} : IndexPair{rest[0], rest[1]};
}

struct TildeRow {
    int nu;
    int nu_tilde;
    int mu_nu;
    int mu_nu_tilde;
};

inline constexpr std::array<TildeRow, 4> kTilde{{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}};

enum class Branch { plus, minus, neither };

inline const char* branch_name(Branch b) {
    switch (b) {
        case Branch::plus:
            return "plus";
        case Branch::minus:
            return "minus";
        case Branch::neither:
            return "neither";
    }
    return "?";
}

struct ParamFlags {
    bool valid_def21 = false;
    Branch hyp_l02 = Branch::neither;
    bool centrality_R = false;
    bool star_compatible = false;
};

using Table = std::array<std::array<Scalar, 4>, 4>;

struct ParameterSet {
    std::string family = "custom";
    Table l{};
    Table p{};
    std::vector<std::string> variables;
    Bindings conjugation;  // involution on indeterminates used by star checks
    ParamFlags flags;

    const Scalar& L(int m, int n) const { return l[m][n]; }
    const Scalar& P(int m, int n) const { return p[m][n]; }
};

inline Branch classify_branch(const ParameterSet& ps) {
    Scalar prod = ps.l[0][1] * ps.l[0][3];
    if ((ps.l[0][2] - prod).is_zero()) return Branch::plus;
    if ((ps.l[0][2] + prod).is_zero()) return Branch::minus;
    return Branch::neither;
}

inline std::vector<std::string> collect_variables(const ParameterSet& ps) {
    std::set<std::string> seen;
    std::vector<std::string> out;
    for (const Table* t : {&ps.l, &ps.p})
        for (const auto& row : *t)
            for (const auto& x : row)
                for (auto& v : x.variables())
                    if (seen.insert(v).second) out.push_back(v);
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
        return *VarTable::instance().find(a) < *VarTable::instance().find(b);
    });
    return out;
}

inline std::string pair_loc(const char* what, int m, int n) {
    return std::string(what) + "[" + std::to_string(m) + "][" + std::to_string(n) + "]";
}

/// Conditions (a), (b), (c) on the parameter tables.
inline IdentityReport validate(ParameterSet& ps) {
    IdentityReport r("def21.validate", "l_mm=1, l symmetric, l_m'n'=l_mn; p antisymmetric; l_mn^2 + p_mn p_n'm' = 1");
    ReportTimer timer(r);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            auto [mp, np] = prime_pair({m, n});
            if (m == n) {
                Scalar d = ps.l[m][m] - Scalar(1);
                if (!d.is_zero()) r.fail_at("(a) " + pair_loc("l", m, m) + " - 1", d.str());
            }
            if (m < n) {
                Scalar s = ps.l[m][n] - ps.l[n][m];
                if (!s.is_zero()) r.fail_at("(a) " + pair_loc("l", m, n) + " - " + pair_loc("l", n, m), s.str());
            }
            Scalar pr = ps.l[mp][np] - ps.l[m][n];
            if (!pr.is_zero()) r.fail_at("(a) " + pair_loc("l", mp, np) + " - " + pair_loc("l", m, n), pr.str());
            if (m <= n) {
                Scalar a = ps.p[m][n] + ps.p[n][m];
                if (!a.is_zero()) r.fail_at("(b) " + pair_loc("p", m, n) + " + " + pair_loc("p", n, m), a.str());
            }
            Scalar c = ps.l[m][n] * ps.l[m][n] + ps.p[m][n] * ps.p[np][mp] - Scalar(1);
            if (!c.is_zero()) r.fail_at("(c) (" + std::to_string(m) + "," + std::to_string(n) + ")", c.str());
        }
    ps.flags.valid_def21 = r.passed();
    ps.flags.hyp_l02 = classify_branch(ps);
    r.data["hyp_l02"] = branch_name(ps.flags.hyp_l02);
    return r;
}

namespace detail {

inline void set_pair(ParameterSet& ps, int m, int n, const Scalar& lv, const Scalar& pv) {
    ps.l[m][n] = lv;
    ps.l[n][m] = lv;
    ps.p[m][n] = pv;
    ps.p[n][m] = -pv;
}

inline void set_diagonal(ParameterSet& ps) {
    for (int m = 0; m < 4; ++m) {
        ps.l[m][m] = Scalar(1);
        ps.p[m][m] = Scalar(0);
    }
}

inline void require_nonzero(const Scalar& s, const std::string& what) {
    if (s.is_zero()) throw DegenerateFamilyParameters(what);
}

/// Argument value, or a fresh indeterminate with the given conjugation rule.
inline Scalar arg_or_symbol(const Bindings& args, const std::string& name, ParameterSet& ps, const Scalar& conj_rule) {
    auto it = args.find(name);
    if (it != args.end()) return it->second;
    ps.conjugation[name] = conj_rule;
    return Scalar::var(name);
}

inline void finish(ParameterSet& ps) {
    ps.variables = collect_variables(ps);
    ps.flags.hyp_l02 = classify_branch(ps);
}

}  // namespace detail

/// Tables a, b, c, ℓ = b/a, q = c/a of the four-plane family with λ_μ = t_μ².
struct CdvTables {
    Table a, b, c, l, q;
};

inline CdvTables cdv_tables(const std::array<Scalar, 4>& t) {
    std::array<Scalar, 4> lam;
    for (int k = 0; k < 4; ++k) lam[k] = t[k] * t[k];
    CdvTables out;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            auto [mp, np] = prime_pair({m, n});
            out.a[m][n] = lam[m] * lam[np] + lam[n] * lam[mp];
            out.b[m][n] = lam[m] * lam[mp] + lam[n] * lam[np];
            Scalar d = lam[mp] * lam[mp] - lam[np] * lam[np];
            out.c[m][n] = ((m + n) % 2 == 0) ? d : -d;
            if (!out.a[m][n].is_zero()) {
                out.l[m][n] = out.b[m][n] / out.a[m][n];
                out.q[m][n] = out.c[m][n] / out.a[m][n];
            }
        }
    return out;
}

inline ParameterSet make_family(const std::string& family, const Bindings& args = {}) {
    ParameterSet ps;
    ps.family = family;
    detail::set_diagonal(ps);
    const Scalar one(1), two(2);
    if (family == "classical") {
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) ps.l[m][n] = one;
    } else if (family == "sklyanin_k") {
        Scalar a = detail::arg_or_symbol(args, "a", ps, Scalar::var("a"));
        Scalar b = detail::arg_or_symbol(args, "b", ps, Scalar::var("b"));
        detail::require_nonzero(one - a, "sklyanin_k needs a != 1");
        detail::require_nonzero(one + b, "sklyanin_k needs b != -1");
        detail::require_nonzero(one + a * b, "sklyanin_k needs 1 + ab != 0 to solve for c");
        Scalar c = -(a + b) / (one + a * b);
        detail::require_nonzero(one - c, "sklyanin_k needs c != 1");
        detail::set_pair(ps, 0, 1, (one + a) / (one - a), two * a / (one - a));
        detail::set_pair(ps, 2, 3, (one + a) / (one - a), two / (one - a));
        detail::set_pair(ps, 0, 2, (one - b) / (one + b), two * b / (one + b));
        detail::set_pair(ps, 1, 3, (one - b) / (one + b), -two / (one + b));
        detail::set_pair(ps, 0, 3, (one + c) / (one - c), two * c / (one - c));
        detail::set_pair(ps, 1, 2, (one + c) / (one - c), two / (one - c));
    } else if (family == "sklyanin_C") {
        Scalar al = detail::arg_or_symbol(args, "alpha", ps, Scalar::var("alpha"));
        Scalar be = detail::arg_or_symbol(args, "beta", ps, Scalar::var("beta"));
        Scalar i = Scalar::i();
        detail::require_nonzero(one + al, "sklyanin_C needs alpha != -1");
        detail::require_nonzero(one - be, "sklyanin_C needs beta != 1");
        detail::require_nonzero(one + al * be, "sklyanin_C needs 1 + alpha*beta != 0 to solve for gamma");
        Scalar ga = -(al + be) / (one + al * be);
        detail::require_nonzero(one + ga, "sklyanin_C needs gamma != -1");
        detail::set_pair(ps, 0, 1, (one - al) / (one + al), two * i * al / (one + al));
        detail::set_pair(ps, 2, 3, (one - al) / (one + al), two * i / (one + al));
        detail::set_pair(ps, 0, 2, (one + be) / (one - be), two * i * be / (one - be));
        detail::set_pair(ps, 1, 3, (one + be) / (one - be), -two * i / (one - be));
        detail::set_pair(ps, 0, 3, (one - ga) / (one + ga), two * i * ga / (one + ga));
        detail::set_pair(ps, 1, 2, (one - ga) / (one + ga), two * i / (one + ga));
    } else if (family == "theta") {
        Scalar lam = detail::arg_or_symbol(args, "lam", ps, Scalar::var("lam").inverse());
        detail::require_nonzero(one + lam * lam, "theta needs 1 + lam^2 != 0");
        Scalar l = two * lam / (one + lam * lam);
        Scalar q = (one - lam * lam) / (one + lam * lam);
        detail::set_pair(ps, 0, 1, l, q);
        detail::set_pair(ps, 2, 3, l, -q);
        detail::set_pair(ps, 0, 2, l, -q);
        detail::set_pair(ps, 1, 3, l, q);
        detail::set_pair(ps, 0, 3, one, Scalar(0));
        detail::set_pair(ps, 1, 2, one, Scalar(0));
    } else if (family == "cdv") {
        std::array<Scalar, 4> t;
        for (int k = 0; k < 4; ++k) {
            std::string n = "t" + std::to_string(k);
            t[k] = detail::arg_or_symbol(args, n, ps, Scalar::var(n).inverse());
            detail::require_nonzero(t[k], "cdv needs t" + std::to_string(k) + " != 0");
        }
        CdvTables ct = cdv_tables(t);
        detail::require_nonzero(ct.a[0][1], "cdv needs a01 != 0");
        detail::require_nonzero(ct.a[0][3], "cdv needs a03 != 0");
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
                if (m == n) continue;
                detail::require_nonzero(ct.a[m][n], "cdv needs a" + std::to_string(m) + std::to_string(n) + " != 0");
                auto [mp, np] = prime_pair({m, n});
                ps.l[m][n] = ct.l[m][n];
                ps.p[m][n] = ct.q[m][n] * t[m] * t[n] / (t[mp] * t[np]);
            }
    } else if (family == "zero_l") {
        std::array<Scalar, 3> pv;
        for (int k = 0; k < 3; ++k) {
            std::string n = "p" + std::to_string(k + 1) + "0";
            pv[k] = detail::arg_or_symbol(args, n, ps, -Scalar::var(n));
            detail::require_nonzero(pv[k], "zero_l needs " + n + " != 0");
        }
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n)
                if (m != n) ps.l[m][n] = Scalar(0);
        detail::set_pair(ps, 1, 0, Scalar(0), pv[0]);
        detail::set_pair(ps, 2, 0, Scalar(0), pv[1]);
        detail::set_pair(ps, 3, 0, Scalar(0), pv[2]);
        detail::set_pair(ps, 3, 2, Scalar(0), -pv[0].inverse());
        detail::set_pair(ps, 3, 1, Scalar(0), -pv[1].inverse());
        detail::set_pair(ps, 2, 1, Scalar(0), -pv[2].inverse());
    } else {
        throw SchemaError("unknown family '" + family + "'");
    }
    detail::finish(ps);
    if (ps.flags.hyp_l02 == Branch::minus) {
        for (int j = 1; j < 4; ++j)
            if (!ps.p[0][j].is_zero())
                throw AssumptionViolated("minus branch l02 = -l01 l03 requires p0" + std::to_string(j) + " = 0");
    }
    return ps;
}

inline const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names{"classical", "sklyanin_k", "sklyanin_C", "cdv", "theta", "zero_l"};
    return names;
}

/// The residual of the centrality condition for index ν and coefficients c.
inline Scalar centrality_residual(const ParameterSet& ps, const std::array<Scalar, 4>& c, int nu) {
    const TildeRow& t = kTilde[nu];
    return c[t.mu_nu] * ps.p[t.mu_nu][nu] + c[t.mu_nu_tilde] * ps.p[t.mu_nu_tilde][nu] +
           c[t.nu_tilde] * ps.l[t.mu_nu_tilde][nu] * ps.p[t.nu_tilde][nu];
}

inline std::string vec_str(const std::array<Scalar, 4>& c) {
    std::string s = "(";
    for (int k = 0; k < 4; ++k) s += (k ? ", " : "") + c[k].str();
    return s + ")";
}

inline IdentityReport centrality_condition(const ParameterSet& ps, const std::array<Scalar, 4>& c) {
    IdentityReport r("params.centrality", "c_{mu_nu} p_{mu_nu nu} + c_{mu~_nu} p_{mu~_nu nu} + c_{nu~} l_{mu~_nu nu} p_{nu~ nu} = 0");
    ReportTimer timer(r);
    for (int nu = 0; nu < 4; ++nu) {
        Scalar res = centrality_residual(ps, c, nu);
        if (!res.is_zero()) r.fail_at("nu=" + std::to_string(nu), res.str());
    }
    // The four conditions as linear forms in the six independent p_{st}, s<t.
    std::vector<std::vector<Scalar>> forms(4, std::vector<Scalar>(6));
    auto slot = [](int s, int t) {
        static const int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        return idx[s][t];
    };
    for (int nu = 0; nu < 4; ++nu) {
        const TildeRow& t = kTilde[nu];
        auto add = [&](int s, const Scalar& coeff) {
            Scalar sign = s < nu ? Scalar(1) : Scalar(-1);
            forms[nu][slot(s, nu)] += sign * coeff;
        };
        add(t.mu_nu, c[t.mu_nu]);
        add(t.mu_nu_tilde, c[t.mu_nu_tilde]);
        add(t.nu_tilde, c[t.nu_tilde] * ps.l[t.mu_nu_tilde][nu]);
    }
    Echelon e;
    std::vector<int> independent;
    for (int nu = 0; nu < 4; ++nu)
        if (e.insert(to_sparse(forms[nu]))) independent.push_back(nu);
    r.data["c"] = vec_str(c);
    r.data["rank"] = e.rank();
    r.data["independent"] = independent;
    return r;
}

inline std::array<Scalar, 4> unit_coefficients() { return {Scalar(1), Scalar(1), Scalar(1), Scalar(1)}; }

/// The second central coefficient vector (0, l03(1+l01), 1+l02, 1+l03).
inline std::array<Scalar, 4> second_central_coefficients(const ParameterSet& ps) {
    const Scalar one(1);
    return {Scalar(0), ps.l[0][3] * (one + ps.l[0][1]), one + ps.l[0][2], one + ps.l[0][3]};
}

/// All c solving the centrality condition: exact nullspace of the 4×4 system.
inline std::vector<std::array<Scalar, 4>> central_coefficients(const ParameterSet& ps) {
    std::vector<std::vector<Scalar>> m(4, std::vector<Scalar>(4));
    for (int nu = 0; nu < 4; ++nu) {
        const TildeRow& t = kTilde[nu];
        m[nu][t.mu_nu] += ps.p[t.mu_nu][nu];
        m[nu][t.mu_nu_tilde] += ps.p[t.mu_nu_tilde][nu];
        m[nu][t.nu_tilde] += ps.l[t.mu_nu_tilde][nu] * ps.p[t.nu_tilde][nu];
    }
    std::vector<std::array<Scalar, 4>> out;
    for (auto& v : nullspace(m, 4)) out.push_back({v[0], v[1], v[2], v[3]});
    return out;
}

/// conj(l_mn) = l_mn and conj(p_mn) = p_nm.
inline IdentityReport star_compatibility(ParameterSet& ps) {
    IdentityReport r("params.star", "conj(l_mn) = l_mn and conj(p_mn) = p_nm");
    ReportTimer timer(r);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            Scalar dl = ps.l[m][n].conj(ps.conjugation) - ps.l[m][n];
            if (!dl.is_zero()) r.fail_at("conj " + pair_loc("l", m, n), dl.str());
            Scalar dp = ps.p[m][n].conj(ps.conjugation) - ps.p[n][m];
            if (!dp.is_zero()) r.fail_at("conj " + pair_loc("p", m, n), dp.str());
        }
    ps.flags.star_compatible = r.passed();
    return r;
}

/// Identities among the four-plane tables: a01=a02, b01=a03, b02=b03, the
/// q linear relations and the two residual constraints.
inline IdentityReport cdv_identities(const std::array<Scalar, 4>& t) {
    IdentityReport r("params.cdv_identities", "a01=a02, b01=a03, b02=b03; q relations; l03^2 = 1 + q03 q12");
    ReportTimer timer(r);
    CdvTables ct = cdv_tables(t);
    auto check = [&](const std::string& loc, const Scalar& s) {
        if (!s.is_zero()) r.fail_at(loc, s.str());
    };
    const auto &a = ct.a, &b = ct.b, &c = ct.c, &l = ct.l, &q = ct.q;
    check("a01 - a02", a[0][1] - a[0][2]);
    check("b01 - a03", b[0][1] - a[0][3]);
    check("b02 - b03", b[0][2] - b[0][3]);
    check("c23 - c02 - c12", c[2][3] - c[0][2] - c[1][2]);
    check("c13 - c01 + c12", c[1][3] - c[0][1] + c[1][2]);
    check("c03 + c02 + c01", c[0][3] + c[0][2] + c[0][1]);
    check("l02 - l01 l03", l[0][2] - l[0][1] * l[0][3]);
    check("q23 - q02 - q12 l01", q[2][3] - q[0][2] - q[1][2] * l[0][1]);
    check("q13 - q01 + q12 l01", q[1][3] - q[0][1] + q[1][2] * l[0][1]);
    check("q02 + q01 + q03 l01", q[0][2] + q[0][1] + q[0][3] * l[0][1]);
    check("l03^2 - 1 - q03 q12", l[0][3] * l[0][3] - Scalar(1) - q[0][3] * q[1][2]);
    check("l01^2 + q01^2 + l01 q01 (q03 - q12) - 1",
          l[0][1] * l[0][1] + q[0][1] * q[0][1] + l[0][1] * q[0][1] * (q[0][3] - q[1][2]) - Scalar(1));
    return r;
}

/// Prime-pair involution, the tilde-table identities, the index sets of the
/// centrality computation and the three l constants per ν.
inline IdentityReport index_identities(const ParameterSet& ps) {
    IdentityReport r("params.indices", "(m,n)'' = (m,n); (nu,mu_nu)' = (nu~,mu~_nu) and cyclic; l_{mu_nu nu} = l02, l_{mu_nu mu~_nu} = l01, l_{mu_nu nu~} = l03");
    ReportTimer timer(r);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            if (!(prime_pair(prime_pair({m, n})) == IndexPair{m, n})) r.fail_at("prime twice " + pair_loc("", m, n), "differs");
    for (const auto& t : kTilde) {
        const std::string v = "nu=" + std::to_string(t.nu);
        if (!(prime_pair({t.nu, t.mu_nu}) == IndexPair{t.nu_tilde, t.mu_nu_tilde})) r.fail_at(v + " (nu,mu_nu)'", "differs");
        if (!(prime_pair({t.nu, t.mu_nu_tilde}) == IndexPair{t.nu_tilde, t.mu_nu})) r.fail_at(v + " (nu,mu~_nu)'", "differs");
        if (!(prime_pair({t.nu, t.nu_tilde}) == IndexPair{t.mu_nu, t.mu_nu_tilde})) r.fail_at(v + " (nu,nu~)'", "differs");
        std::set<std::array<int, 3>> lhs, rhs{{t.mu_nu, t.nu_tilde, t.mu_nu_tilde}, {t.mu_nu_tilde, t.nu_tilde, t.mu_nu}, {t.nu_tilde, t.mu_nu, t.mu_nu_tilde}};
        for (int m = 0; m < 4; ++m) {
            if (m == t.nu) continue;
            auto [mp, np] = prime_pair({m, t.nu});
            lhs.insert({m, np, mp});
        }
        if (lhs != rhs) r.fail_at(v + " index set", "differs");
        auto check = [&](const std::string& loc, const Scalar& s) {
            if (!s.is_zero()) r.fail_at(v + " " + loc, s.str());
        };
        check("l_{mu_nu nu} - l02", ps.l[t.mu_nu][t.nu] - ps.l[0][2]);
        check("l_{mu_nu mu~_nu} - l01", ps.l[t.mu_nu][t.mu_nu_tilde] - ps.l[0][1]);
        check("l_{mu_nu nu~} - l03", ps.l[t.mu_nu][t.nu_tilde] - ps.l[0][3]);
    }
    return r;
}

/// Branch of l02 = ±l01 l03; the minus branch forces p01 = p02 = p03 = 0.
inline IdentityReport branch_check(const ParameterSet& ps) {
    IdentityReport r("params.branch", "l02 = l01 l03 (plus) or l02 = -l01 l03 (minus, then p01 = p02 = p03 = 0)");
    ReportTimer timer(r);
    Branch b = classify_branch(ps);
    r.data["hyp_l02"] = branch_name(b);
    if (b == Branch::minus)
        for (int j = 1; j < 4; ++j)
            if (!ps.p[0][j].is_zero()) r.fail_at(pair_loc("p", 0, j), ps.p[0][j].str());
    return r;
}

/// Fill every flag of the parameter set.
inline void refresh_flags(ParameterSet& ps) {
    validate(ps);
    ps.flags.centrality_R = centrality_condition(ps, unit_coefficients()).passed();
    try {
        star_compatibility(ps);
    } catch (const UndeclaredConjugation&) {
        ps.flags.star_compatible = false;
    }
}

}  // namespace qalg

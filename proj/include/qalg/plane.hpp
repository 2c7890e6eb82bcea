#pragma once

// The algebra A_{l,p}: rewrite system, R-matrix, Yang-Baxter defects,
// centrality diagnostics and the sphere quotient.

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qalg/freepoly.hpp"
#include "qalg/linalg.hpp"
#include "qalg/params.hpp"
#include "qalg/report.hpp"
#include "qalg/rewrite.hpp"

namespace qalg {

inline Word word_of(std::initializer_list<int> letters) {
    Word w;
    for (int l : letters) w.push_back(static_cast<Letter>(l));
    return w;
}

/// x_a x_b expressed through the relation: l_ab x_b x_a + p_ab x_b' x_a'.
inline LinComb plane_flip(const ParameterSet& ps, int a, int b, int offset = 0) {
    LinComb out;
    auto [ap, bp] = prime_pair({a, b});
    add_to(out, word_of({b + offset, a + offset}), ps.l[a][b]);
    add_to(out, word_of({bp + offset, ap + offset}), ps.p[a][b]);
    return out;
}

/// Relation x_a x_b - l_ab x_b x_a - p_ab x_b' x_a' (empty when trivially zero).
inline LinComb plane_relation(const ParameterSet& ps, int a, int b, int offset = 0) {
    LinComb r{{word_of({a + offset, b + offset}), Scalar(1)}};
    add_to(r, plane_flip(ps, a, b, offset), Scalar(-1));
    return r;
}

inline RewriteSystem plane_system(const ParameterSet& ps) {
    std::vector<Rule> rules;
    std::vector<LinComb> rels;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            if (m > n) rules.push_back({word_of({m, n}), plane_flip(ps, m, n)});
            LinComb r = plane_relation(ps, m, n);
            if (!r.empty()) rels.push_back(std::move(r));
        }
    for (const auto& rule : rules)
        for (const auto& [w, c] : rule.rhs)
            if (w[0] > w[1]) throw Error("plane rule with a non-normal right side");
    return RewriteSystem(alphabets::plane(), ps, std::move(rules), std::move(rels));
}

/// Applying each rule and then the opposite orientation returns the start word.
inline IdentityReport plane_involutivity(const ParameterSet& ps) {
    IdentityReport r("plane.involutivity", "x_m x_n -> rhs -> x_m x_n with coefficient 1");
    ReportTimer timer(r);
    auto A = alphabets::plane();
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            LinComb twice;
            for (const auto& [w, c] : plane_flip(ps, m, n)) add_to(twice, plane_flip(ps, w[0], w[1]), c);
            add_to(twice, word_of({m, n}), Scalar(-1));
            if (!twice.empty())
                r.fail_at("x" + std::to_string(m) + " x" + std::to_string(n), NCPoly(A, twice).str());
        }
    return r;
}

struct RMatrix {
    std::array<std::array<Scalar, 16>, 16> e{};
    const Scalar& operator()(int mn, int st) const { return e[mn][st]; }
};

inline RMatrix r_matrix(const ParameterSet& ps) {
    RMatrix R;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            auto [mp, np] = prime_pair({m, n});
            R.e[4 * m + n][4 * n + m] += ps.l[m][n];
            R.e[4 * m + n][4 * np + mp] += ps.p[m][n];
        }
    return R;
}

inline IdentityReport r_squared_check(const ParameterSet& ps) {
    IdentityReport r("plane.r_squared", "R^2 = identity");
    ReportTimer timer(r);
    RMatrix R = r_matrix(ps);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            Scalar s;
            for (int k = 0; k < 16; ++k)
                if (!R.e[i][k].is_zero() && !R.e[k][j].is_zero()) s += R.e[i][k] * R.e[k][j];
            if (i == j) s -= Scalar(1);
            if (!s.is_zero()) r.fail_at("(" + std::to_string(i) + "," + std::to_string(j) + ")", s.str());
        }
    return r;
}

using SparseMatrix = std::vector<SparseRow>;

inline SparseMatrix sparse_mul(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (const auto& [k, x] : a[i]) axpy(out[i], x, b[k]);
    return out;
}

inline SparseMatrix sparse_sub(SparseMatrix a, const SparseMatrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i) axpy(a[i], Scalar(-1), b[i]);
    return a;
}

/// R acting on the factor pair (f1, f2) of the triple tensor space, index 16a+4b+c.
inline SparseMatrix r_on_factors(const RMatrix& R, int f1, int f2) {
    SparseMatrix M(64);
    for (int i = 0; i < 64; ++i) {
        int idx[3] = {i / 16, (i / 4) % 4, i % 4};
        int other = 3 - f1 - f2;
        for (int st = 0; st < 16; ++st) {
            const Scalar& x = R.e[4 * idx[f1] + idx[f2]][st];
            if (x.is_zero()) continue;
            int out[3];
            out[f1] = st / 4;
            out[f2] = st % 4;
            out[other] = idx[other];
            M[i][16 * out[0] + 4 * out[1] + out[2]] = x;
        }
    }
    return M;
}

struct YbeDefect {
    SparseMatrix quantum;  // R12 R13 R23 - R23 R13 R12
    SparseMatrix braid;    // R12 R23 R12 - R23 R12 R23
    bool quantum_zero = false;
    bool braid_zero = false;
    std::size_t quantum_nonzero = 0;
    std::size_t braid_nonzero = 0;
};

inline YbeDefect ybe_defect(const ParameterSet& ps) {
    RMatrix R = r_matrix(ps);
    SparseMatrix r12 = r_on_factors(R, 0, 1), r13 = r_on_factors(R, 0, 2), r23 = r_on_factors(R, 1, 2);
    YbeDefect d;
    d.quantum = sparse_sub(sparse_mul(sparse_mul(r12, r13), r23), sparse_mul(sparse_mul(r23, r13), r12));
    d.braid = sparse_sub(sparse_mul(sparse_mul(r12, r23), r12), sparse_mul(sparse_mul(r23, r12), r23));
    for (const auto& row : d.quantum) d.quantum_nonzero += row.size();
    for (const auto& row : d.braid) d.braid_nonzero += row.size();
    d.quantum_zero = d.quantum_nonzero == 0;
    d.braid_zero = d.braid_nonzero == 0;
    return d;
}

inline IdentityReport ybe_report(const ParameterSet& ps) {
    IdentityReport r("plane.ybe", "R12 R13 R23 - R23 R13 R12 (and braid form R12 R23 R12 - R23 R12 R23)");
    ReportTimer timer(r);
    YbeDefect d = ybe_defect(ps);
    r.status = Status::reported;
    r.data["quantum_zero"] = d.quantum_zero;
    r.data["quantum_nonzero_entries"] = d.quantum_nonzero;
    r.data["braid_zero"] = d.braid_zero;
    r.data["braid_nonzero_entries"] = d.braid_nonzero;
    std::size_t shown = 0;
    for (std::size_t i = 0; i < d.quantum.size() && shown < 8; ++i)
        for (const auto& [j, x] : d.quantum[i]) {
            if (shown++ == 8) break;
            r.note("quantum(" + std::to_string(i) + "," + std::to_string(j) + ")", x.str());
        }
    return r;
}

inline NCPoly commutator_with(const NCPoly& f, const NCPoly& g, const RewriteSystem& rs) {
    return reduce(f * g - g * f, rs);
}

/// Σ c_μ x_μ².
inline NCPoly quadratic_element(const std::array<Scalar, 4>& c) {
    NCPoly f(alphabets::plane());
    for (int m = 0; m < 4; ++m) f += NCPoly::monomial(alphabets::plane(), word_of({m, m}), c[m]);
    return f;
}

inline IdentityReport central_element_check(const RewriteSystem& rs, const std::array<Scalar, 4>& c,
                                            const std::string& id = "plane.center.commutators") {
    IdentityReport r(id, "[sum_mu c_mu x_mu^2, x_nu] = 0 for every nu");
    ReportTimer timer(r);
    NCPoly q = quadratic_element(c);
    for (int nu = 0; nu < 4; ++nu) {
        NCPoly res = commutator_with(q, NCPoly::gen(alphabets::plane(), "x" + std::to_string(nu)), rs);
        if (!res.is_zero()) r.fail_at("nu=" + std::to_string(nu), res.str());
    }
    r.data["c"] = vec_str(c);
    return r;
}

inline IdentityReport lemma_xx_check(const RewriteSystem& rs) {
    IdentityReport r("plane.lemma_xx", "x_m x_m' x_n' + x_n' x_m' x_m = l_mn (x_m x_n' x_m' + x_m' x_n' x_m)");
    ReportTimer timer(r);
    const auto& ps = rs.params();
    auto A = rs.alphabet();
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            auto [mp, np] = prime_pair({m, n});
            LinComb f;
            add_to(f, word_of({m, mp, np}), Scalar(1));
            add_to(f, word_of({np, mp, m}), Scalar(1));
            add_to(f, word_of({m, np, mp}), -ps.l[m][n]);
            add_to(f, word_of({mp, np, m}), -ps.l[m][n]);
            NCPoly res = reduce(NCPoly(A, f), rs);
            if (!res.is_zero()) r.fail_at("(" + std::to_string(m) + "," + std::to_string(n) + ")", res.str());
        }
    return r;
}

/// A_{l,p} modulo Σ x_μ² - 1, normal words avoiding x3 x3.
class SphereAlgebra {
public:
    explicit SphereAlgebra(const RewriteSystem& base) : base_(base) {
        if (!centrality_condition(base.params(), unit_coefficients()).passed())
            throw CentralityNotSatisfied("sum of squares is not central for these parameters");
        const Word x33 = word_of({3, 3});
        LinComb radius{{Word{}, Scalar(1)}};
        for (int m = 0; m < 3; ++m) add_to(radius, word_of({m, m}), Scalar(-1));
        RewriteSystem plane = base_;
        engine_ = std::make_shared<NormalFormEngine>([plane, x33, radius](const Word& w) -> std::optional<LinComb> {
            if (auto s = plane.step(w)) return s;
            auto pos = w.find(x33);
            if (pos == Word::npos) return std::nullopt;
            return RewriteSystem::splice(w, pos, 2, radius);
        });
    }

    const RewriteSystem& base() const { return base_; }
    NormalFormEngine& engine() const { return *engine_; }

private:
    RewriteSystem base_;
    std::shared_ptr<NormalFormEngine> engine_;
};

inline NCPoly sphere_reduce(const NCPoly& f, const SphereAlgebra& s) {
    if (f.alphabet() != s.base().alphabet()) throw AlphabetMismatch();
    return NCPoly(f.alphabet(), s.engine().reduce(f.terms()));
}

}  // namespace qalg

#pragma once

// The matrix bialgebra M_{l,p} on generators M_{μα}, its coproduct, counit,
// *-structure and coaction on A_{l,p} and on the forms.

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qalg/dga.hpp"
#include "qalg/errors.hpp"
#include "qalg/linalg.hpp"
#include "qalg/params.hpp"
#include "qalg/plane.hpp"
#include "qalg/report.hpp"
#include "qalg/rewrite.hpp"

namespace qalg {

namespace bialg {

inline Letter gen(int row, int col) { return static_cast<Letter>(4 * row + col); }
inline int row_of(Letter g) { return g / 4; }
inline int col_of(Letter g) { return g % 4; }

inline std::string gen_str(int row, int col) { return "M" + std::to_string(row) + std::to_string(col); }

inline Word pair(int m, int a, int n, int b) { return Word{gen(m, a), gen(n, b)}; }

/// Right side of M_{μα} M_{νβ} under the defining relation.
inline LinComb flip(const ParameterSet& ps, int m, int a, int n, int b) {
    auto [mp, np] = prime_pair({m, n});
    auto [ap, bp] = prime_pair({a, b});
    LinComb out;
    add_to(out, pair(n, b, m, a), ps.l[m][n] * ps.l[b][a]);
    add_to(out, pair(np, b, mp, a), ps.p[m][n] * ps.l[b][a]);
    add_to(out, pair(n, bp, m, ap), ps.l[m][n] * ps.p[bp][ap]);
    add_to(out, pair(np, bp, mp, ap), ps.p[m][n] * ps.p[bp][ap]);
    return out;
}

inline LinComb flip(const ParameterSet& ps, const Word& w) {
    return flip(ps, row_of(w[0]), col_of(w[0]), row_of(w[1]), col_of(w[1]));
}

/// M_{μα} M_{νβ} - flip.
inline LinComb comm_relation(const ParameterSet& ps, int m, int a, int n, int b) {
    LinComb r{{pair(m, a, n, b), Scalar(1)}};
    add_to(r, flip(ps, m, a, n, b), Scalar(-1));
    return r;
}

/// l_αβ M_{μα} M_{νβ} + p_α'β' M_{μα'} M_{νβ'} - l_μν M_{νβ} M_{μα} - p_μν M_{ν'β} M_{μ'α}.
inline LinComb rel_a(const ParameterSet& ps, int m, int a, int n, int b) {
    auto [mp, np] = prime_pair({m, n});
    auto [ap, bp] = prime_pair({a, b});
    LinComb r;
    add_to(r, pair(m, a, n, b), ps.l[a][b]);
    add_to(r, pair(m, ap, n, bp), ps.p[ap][bp]);
    add_to(r, pair(n, b, m, a), -ps.l[m][n]);
    add_to(r, pair(np, b, mp, a), -ps.p[m][n]);
    return r;
}

inline SparseRow row16(const LinComb& f) {
    SparseRow r;
    for (const auto& [w, c] : f) r.emplace(16 * w[0] + w[1], c);
    return r;
}

template <class F>
void for_each_index(F&& f) {
    for (int m = 0; m < 4; ++m)
        for (int a = 0; a < 4; ++a)
            for (int n = 0; n < 4; ++n)
                for (int b = 0; b < 4; ++b) f(m, a, n, b);
}

/// Δ applied to the single generator in leg k of each word; later legs shift up by one.
inline LinComb coproduct_at(const LinComb& f, int k) {
    LinComb out;
    for (const auto& [w, c] : f) {
        Letter g = static_cast<Letter>(w[k] - 16 * k);
        for (int a = 0; a < 4; ++a) {
            Word t = w.substr(0, k);
            t.push_back(static_cast<Letter>(16 * k + 4 * row_of(g) + a));
            t.push_back(static_cast<Letter>(16 * (k + 1) + 4 * a + col_of(g)));
            for (std::size_t j = k + 1; j < w.size(); ++j) t.push_back(static_cast<Letter>(w[j] + 16));
            add_to(out, t, c);
        }
    }
    return out;
}

/// ε applied to the single generator in leg k of each word; later legs shift down by one.
inline LinComb counit_at(const LinComb& f, int k) {
    LinComb out;
    for (const auto& [w, c] : f) {
        Letter g = static_cast<Letter>(w[k] - 16 * k);
        if (row_of(g) != col_of(g)) continue;
        Word t = w.substr(0, k);
        for (std::size_t j = k + 1; j < w.size(); ++j) t.push_back(static_cast<Letter>(w[j] - 16));
        add_to(out, t, c);
    }
    return out;
}

}  // namespace bialg

class MatrixBialgebra {
public:
    explicit MatrixBialgebra(ParameterSet ps) : ps_(std::move(ps)), rs_(build(ps_)) {}

    const ParameterSet& params() const { return ps_; }
    const RewriteSystem& system() const { return rs_; }
    const AlphabetPtr& alphabet() const { return rs_.alphabet(); }
    NormalFormEngine& engine() const { return rs_.engine(); }

private:
    static RewriteSystem build(const ParameterSet& ps) {
        std::vector<Rule> rules;
        std::vector<LinComb> rels;
        bialg::for_each_index([&](int m, int a, int n, int b) {
            Letter x = bialg::gen(m, a), y = bialg::gen(n, b);
            if (x > y) rules.push_back({Word{x, y}, bialg::flip(ps, m, a, n, b)});
            LinComb r = bialg::comm_relation(ps, m, a, n, b);
            if (!r.empty()) rels.push_back(std::move(r));
        });
        for (const auto& rule : rules)
            for (const auto& [w, c] : rule.rhs)
                if (w[0] > w[1]) throw Error("matrix rule with a non-normal right side");
        return RewriteSystem(alphabets::matrix_alg(), ps, std::move(rules), std::move(rels));
    }

    ParameterSet ps_;
    RewriteSystem rs_;
};

inline NCPoly m_reduce(const NCPoly& f, const MatrixBialgebra& mb) {
    if (f.alphabet() != mb.alphabet()) throw AlphabetMismatch();
    return NCPoly(mb.alphabet(), mb.engine().reduce(f.terms()));
}

/// Reduce each tensor leg of a two-leg word independently. Letters below `split` form the left leg.
inline LinComb reduce_legs(const LinComb& f, Letter split, const std::function<LinComb(const Word&)>& left,
                           const std::function<LinComb(const Word&)>& right) {
    LinComb out;
    for (const auto& [w, c] : f) {
        std::size_t k = 0;
        while (k < w.size() && w[k] < split) ++k;
        Word r = w.substr(k);
        for (auto& l : r) l = static_cast<Letter>(l - split);
        LinComb lr = left(w.substr(0, k)), rr = right(r);
        for (const auto& [u, x] : lr)
            for (const auto& [v, y] : rr) {
                Word t = u;
                for (Letter l : v) t.push_back(static_cast<Letter>(l + split));
                add_to(out, t, c * x * y);
            }
    }
    return out;
}

/// Applying the defining relation twice returns the starting monomial.
inline IdentityReport involutivity_audit(const MatrixBialgebra& mb) {
    IdentityReport r("bialg.involutivity", "applying the relation twice returns M_{mu a} M_{nu b} with coefficient 1");
    ReportTimer timer(r);
    const auto& ps = mb.params();
    bialg::for_each_index([&](int m, int a, int n, int b) {
        LinComb twice;
        for (const auto& [w, c] : bialg::flip(ps, m, a, n, b)) add_to(twice, bialg::flip(ps, w), c);
        add_to(twice, bialg::pair(m, a, n, b), Scalar(-1));
        if (!twice.empty()) r.fail_at(bialg::gen_str(m, a) + " " + bialg::gen_str(n, b), NCPoly(mb.alphabet(), twice).str());
    });
    return r;
}

/// Span of the defining relations equals the span of the relations l M M + p M M = l M M + p M M.
inline IdentityReport relA_equivalence(const MatrixBialgebra& mb) {
    IdentityReport r("bialg.relA", "the commutation relations and the relations l_ab M M + p_a'b' M M = l_mn M M + p_mn M M span the same space");
    ReportTimer timer(r);
    const auto& ps = mb.params();
    std::vector<SparseRow> comm, rel;
    bialg::for_each_index([&](int m, int a, int n, int b) {
        if (auto c = bialg::row16(bialg::comm_relation(ps, m, a, n, b)); !c.empty()) comm.push_back(std::move(c));
        if (auto c = bialg::row16(bialg::rel_a(ps, m, a, n, b)); !c.empty()) rel.push_back(std::move(c));
    });
    Echelon ec = echelon_of(comm), er = echelon_of(rel);
    std::size_t miss_c = 0, miss_r = 0;
    for (const auto& row : rel) miss_r += ec.contains(row) ? 0 : 1;
    for (const auto& row : comm) miss_c += er.contains(row) ? 0 : 1;
    if (miss_r) r.fail_at("rel-A outside commutation span", std::to_string(miss_r));
    if (miss_c) r.fail_at("commutation relations outside rel-A span", std::to_string(miss_c));
    r.data["rank_commutation"] = ec.rank();
    r.data["rank_relA"] = er.rank();
    return r;
}

/// Counit and coproduct preserve the relations; coassociativity and counit laws on generators.
inline IdentityReport coalgebra_audit(const MatrixBialgebra& mb, bool delta = true) {
    IdentityReport r("bialg.coalgebra", "epsilon and Delta respect the commutation relations; (Delta x id) Delta = (id x Delta) Delta; counit laws");
    ReportTimer timer(r);
    const auto& ps = mb.params();
    auto delta_of = [](int x, int y) { return x == y ? Scalar(1) : Scalar(); };
    // ε.
    bialg::for_each_index([&](int m, int a, int n, int b) {
        Scalar s;
        for (const auto& [w, c] : bialg::comm_relation(ps, m, a, n, b))
            s += c * delta_of(bialg::row_of(w[0]), bialg::col_of(w[0])) * delta_of(bialg::row_of(w[1]), bialg::col_of(w[1]));
        if (!s.is_zero()) r.fail_at("epsilon " + bialg::gen_str(m, a) + " " + bialg::gen_str(n, b), s.str());
    });
    // Δ over M ⊗ M, letters 16.. carry the right leg.
    if (delta) {
        auto A = alphabets::matrix_square();
        auto& eng = mb.engine();
        auto leg = [&eng](const Word& w) { return eng.normal_form(w); };
        bialg::for_each_index([&](int m, int a, int n, int b) {
            LinComb rel = bialg::comm_relation(ps, m, a, n, b);
            if (rel.empty()) return;
            LinComb img;
            for (const auto& [w, c] : rel) {
                int r0 = bialg::row_of(w[0]), c0 = bialg::col_of(w[0]), r1 = bialg::row_of(w[1]), c1 = bialg::col_of(w[1]);
                for (int g = 0; g < 4; ++g)
                    for (int t = 0; t < 4; ++t)
                        add_to(img, Word{bialg::gen(r0, g), bialg::gen(r1, t), static_cast<Letter>(16 + 4 * g + c0),
                                         static_cast<Letter>(16 + 4 * t + c1)},
                               c);
            }
            LinComb red = reduce_legs(img, 16, leg, leg);
            if (!red.empty()) r.fail_at("Delta " + bialg::gen_str(m, a) + " " + bialg::gen_str(n, b), NCPoly(A, red).str());
        });
    } else {
        r.data["delta"] = "skipped";
    }
    // Coassociativity and counit on generators; leg k of a multi-leg word uses letters 16k..16k+15.
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            LinComb one{{Word{bialg::gen(m, n)}, Scalar(1)}};
            LinComb d = bialg::coproduct_at(one, 0);
            LinComb lhs = bialg::coproduct_at(d, 0), rhs = bialg::coproduct_at(d, 1);
            if (lhs != rhs) r.fail_at("coassociativity " + bialg::gen_str(m, n), "mismatch");
            if (bialg::counit_at(d, 0) != one) r.fail_at("(epsilon x id) Delta " + bialg::gen_str(m, n), "mismatch");
            if (bialg::counit_at(d, 1) != one) r.fail_at("(id x epsilon) Delta " + bialg::gen_str(m, n), "mismatch");
        }
    return r;
}

/// δ on words over an alphabet whose letters are x (sort coordinate) and dx (sort form):
/// each letter l of index k becomes Σ_ν M_{kν} ⊗ l_ν.
inline LinComb coaction_image(const LinComb& f, const AlphabetPtr& source) {
    LinComb out;
    for (const auto& [w, c] : f) {
        std::vector<std::pair<Word, Word>> acc{{Word{}, Word{}}};
        for (Letter l : w) {
            int base = (*source)[l].sort == Sort::form ? 4 : 0;
            int mu = l - base;
            std::vector<std::pair<Word, Word>> next;
            for (const auto& [mw, aw] : acc)
                for (int nu = 0; nu < 4; ++nu)
                    next.push_back({mw + Word(1, bialg::gen(mu, nu)), aw + Word(1, static_cast<Letter>(16 + base + nu))});
            acc = std::move(next);
        }
        for (const auto& [mw, aw] : acc) add_to(out, mw + aw, c);
    }
    return out;
}

/// δ preserves the relations of A and of the forms; the conditions read off from δ span the commutation relations.
inline IdentityReport coaction_audit(const MatrixBialgebra& mb, const FormSystem& fs) {
    IdentityReport r("bialg.coaction", "delta(x_m) = sum M_mn x x_n preserves the relations of A and of the forms; the conditions are exactly the commutation relations");
    ReportTimer timer(r);
    auto A = alphabets::coaction_form();
    auto src = alphabets::form();
    auto& eng = mb.engine();
    auto mleg = [&eng](const Word& w) { return eng.normal_form(w); };
    auto fleg = [&fs](const Word& w) { return fs.reduce(LinComb{{w, Scalar(1)}}); };
    auto free_leg = [](const Word& w) { return LinComb{{w, Scalar(1)}}; };
    std::vector<SparseRow> from_plane, from_forms;
    for (const auto& rel : fs.relations()) {
        LinComb img = coaction_image(rel, src);
        LinComb red = reduce_legs(img, 16, mleg, fleg);
        int fd = src->form_degree(rel.begin()->first);
        if (!red.empty()) r.fail_at("delta(" + NCPoly(src, rel).str() + ")", NCPoly(A, red).str());
        if (fd == 1) continue;
        // Conditions: M-coefficients of each normal word of the A or form leg, M leg kept free.
        LinComb cond = reduce_legs(img, 16, free_leg, fleg);
        std::map<Word, LinComb, WordLess> groups;
        for (const auto& [w, c] : cond) add_to(groups[w.substr(2)], w.substr(0, 2), c);
        for (const auto& [aw, mpart] : groups)
            if (auto row = bialg::row16(mpart); !row.empty()) (fd == 0 ? from_plane : from_forms).push_back(std::move(row));
    }
    std::vector<SparseRow> comm;
    bialg::for_each_index([&](int m, int a, int n, int b) {
        if (auto c = bialg::row16(bialg::comm_relation(mb.params(), m, a, n, b)); !c.empty()) comm.push_back(std::move(c));
    });
    Echelon ec = echelon_of(comm);
    std::vector<SparseRow> all = from_plane;
    all.insert(all.end(), from_forms.begin(), from_forms.end());
    Echelon ep = echelon_of(from_plane), ef = echelon_of(from_forms), ea = echelon_of(all);
    std::size_t outside = 0, missing = 0;
    for (const auto& row : all) outside += ec.contains(row) ? 0 : 1;
    for (const auto& row : comm) missing += ea.contains(row) ? 0 : 1;
    if (outside) r.fail_at("conditions outside the commutation span", std::to_string(outside));
    if (missing) r.fail_at("commutation relations not forced by the conditions", std::to_string(missing));
    r.data["rank_plane_conditions"] = ep.rank();
    r.data["rank_form_conditions"] = ef.rank();
    r.data["rank_conditions"] = ea.rank();
    r.data["rank_commutation"] = ec.rank();
    return r;
}

/// δ(Σ x_μ x_μ) = 1 ⊗ Σ x_μ x_μ after the formal substitution Σ_μ M_{μα} M_{μβ} -> δ_αβ.
inline IdentityReport sphere_coaction_check() {
    IdentityReport r("bialg.sphere_coaction", "delta(sum x_m x_m) = 1 x sum x_m x_m once sum_m M_ma M_mb = delta_ab");
    ReportTimer timer(r);
    LinComb q;
    for (int m = 0; m < 4; ++m) add_to(q, word_of({m, m}), Scalar(1));
    LinComb img = coaction_image(q, alphabets::plane());
    std::map<Word, LinComb, WordLess> groups;
    for (const auto& [w, c] : img) add_to(groups[w.substr(2)], w.substr(0, 2), c);
    LinComb out;
    for (const auto& [aw, mpart] : groups) {
        int a = aw[0] - 16, b = aw[1] - 16;
        LinComb expect;
        for (int m = 0; m < 4; ++m) add_to(expect, bialg::pair(m, a, m, b), Scalar(1));
        if (mpart != expect) {
            r.fail_at("M coefficient of x" + std::to_string(a) + " x" + std::to_string(b), NCPoly(alphabets::matrix_alg(), mpart).str());
            continue;
        }
        if (a == b) add_to(out, word_of({a, b}), Scalar(1));
    }
    LinComb diff = out;
    add_to(diff, q, Scalar(-1));
    if (!diff.empty()) r.fail_at("after substitution", NCPoly(alphabets::plane(), diff).str());
    return r;
}

/// Column col generates a copy of A: the relations among M_{μ col} are the relations of A.
inline IdentityReport column_iso_audit(const MatrixBialgebra& mb, int col) {
    IdentityReport r("bialg.column." + std::to_string(col), "M_{mu a} -> x_mu is an isomorphism from column a onto A in degree 2");
    ReportTimer timer(r);
    std::map<Word, std::size_t, WordLess> index;
    std::vector<LinComb> images(16);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            images[4 * m + n] = mb.engine().normal_form(bialg::pair(m, col, n, col));
            for (const auto& [w, c] : images[4 * m + n]) index.emplace(w, index.size());
        }
    std::vector<std::vector<Scalar>> mat(index.size(), std::vector<Scalar>(16));
    for (std::size_t j = 0; j < 16; ++j)
        for (const auto& [w, c] : images[j]) mat[index.at(w)][j] = c;
    std::vector<SparseRow> kernel, plane;
    for (auto& v : nullspace(mat, 16)) kernel.push_back(to_sparse(v));
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            SparseRow row;
            for (const auto& [w, c] : plane_relation(mb.params(), m, n)) row.emplace(4 * w[0] + w[1], c);
            if (!row.empty()) plane.push_back(std::move(row));
        }
    if (!same_span(kernel, plane)) r.fail_at("kernel vs relations of A", std::to_string(kernel.size()) + " kernel vectors");
    r.data["column"] = col;
    r.data["relations"] = kernel.size();
    return r;
}

/// * fixes generators, reverses words and conjugates coefficients; it maps relations to relations.
inline IdentityReport star_audit(const MatrixBialgebra& mb) {
    ParameterSet ps = mb.params();
    if (!star_compatibility(ps).passed()) throw StarNotCompatible("parameters are not star compatible");
    IdentityReport r("bialg.star", "* (M_mn)* = M_mn extended as an anti-algebra map preserves the relations; Delta and epsilon are *-maps");
    ReportTimer timer(r);
    std::vector<SparseRow> comm, starred;
    bialg::for_each_index([&](int m, int a, int n, int b) {
        LinComb rel = bialg::comm_relation(ps, m, a, n, b);
        if (rel.empty()) return;
        comm.push_back(bialg::row16(rel));
        LinComb s;
        for (const auto& [w, c] : rel) add_to(s, Word{w[1], w[0]}, c.conj(ps.conjugation));
        starred.push_back(bialg::row16(s));
    });
    Echelon ec = echelon_of(comm);
    std::size_t k = 0;
    bialg::for_each_index([&](int m, int a, int n, int b) {
        if (bialg::comm_relation(ps, m, a, n, b).empty()) return;
        const auto& row = starred[k++];
        if (!ec.contains(row)) r.fail_at("*(" + bialg::gen_str(m, a) + " " + bialg::gen_str(n, b) + ")", "outside the relation span");
    });
    // Δ(M*) = Σ M_ma ⊗ M_an = (* ⊗ *)Δ(M) since generators are fixed and coefficients are 1; ε(M_mn) = δ_mn is real.
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            Scalar e = m == n ? Scalar(1) : Scalar();
            if (!(e.conj(ps.conjugation) - e).is_zero()) r.fail_at("epsilon " + bialg::gen_str(m, n), "not real");
        }
    return r;
}

/// Commutators of the diagonal entries of M^t M and M M^t with every generator.
inline IdentityReport orthogonality_residual(const MatrixBialgebra& mb) {
    if (!centrality_condition(mb.params(), unit_coefficients()).passed())
        throw CentralityNotSatisfied("sum of squares is not central for these parameters");
    IdentityReport r("bialg.orthogonality", "[(M^t M)_aa, M_nb] and [(M M^t)_mm, M_nb] after reduction");
    ReportTimer timer(r);
    r.status = Status::reported;
    auto A = mb.alphabet();
    auto& eng = mb.engine();
    nlohmann::ordered_json table;
    for (int kind = 0; kind < 2; ++kind) {
        nlohmann::ordered_json family;
        for (int d = 0; d < 4; ++d) {
            LinComb diag;
            for (int k = 0; k < 4; ++k) {
                Letter g = kind == 0 ? bialg::gen(k, d) : bialg::gen(d, k);
                add_to(diag, Word{g, g}, Scalar(1));
            }
            std::size_t nonzero = 0;
            for (int n = 0; n < 4; ++n)
                for (int b = 0; b < 4; ++b) {
                    Letter g = bialg::gen(n, b);
                    LinComb comm;
                    for (const auto& [w, c] : diag) {
                        add_to(comm, w + Word(1, g), c);
                        add_to(comm, Word(1, g) + w, -c);
                    }
                    LinComb red = eng.reduce(comm);
                    if (red.empty()) continue;
                    ++nonzero;
                    r.note(std::string(kind == 0 ? "MtM_" : "MMt_") + std::to_string(d) + std::to_string(d) + " , " +
                               bialg::gen_str(n, b),
                           NCPoly(A, red).str());
                }
            family[std::to_string(d)] = nonzero;
        }
        table[kind == 0 ? "MtM_nonzero" : "MMt_nonzero"] = std::move(family);
    }
    r.data = std::move(table);
    return r;
}

/// Degree-2 flatness: normal monomials and elimination dimension.
inline IdentityReport matrix_degree2(const MatrixBialgebra& mb) {
    IdentityReport r = confluence_probe(mb.system(), 2);
    r.check_id = "bialg.degree2";
    if (r.data["normal_monomials"] != 136) r.fail_at("normal monomials", r.data["normal_monomials"].dump());
    if (r.data["dimension"] != 136) r.fail_at("dimension", r.data["dimension"].dump());
    return r;
}

}  // namespace qalg

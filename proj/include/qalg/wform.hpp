#pragma once

// The multilinear form W_{αβρσ} = L_{αβρσ} ε_{αβρσ} + P_{αβ} δ_{αρ} δ_{βσ} ε_{αβα'β'}
// and the volume form Σ W dx dx dx dx.

#include <array>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qalg/dga.hpp"
#include "qalg/errors.hpp"
#include "qalg/linalg.hpp"
#include "qalg/params.hpp"
#include "qalg/report.hpp"

namespace qalg {

using Index4 = std::array<int, 4>;

/// Sign of the permutation (a,b,c,d) of (0,1,2,3), or 0 with a repeated index.
inline int epsilon(const Index4& t) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (t[i] == t[j]) return 0;
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) inv += t[i] > t[j] ? 1 : 0;
    return inv % 2 ? -1 : 1;
}

inline std::string index_str(const Index4& t) {
    std::string s;
    for (int i : t) s += std::to_string(i);
    return s;
}

/// (α, β, β', α') for α ≠ β.
inline Index4 swap_tail(int a, int b) {
    auto [ap, bp] = prime_pair({a, b});
    return {a, b, bp, ap};
}

/// (α, β, α', β') for α ≠ β.
inline Index4 straight_tail(int a, int b) {
    auto [ap, bp] = prime_pair({a, b});
    return {a, b, ap, bp};
}

struct WTensor {
    std::map<Index4, Scalar> L;  // the 24 distinct-index tuples
    Table P{};                   // antisymmetric

    Scalar W(const Index4& t) const {
        Scalar w;
        if (int e = epsilon(t)) {
            auto it = L.find(t);
            if (it != L.end()) w += e > 0 ? it->second : -it->second;
        }
        if (t[0] == t[2] && t[1] == t[3] && t[0] != t[1]) {
            auto [ap, bp] = prime_pair({t[0], t[1]});
            int e = epsilon({t[0], t[1], ap, bp});
            if (!P[t[0]][t[1]].is_zero()) w += e > 0 ? P[t[0]][t[1]] : -P[t[0]][t[1]];
        }
        return w;
    }
};

/// L from L_0132 = 1 through the cyclic, pair-swap and l-relations; P from p and L.
inline WTensor build_w(const ParameterSet& ps) {
    if (ps.l[0][1].is_zero() || ps.l[0][2].is_zero()) throw AssumptionViolated("W needs l01, l02 nonzero");
    struct Edge {
        Index4 to;
        Scalar factor;  // L[to] = factor * L[from]
    };
    std::map<Index4, std::vector<Edge>> edges;
    auto link = [&](const Index4& a, const Index4& b, const Scalar& f) {
        edges[a].push_back({b, f});
        if (!f.is_zero()) edges[b].push_back({a, f.inverse()});
    };
    std::vector<Index4> tuples;
    Index4 t{0, 1, 2, 3};
    do {
        tuples.push_back(t);
    } while (std::next_permutation(t.begin(), t.end()));
    for (const auto& x : tuples) {
        link(x, {x[3], x[0], x[1], x[2]}, Scalar(1));
        link(x, {x[1], x[0], x[3], x[2]}, Scalar(1));
    }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            auto [ap, bp] = prime_pair({a, b});
            link(swap_tail(a, b), straight_tail(a, b), ps.l[bp][ap]);
        }
    WTensor w;
    std::deque<Index4> queue{{0, 1, 3, 2}};
    w.L[{0, 1, 3, 2}] = Scalar(1);
    while (!queue.empty()) {
        Index4 x = queue.front();
        queue.pop_front();
        for (const auto& e : edges[x]) {
            Scalar v = e.factor * w.L.at(x);
            auto it = w.L.find(e.to);
            if (it == w.L.end()) {
                w.L.emplace(e.to, v);
                queue.push_back(e.to);
            } else if (!(it->second - v).is_zero()) {
                throw OrbitInconsistency("L" + index_str(e.to) + " reached as " + it->second.str() + " and " + v.str());
            }
        }
    }
    if (w.L.size() != 24) throw OrbitInconsistency("L orbit does not cover all 24 tuples");
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            auto [ap, bp] = prime_pair({a, b});
            w.P[a][b] = ps.p[bp][ap] * w.L.at(swap_tail(a, b));
        }
    return w;
}

/// The closed-form tables: three L orbits {1, l01, l02} and P in terms of p.
inline IdentityReport w_tables_check(const WTensor& w, const ParameterSet& ps) {
    IdentityReport r("wform.tables", "L orbits 1, l01, l02 and P01=p32, P02=p31, P03=l01 p21, P13=p20, P23=p10, P12=l01 p30");
    ReportTimer timer(r);
    const std::array<std::pair<Index4, Scalar>, 3> reps{{{{0, 1, 3, 2}, Scalar(1)}, {{0, 1, 2, 3}, ps.l[0][1]}, {{0, 3, 1, 2}, ps.l[0][2]}}};
    for (const auto& [rep, val] : reps) {
        std::vector<Index4> orbit{rep};
        for (std::size_t i = 0; i < orbit.size(); ++i) {
            const Index4 x = orbit[i];
            for (Index4 y : {Index4{x[3], x[0], x[1], x[2]}, Index4{x[1], x[0], x[3], x[2]}})
                if (std::find(orbit.begin(), orbit.end(), y) == orbit.end()) orbit.push_back(y);
        }
        for (const auto& x : orbit) {
            Scalar d = w.L.at(x) - val;
            if (!d.is_zero()) r.fail_at("L" + index_str(x), d.str());
        }
    }
    const Scalar& l01 = ps.l[0][1];
    const std::array<std::tuple<int, int, Scalar>, 6> ptab{{{0, 1, ps.p[3][2]}, {0, 2, ps.p[3][1]}, {0, 3, l01 * ps.p[2][1]},
                                                            {1, 3, ps.p[2][0]}, {2, 3, ps.p[1][0]}, {1, 2, l01 * ps.p[3][0]}}};
    for (const auto& [a, b, v] : ptab) {
        Scalar d = w.P[a][b] - v;
        if (!d.is_zero()) r.fail_at("P" + std::to_string(a) + std::to_string(b), d.str());
        Scalar s = w.P[a][b] + w.P[b][a];
        if (!s.is_zero()) r.fail_at("P" + std::to_string(a) + std::to_string(b) + " + P" + std::to_string(b) + std::to_string(a), s.str());
    }
    return r;
}

/// Cyclicity W_{σαβρ} = -W_{αβρσ} and 1-site nondegeneracy (rank 4).
inline IdentityReport pre_regularity(const WTensor& w) {
    IdentityReport r("wform.pre_regularity", "W_{s a b r} = -W_{a b r s} for all indices, and W(v,.,.,.) = 0 forces v = 0");
    ReportTimer timer(r);
    std::vector<std::vector<Scalar>> m(4, std::vector<Scalar>(64));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Index4 t{a, b, c, d};
                    Scalar x = w.W(t);
                    Scalar s = w.W({d, a, b, c}) + x;
                    if (!s.is_zero()) r.fail_at("cyclic " + index_str(t), s.str());
                    m[a][16 * b + 4 * c + d] = x;
                }
    std::size_t rank = rank_of(m);
    if (rank != 4) r.fail_at("rank", std::to_string(rank));
    r.data["rank"] = rank;
    return r;
}

/// span{Σ W_{αβρσ} x_ρ x_σ} equals the span of the defining relations of A.
inline IdentityReport relations_match(const WTensor& w, const ParameterSet& ps) {
    IdentityReport r("wform.relations_match", "the quadratic algebra A(W,2) coincides with A_{l,p}");
    ReportTimer timer(r);
    std::vector<SparseRow> from_w, from_a;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            SparseRow row;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Scalar x = w.W({a, b, c, d});
                    if (!x.is_zero()) row.emplace(4 * c + d, x);
                }
            if (!row.empty()) from_w.push_back(std::move(row));
            SparseRow rel;
            for (const auto& [word, c] : plane_relation(ps, a, b)) rel.emplace(4 * word[0] + word[1], c);
            if (!rel.empty()) from_a.push_back(std::move(rel));
        }
    Echelon ew = echelon_of(from_w), ea = echelon_of(from_a);
    std::size_t miss_a = 0, miss_w = 0;
    for (const auto& row : from_a) miss_a += ew.contains(row) ? 0 : 1;
    for (const auto& row : from_w) miss_w += ea.contains(row) ? 0 : 1;
    if (miss_a) r.fail_at("relations of A outside span W", std::to_string(miss_a));
    if (miss_w) r.fail_at("W relations outside span A", std::to_string(miss_w));
    r.data["rank_w"] = ew.rank();
    r.data["rank_a"] = ea.rank();
    return r;
}

struct VolumeForm {
    Scalar k;       // vol = k ω
    NCPoly reduced;
};

/// vol = Σ W_{αβρσ} dx_α dx_β dx_ρ dx_σ, reduced term by term over all 256 tuples.
inline VolumeForm volume_expand(const WTensor& w, const FormSystem& fs) {
    if (fs.assumptions().branch != Branch::plus) throw AssumptionViolated("volume form needs l02 = l01 l03");
    LinComb vol;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Scalar x = w.W({a, b, c, d});
                    if (!x.is_zero()) add_to(vol, form_reduce(LinComb{{dga::dxw({a, b, c, d}), Scalar(1)}}, fs), x);
                }
    VolumeForm out{Scalar(), NCPoly(fs.alphabet(), vol)};
    auto it = vol.find(dga::omega());
    if (it != vol.end()) out.k = it->second;
    return out;
}

/// k from the degree-4 exterior slice by elimination, independent of the installed tables.
inline Scalar volume_by_elimination(const WTensor& w, const ParameterSet& ps, RowOrder order, unsigned seed = 0) {
    RewriteSystem ext = exterior_system(ps);
    GradedComponent gc = component_by_linear_algebra(ext, 4, DegreeBudget{4, 4}, order, seed);
    if (gc.dimension != 1) throw Error("degree-4 exterior component is not one-dimensional");
    LinComb vol;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    Scalar x = w.W({a, b, c, d});
                    if (!x.is_zero()) add_to(vol, word_of({a, b, c, d}), x);
                }
    Scalar v = gc.coordinates(NCPoly(ext.alphabet(), vol))[0];
    Scalar o = gc.coordinates(NCPoly::monomial(ext.alphabet(), word_of({0, 1, 3, 2}), Scalar(1)))[0];
    return v / o;
}

inline Scalar volume_closed_form(const ParameterSet& ps) {
    return Scalar(-2) * (Scalar(8) + Scalar(4) * ps.l[0][1] * ps.l[0][1]);
}

/// vol = k ω with k = -2(8 + 4 l01²), following the chain of equalities line by line.
inline IdentityReport volume_report(const WTensor& w, const FormSystem& fs) {
    IdentityReport r("wform.volume", "vol = sum W dx dx dx dx = -2(8 + 4 l01^2) omega");
    ReportTimer timer(r);
    const auto& ps = fs.params();
    VolumeForm v = volume_expand(w, fs);
    LinComb rest = v.reduced.terms();
    rest.erase(dga::omega());
    if (!rest.empty()) r.fail_at("vol - k omega", NCPoly(fs.alphabet(), rest).str());
    auto sq = [](const Scalar& x) { return x * x; };
    // η = -L ε on distinct indices and η_{αβαβ} = -P_{β'α'} ε_{αβα'β'}.
    auto eta = eta_table(ps);
    for (const auto& [word, e] : eta) {
        Index4 t{word[0] - dga::kDx, word[1] - dga::kDx, word[2] - dga::kDx, word[3] - dga::kDx};
        Scalar expect;
        if (epsilon(t)) {
            expect = -w.L.at(t) * Scalar(epsilon(t));
        } else {
            auto [ap, bp] = prime_pair({t[0], t[1]});
            expect = -w.P[bp][ap] * Scalar(epsilon({t[0], t[1], ap, bp}));
        }
        if (!(e - expect).is_zero()) r.fail_at("eta_" + index_str(t) + " vs L, P", (e - expect).str());
    }
    // Line by line.
    Scalar line1 = v.k;
    Scalar line2;
    for (const auto& [t, l] : w.L) line2 -= sq(l);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            auto [ap, bp] = prime_pair({a, b});
            line2 -= w.P[a][b] * w.P[bp][ap];
        }
    Scalar line3, line4, line5;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            auto [ap, bp] = prime_pair({a, b});
            const Scalar& ls = w.L.at(swap_tail(a, b));
            line3 -= sq(w.L.at(straight_tail(a, b))) + sq(ls) + w.P[a][b] * w.P[bp][ap];
            line4 -= sq(ls) * (sq(ps.l[a][b]) + Scalar(1) + ps.p[bp][ap] * ps.p[a][b]);
            line5 -= Scalar(2) * sq(ls);
        }
    Scalar line6 = volume_closed_form(ps);
    for (auto [order, seed] : {std::pair{RowOrder::simplest_first, 0u}, std::pair{RowOrder::reversed, 0u}}) {
        Scalar d = volume_by_elimination(w, ps, order, seed) - v.k;
        if (!d.is_zero()) r.fail_at("elimination k - k (order " + std::to_string(static_cast<int>(order)) + ")", d.str());
    }
    const std::array<Scalar, 6> lines{line1, line2, line3, line4, line5, line6};
    for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
        Scalar d = lines[i] - lines[i + 1];
        if (!d.is_zero()) r.fail_at("line " + std::to_string(i + 1) + " - line " + std::to_string(i + 2), d.str());
    }
    r.data["k"] = v.k.str();
    r.data["closed_form"] = line6.str();
    return r;
}

/// L and P tables as JSON.
inline nlohmann::ordered_json w_json(const WTensor& w) {
    nlohmann::ordered_json j;
    auto l = nlohmann::ordered_json::object();
    for (const auto& [t, v] : w.L) l[index_str(t)] = v.str();
    auto p = nlohmann::ordered_json::object();
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) p[std::to_string(a) + std::to_string(b)] = w.P[a][b].str();
    j["L"] = std::move(l);
    j["P"] = std::move(p);
    return j;
}

}  // namespace qalg

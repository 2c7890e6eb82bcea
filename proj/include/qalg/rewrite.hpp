#pragma once

// Normal forms for quadratic algebras. The defining relations cannot be
// oriented by any monomial order, so plain rewriting may cycle
// (x3x2 -> x2x3 + p x0x1 and back). Instead each non-normal word is
// rewritten by one leftmost step, the induced dependency graph is explored
// with Tarjan's algorithm, and every strongly connected component is solved
// exactly as a linear system for the normal forms of its words.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qalg/freepoly.hpp"
#include "qalg/linalg.hpp"
#include "qalg/params.hpp"
#include "qalg/report.hpp"

namespace qalg {

/// One rewriting step on a word, or nullopt when the word is normal.
using StepFn = std::function<std::optional<LinComb>(const Word&)>;

class NormalFormEngine {
public:
    explicit NormalFormEngine(StepFn step, std::size_t budget = 2'000'000) : step_(std::move(step)), budget_(budget) {}

    LinComb normal_form(const Word& w) {
        std::lock_guard<std::mutex> lock(mu_);
        return solve(w);
    }

    LinComb reduce(const LinComb& f) {
        std::lock_guard<std::mutex> lock(mu_);
        LinComb out;
        for (const auto& [w, c] : f) add_to(out, solve(w), c);
        return out;
    }

    bool is_normal(const Word& w) const { return !step_(w).has_value(); }
    std::size_t memo_size() const { return memo_.size(); }
    std::size_t largest_cycle() const { return largest_cycle_; }

private:
    struct Node {
        Word w;
        LinComb step;
        std::vector<Word> succ;
        std::size_t next = 0;
        int index = 0;
        int low = 0;
        bool on_stack = false;
    };

    const LinComb& solve(const Word& root) {
        if (auto it = memo_.find(root); it != memo_.end()) return it->second;
        std::unordered_map<Word, int> id;
        std::vector<Node> nodes;
        std::vector<int> stack, call;
        int counter = 0;

        auto open = [&](const Word& w) -> int {
            auto s = step_(w);
            if (!s) {
                memo_.emplace(w, LinComb{{w, Scalar(1)}});
                return -1;
            }
            if (nodes.size() >= budget_) throw NonTermination("normal form exploration exceeded the step budget");
            int k = static_cast<int>(nodes.size());
            Node n;
            n.w = w;
            n.step = std::move(*s);
            for (const auto& [u, c] : n.step) n.succ.push_back(u);
            n.index = n.low = counter++;
            n.on_stack = true;
            nodes.push_back(std::move(n));
            id.emplace(w, k);
            stack.push_back(k);
            return k;
        };

        int r = open(root);
        if (r < 0) return memo_.at(root);
        call.push_back(r);
        while (!call.empty()) {
            int v = call.back();
            if (nodes[v].next < nodes[v].succ.size()) {
                const Word u = nodes[v].succ[nodes[v].next++];
                if (memo_.count(u)) continue;
                auto it = id.find(u);
                if (it == id.end()) {
                    int k = open(u);
                    if (k >= 0) call.push_back(k);
                } else if (nodes[it->second].on_stack) {
                    nodes[v].low = std::min(nodes[v].low, nodes[it->second].index);
                }
                continue;
            }
            call.pop_back();
            if (!call.empty()) nodes[call.back()].low = std::min(nodes[call.back()].low, nodes[v].low);
            if (nodes[v].low != nodes[v].index) continue;
            std::vector<int> comp;
            int x;
            do {
                x = stack.back();
                stack.pop_back();
                nodes[x].on_stack = false;
                comp.push_back(x);
            } while (x != v);
            close_component(nodes, comp);
        }
        return memo_.at(root);
    }

    void close_component(std::vector<Node>& nodes, const std::vector<int>& comp) {
        if (comp.size() == 1) {
            Node& n = nodes[comp[0]];
            if (!n.step.count(n.w)) {
                LinComb nf;
                for (const auto& [u, c] : n.step) add_to(nf, memo_.at(u), c);
                memo_.emplace(n.w, std::move(nf));
                return;
            }
        }
        largest_cycle_ = std::max(largest_cycle_, comp.size());
        // X_i - sum_{j in comp} c_ij X_j = sum_{u outside} c_iu NF(u)
        std::unordered_map<Word, std::size_t> local;
        for (std::size_t k = 0; k < comp.size(); ++k) local.emplace(nodes[comp[k]].w, k);
        std::size_t k = comp.size();
        std::vector<SparseRow> a(k);
        std::vector<LinComb> b(k);
        for (std::size_t i = 0; i < k; ++i) {
            const Node& n = nodes[comp[i]];
            a[i][i] = Scalar(1);
            for (const auto& [u, c] : n.step) {
                auto it = local.find(u);
                if (it != local.end()) {
                    Scalar& e = a[i][it->second];
                    e -= c;
                    if (e.is_zero()) a[i].erase(it->second);
                } else {
                    add_to(b[i], memo_.at(u), c);
                }
            }
        }
        // Gauss-Jordan with row swaps; the right-hand sides are linear combinations.
        std::vector<bool> used(k, false);
        std::vector<std::size_t> pivot_row(k);
        for (std::size_t col = 0; col < k; ++col) {
            std::size_t best = k;
            std::size_t best_w = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (used[i]) continue;
                auto it = a[i].find(col);
                if (it == a[i].end()) continue;
                std::size_t w = a[i].size() * 8 + static_cast<std::size_t>(it->second.variable_count());
                if (best == k || w < best_w) {
                    best = i;
                    best_w = w;
                }
            }
            if (best == k) throw NonTermination("rewriting cycle with a singular linear system");
            used[best] = true;
            pivot_row[col] = best;
            Scalar inv = a[best].at(col).inverse();
            for (auto& [c, x] : a[best]) x = x * inv;
            for (auto& [w, x] : b[best]) x = x * inv;
            for (std::size_t i = 0; i < k; ++i) {
                if (i == best) continue;
                auto it = a[i].find(col);
                if (it == a[i].end()) continue;
                Scalar f = -it->second;
                axpy(a[i], f, a[best]);
                add_to(b[i], b[best], f);
            }
        }
        for (std::size_t col = 0; col < k; ++col) memo_.emplace(nodes[comp[col]].w, std::move(b[pivot_row[col]]));
    }

    StepFn step_;
    std::size_t budget_;
    std::unordered_map<Word, LinComb> memo_;
    std::size_t largest_cycle_ = 0;
    std::mutex mu_;
};

struct Rule {
    Word lhs;
    LinComb rhs;
};

/// Oriented degree-2 rules plus the full list of defining relations.
class RewriteSystem {
public:
    RewriteSystem(AlphabetPtr alpha, ParameterSet ps, std::vector<Rule> rules, std::vector<LinComb> relations,
                  std::size_t budget = 2'000'000)
        : alpha_(std::move(alpha)), ps_(std::move(ps)), rules_(std::move(rules)), relations_(std::move(relations)) {
        for (const auto& r : rules_) {
            index_.emplace(r.lhs, r.rhs);
            max_lhs_ = std::max(max_lhs_, r.lhs.size());
        }
        auto self = index_;
        std::size_t max_lhs = max_lhs_;
        engine_ = std::make_shared<NormalFormEngine>(
            [self = std::move(self), max_lhs](const Word& w) { return leftmost_step(self, max_lhs, w); }, budget);
    }

    const AlphabetPtr& alphabet() const { return alpha_; }
    const ParameterSet& params() const { return ps_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<LinComb>& relations() const { return relations_; }
    NormalFormEngine& engine() const { return *engine_; }

    bool is_normal(const Word& w) const { return !step(w).has_value(); }

    std::optional<LinComb> step(const Word& w) const { return leftmost_step(index_, max_lhs_, w); }

    /// Rewrite the redex starting at position pos, if there is one.
    std::optional<LinComb> step_at(const Word& w, std::size_t pos) const {
        for (std::size_t len = 1; len <= max_lhs_ && pos + len <= w.size(); ++len) {
            auto it = index_.find(w.substr(pos, len));
            if (it != index_.end()) return splice(w, pos, len, it->second);
        }
        return std::nullopt;
    }

    std::vector<std::size_t> redex_positions(const Word& w) const {
        std::vector<std::size_t> out;
        for (std::size_t pos = 0; pos < w.size(); ++pos)
            if (step_at(w, pos)) out.push_back(pos);
        return out;
    }

    static LinComb splice(const Word& w, std::size_t pos, std::size_t len, const LinComb& rhs) {
        LinComb out;
        Word pre = w.substr(0, pos), post = w.substr(pos + len);
        for (const auto& [u, c] : rhs) add_to(out, pre + u + post, c);
        return out;
    }

private:
    static std::optional<LinComb> leftmost_step(const std::map<Word, LinComb, WordLess>& index, std::size_t max_lhs,
                                                const Word& w) {
        for (std::size_t pos = 0; pos < w.size(); ++pos)
            for (std::size_t len = 1; len <= max_lhs && pos + len <= w.size(); ++len) {
                auto it = index.find(w.substr(pos, len));
                if (it != index.end()) return splice(w, pos, len, it->second);
            }
        return std::nullopt;
    }

    AlphabetPtr alpha_;
    ParameterSet ps_;
    std::vector<Rule> rules_;
    std::vector<LinComb> relations_;
    std::map<Word, LinComb, WordLess> index_;
    std::size_t max_lhs_ = 0;
    std::shared_ptr<NormalFormEngine> engine_;
};

inline NCPoly reduce(const NCPoly& f, const RewriteSystem& rs) {
    if (f.alphabet() != rs.alphabet()) throw AlphabetMismatch();
    return NCPoly(rs.alphabet(), rs.engine().reduce(f.terms()));
}

/// All words of length n over an alphabet of the given size, in lexicographic order.
inline std::vector<Word> all_words(std::size_t letters, std::size_t n) {
    std::vector<Word> out{Word{}};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Word> next;
        next.reserve(out.size() * letters);
        for (const auto& w : out)
            for (std::size_t l = 0; l < letters; ++l) next.push_back(w + Word(1, static_cast<Letter>(l)));
        out = std::move(next);
    }
    return out;
}

struct GradedComponent {
    int degree = 0;
    std::vector<Word> basis;
    std::size_t dimension = 0;
    std::function<std::vector<Scalar>(const NCPoly&)> coordinates;
};

struct DegreeBudget {
    int symbolic = 4;
    int concrete = 6;
};

namespace detail {

/// Column order for a degree-n slice: normal words first so that pivots land on non-normal words.
struct WordColumns {
    std::vector<Word> words;
    std::unordered_map<Word, std::size_t> column;

    WordColumns(const RewriteSystem& rs, std::size_t n) {
        std::vector<Word> all = all_words(rs.alphabet()->size(), n);
        std::stable_partition(all.begin(), all.end(), [&](const Word& w) { return rs.is_normal(w); });
        words = std::move(all);
        for (std::size_t k = 0; k < words.size(); ++k) column.emplace(words[k], k);
    }

    SparseRow row(const LinComb& f) const {
        SparseRow r;
        for (const auto& [w, c] : f) r.emplace(column.at(w), c);
        return r;
    }
};

inline void check_budget(const RewriteSystem& rs, int n, const DegreeBudget& budget) {
    bool symbolic = !rs.params().variables.empty();
    int limit = symbolic ? budget.symbolic : budget.concrete;
    if (n > limit)
        throw DegreeBudgetExceeded("degree " + std::to_string(n) + " exceeds the " + (symbolic ? "symbolic" : "concrete") +
                                   " budget " + std::to_string(limit));
}

inline std::vector<SparseRow> relation_rows(const RewriteSystem& rs, const WordColumns& cols, std::size_t n) {
    std::vector<SparseRow> rows;
    std::size_t letters = rs.alphabet()->size();
    for (const auto& rel : rs.relations()) {
        std::size_t d = rel.begin()->first.size();
        if (d > n) continue;
        for (std::size_t left = 0; left + d <= n; ++left) {
            auto lefts = all_words(letters, left);
            auto rights = all_words(letters, n - d - left);
            for (const auto& u : lefts)
                for (const auto& v : rights) {
                    LinComb f;
                    for (const auto& [w, c] : rel) add_to(f, u + w + v, c);
                    if (!f.empty()) rows.push_back(cols.row(f));
                }
        }
    }
    return rows;
}

}  // namespace detail

/// Degree-n component of the quotient by brute-force elimination on the free slice.
inline GradedComponent component_by_linear_algebra(const RewriteSystem& rs, int n, const DegreeBudget& budget = {},
                                                   RowOrder order = RowOrder::simplest_first, unsigned seed = 0) {
    detail::check_budget(rs, n, budget);
    auto cols = std::make_shared<detail::WordColumns>(rs, static_cast<std::size_t>(n));
    auto ech = std::make_shared<Echelon>(echelon_of(detail::relation_rows(rs, *cols, n), order, seed));
    GradedComponent gc;
    gc.degree = n;
    std::vector<std::size_t> free_cols;
    for (std::size_t k = 0; k < cols->words.size(); ++k)
        if (!ech->is_pivot(k)) {
            gc.basis.push_back(cols->words[k]);
            free_cols.push_back(k);
        }
    gc.dimension = gc.basis.size();
    gc.coordinates = [cols, ech, free_cols, n](const NCPoly& f) {
        SparseRow rem = ech->reduce(cols->row(f.slice(n, Grading::word_length).terms()));
        std::vector<Scalar> out(free_cols.size());
        for (std::size_t k = 0; k < free_cols.size(); ++k) {
            auto it = rem.find(free_cols[k]);
            if (it != rem.end()) out[k] = it->second;
        }
        return out;
    };
    return gc;
}

/// Empirical diamond-lemma check in degree n.
inline IdentityReport confluence_probe(const RewriteSystem& rs, int n, const DegreeBudget& budget = {}) {
    IdentityReport r("rewrite.confluence." + rs.alphabet()->name() + ".deg" + std::to_string(n),
                     "reduction is well defined in degree " + std::to_string(n) + " and normal words form a basis");
    ReportTimer timer(r);
    detail::check_budget(rs, n, budget);
    detail::WordColumns cols(rs, static_cast<std::size_t>(n));
    Echelon ech = echelon_of(detail::relation_rows(rs, cols, n));
    std::size_t normal = 0;
    for (const auto& w : cols.words) normal += rs.is_normal(w) ? 1 : 0;
    std::size_t dim = cols.words.size() - ech.rank();
    std::size_t overlaps = 0;
    auto& eng = rs.engine();
    for (const auto& w : cols.words) {
        LinComb nf;
        try {
            nf = eng.normal_form(w);
        } catch (const NonTermination& e) {
            r.fail_at(rs.alphabet()->word_str(w), e.what());
            continue;
        }
        for (const auto& [u, c] : nf)
            if (!rs.is_normal(u)) r.fail_at(rs.alphabet()->word_str(w), "non-normal word in result");
        // w - NF(w) must lie in the ideal.
        LinComb diff{{w, Scalar(1)}};
        add_to(diff, nf, Scalar(-1));
        if (!ech.contains(cols.row(diff)))
            r.fail_at(rs.alphabet()->word_str(w) + " - NF", NCPoly(rs.alphabet(), diff).str());
        auto pos = rs.redex_positions(w);
        if (pos.size() < 2) continue;
        ++overlaps;
        for (std::size_t p : pos) {
            LinComb alt = eng.reduce(*rs.step_at(w, p));
            if (alt != nf) {
                LinComb d = alt;
                add_to(d, nf, Scalar(-1));
                r.fail_at(rs.alphabet()->word_str(w) + " @" + std::to_string(p), NCPoly(rs.alphabet(), d).str());
            }
        }
    }
    if (normal != dim) r.fail_at("normal monomials - dimension", std::to_string(static_cast<long>(normal) - static_cast<long>(dim)));
    r.data["normal_monomials"] = normal;
    r.data["dimension"] = dim;
    r.data["overlap_words"] = overlaps;
    return r;
}

}  // namespace qalg

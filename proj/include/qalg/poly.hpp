#pragma once

// Sparse multivariate polynomials over Q(i) with a global table of named
// indeterminates, deglex term order and a recursive primitive-PRS gcd.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qalg/errors.hpp"
#include "qalg/gauss.hpp"

namespace qalg {

inline constexpr std::size_t kMaxVars = 24;

/// Process-wide registry of indeterminate names. Indices are stable for
/// the life of the process; the common family symbols are preloaded so
/// that their relative order never depends on construction order.
class VarTable {
public:
    static VarTable& instance() {
        static VarTable t;
        return t;
    }

    std::size_t intern(const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        if (name == "i") throw Error("'i' is reserved for the imaginary unit");
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        if (names_.size() == kMaxVars) throw Error("too many indeterminates (limit " + std::to_string(kMaxVars) + ")");
        names_.push_back(name);
        index_.emplace(name, names_.size() - 1);
        return names_.size() - 1;
    }

    std::optional<std::size_t> find(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::string name(std::size_t idx) const {
        std::lock_guard<std::mutex> lock(mu_);
        return names_.at(idx);
    }

private:
    VarTable() {
        for (const char* n : {"a", "b", "c", "alpha", "beta", "gamma", "lam", "t0", "t1", "t2", "t3",
                              "p10", "p20", "p30"})
            intern(n);
    }
    mutable std::mutex mu_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};

    unsigned degree() const {
        unsigned d = 0;
        for (auto x : e) d += x;
        return d;
    }
    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
    }
    bool divides(const Monomial& o) const {
        for (std::size_t k = 0; k < kMaxVars; ++k)
            if (e[k] > o.e[k]) return false;
        return true;
    }
    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (std::size_t k = 0; k < kMaxVars; ++k) r.e[k] = e[k] + o.e[k];
        return r;
    }
    Monomial operator/(const Monomial& o) const {
        Monomial r;
        for (std::size_t k = 0; k < kMaxVars; ++k) r.e[k] = e[k] - o.e[k];
        return r;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Degree-lexicographic comparison; variable 0 is the most significant.
inline int deglex_cmp(const Monomial& a, const Monomial& b) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t k = 0; k < kMaxVars; ++k)
        if (a.e[k] != b.e[k]) return a.e[k] < b.e[k] ? -1 : 1;
    return 0;
}

struct DeglexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return deglex_cmp(a, b) > 0; }
};

class Poly {
public:
    struct Term {
        Monomial m;
        GaussRat c;
    };

    Poly() = default;
    Poly(const GaussRat& c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_.push_back({Monomial{}, c});
    }
    Poly(long c) : Poly(GaussRat(c)) {}  // NOLINT(google-explicit-constructor)

    static Poly var(std::size_t idx, unsigned power = 1) {
        Poly p;
        Term t{Monomial{}, GaussRat(1)};
        t.m.e.at(idx) = static_cast<std::uint16_t>(power);
        p.terms_.push_back(std::move(t));
        return p;
    }
    static Poly var(const std::string& name) { return var(VarTable::instance().intern(name)); }

    /// Build from arbitrary (possibly repeated, unsorted) terms.
    static Poly from_terms(std::vector<Term> ts) {
        std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return deglex_cmp(a.m, b.m) > 0; });
        Poly p;
        for (auto& t : ts) {
            if (!p.terms_.empty() && p.terms_.back().m == t.m) {
                p.terms_.back().c += t.c;
            } else {
                if (!p.terms_.empty() && p.terms_.back().c.is_zero()) p.terms_.pop_back();
                p.terms_.push_back(std::move(t));
            }
        }
        if (!p.terms_.empty() && p.terms_.back().c.is_zero()) p.terms_.pop_back();
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].m.is_one() && terms_[0].c.is_one(); }
    GaussRat constant_value() const { return terms_.empty() ? GaussRat(0) : terms_[0].c; }
    const Term& lead() const { return terms_.front(); }
    std::size_t size() const { return terms_.size(); }

    unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().m.degree(); }

    unsigned degree_in(std::size_t v) const {
        unsigned d = 0;
        for (auto& t : terms_) d = std::max<unsigned>(d, t.m.e[v]);
        return d;
    }

    /// Bitmask of indeterminates that occur.
    std::uint32_t support() const {
        std::uint32_t s = 0;
        for (auto& t : terms_)
            for (std::size_t k = 0; k < kMaxVars; ++k)
                if (t.m.e[k]) s |= (1u << k);
        return s;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_constant()) return b.scaled(a.constant_value());
        if (b.is_constant()) return a.scaled(b.constant_value());
        std::map<Monomial, GaussRat, DeglexGreater> acc;
        for (auto& s : a.terms_)
            for (auto& t : b.terms_) {
                auto [it, fresh] = acc.try_emplace(s.m * t.m, s.c);
                if (fresh)
                    it->second *= t.c;
                else
                    it->second += s.c * t.c;
            }
        Poly r;
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!c.is_zero()) r.terms_.push_back({m, c});
        return r;
    }

    Poly scaled(const GaussRat& c) const {
        if (c.is_zero()) return {};
        Poly r = *this;
        for (auto& t : r.terms_) t.c *= c;
        return r;
    }

    Poly shifted(const Monomial& m) const {
        Poly r = *this;
        for (auto& t : r.terms_) t.m = t.m * m;
        return r;
    }

    Poly pow(unsigned k) const {
        Poly r(1), base = *this;
        while (k) {
            if (k & 1u) r = r * base;
            k >>= 1u;
            if (k) base = base * base;
        }
        return r;
    }

    /// Divide by the leading coefficient.
    Poly monic() const {
        if (is_zero() || lead().c.is_one()) return *this;
        return scaled(lead().c.inverse());
    }

    Poly conj() const {
        Poly r = *this;
        for (auto& t : r.terms_) t.c = t.c.conj();
        return r;
    }

    /// Exact quotient a/b when b divides a, nullopt otherwise.
    friend std::optional<Poly> try_divide(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DivisionByZero();
        if (a.is_zero()) return Poly{};
        if (b.is_constant()) return a.scaled(b.constant_value().inverse());
        if (!b.lead().m.divides(a.lead().m)) return std::nullopt;
        GaussRat inv = b.lead().c.inverse();
        std::vector<Term> q;
        Poly r = a;
        while (!r.is_zero()) {
            const Term& lt = r.lead();
            if (!b.lead().m.divides(lt.m)) return std::nullopt;
            Term qt{lt.m / b.lead().m, lt.c * inv};
            r = r - b.shifted(qt.m).scaled(qt.c);
            q.push_back(std::move(qt));
        }
        Poly out;
        out.terms_ = std::move(q);
        return out;
    }

    friend Poly divide_exact(const Poly& a, const Poly& b) {
        auto q = try_divide(a, b);
        if (!q) throw Error("inexact polynomial division");
        return *q;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t k = 0; k < a.terms_.size(); ++k)
            if (!(a.terms_[k].m == b.terms_[k].m) || !(a.terms_[k].c == b.terms_[k].c)) return false;
        return true;
    }

    /// Coefficients as polynomials in the other indeterminates, indexed by the power of v.
    std::vector<Poly> coeffs_in(std::size_t v) const {
        std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
        for (auto& t : terms_) {
            Term s = t;
            s.m.e[v] = 0;
            buckets[t.m.e[v]].push_back(std::move(s));
        }
        std::vector<Poly> out;
        out.reserve(buckets.size());
        for (auto& b : buckets) {
            Poly p;
            p.terms_ = std::move(b);
            std::sort(p.terms_.begin(), p.terms_.end(),
                      [](const Term& x, const Term& y) { return deglex_cmp(x.m, y.m) > 0; });
            out.push_back(std::move(p));
        }
        return out;
    }

    static Poly from_coeffs(const std::vector<Poly>& cs, std::size_t v) {
        std::vector<Term> ts;
        for (std::size_t k = 0; k < cs.size(); ++k)
            for (auto& t : cs[k].terms_) {
                Term s = t;
                s.m.e[v] = static_cast<std::uint16_t>(s.m.e[v] + k);
                ts.push_back(std::move(s));
            }
        return from_terms(std::move(ts));
    }

    std::string str() const;

private:
    static Poly merge(const Poly& a, const Poly& b, bool subtract) {
        Poly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            int c;
            if (i == a.terms_.size())
                c = -1;
            else if (j == b.terms_.size())
                c = 1;
            else
                c = deglex_cmp(a.terms_[i].m, b.terms_[j].m);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                r.terms_.push_back(b.terms_[j++]);
                if (subtract) r.terms_.back().c = -r.terms_.back().c;
            } else {
                GaussRat s = subtract ? a.terms_[i].c - b.terms_[j].c : a.terms_[i].c + b.terms_[j].c;
                if (!s.is_zero()) r.terms_.push_back({a.terms_[i].m, std::move(s)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;  // strictly decreasing in deglex
};

Poly gcd(const Poly& a, const Poly& b);

namespace detail {

inline Poly content_in(const Poly& p, std::size_t v) {
    Poly g;
    for (auto& c : p.coeffs_in(v)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.monic() : gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

inline Poly pseudo_rem(Poly a, const Poly& b, std::size_t v) {
    unsigned db = b.degree_in(v);
    Poly lcb = b.coeffs_in(v).back();
    while (!a.is_zero() && a.degree_in(v) >= db) {
        unsigned da = a.degree_in(v);
        Poly lca = a.coeffs_in(v).back();
        Monomial shift;
        shift.e[v] = static_cast<std::uint16_t>(da - db);
        a = a * lcb - (b * lca).shifted(shift);
    }
    return a;
}

}  // namespace detail

namespace detail {

/// Arithmetic modulo the prime 1000000009 (≡ 1 mod 4, so i has an image).
struct Fp {
    static constexpr std::uint64_t p = 1000000009ULL;
    static std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return a * b % p; }
    static std::uint64_t add(std::uint64_t a, std::uint64_t b) { return (a + b) % p; }
    static std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return (a + p - b) % p; }
    static std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    static std::uint64_t inv(std::uint64_t a) { return pow(a, p - 2); }
    static std::uint64_t sqrt_minus_one() {
        static const std::uint64_t r = [] {
            for (std::uint64_t g = 2;; ++g) {
                std::uint64_t c = pow(g, (p - 1) / 4);
                if (mul(c, c) == p - 1) return c;
            }
        }();
        return r;
    }
    static std::optional<std::uint64_t> of(const mpq_class& q) {
        mpz_class d = q.get_den() % mpz_class(static_cast<unsigned long>(p));
        if (d == 0) return std::nullopt;
        mpz_class n = q.get_num() % mpz_class(static_cast<unsigned long>(p));
        if (n < 0) n += static_cast<unsigned long>(p);
        return mul(n.get_ui(), inv(d.get_ui()));
    }
    static std::optional<std::uint64_t> of(const GaussRat& c) {
        auto re = of(c.re());
        if (!re) return std::nullopt;
        if (c.is_real()) return re;
        auto im = of(c.im());
        if (!im) return std::nullopt;
        return add(*re, mul(*im, sqrt_minus_one()));
    }
};

/// Image in Fp[v] after evaluating every other indeterminate at pt.
inline std::optional<std::vector<std::uint64_t>> modular_image(const Poly& a, std::size_t v,
                                                                const std::array<std::uint64_t, kMaxVars>& pt) {
    std::vector<std::uint64_t> out(a.degree_in(v) + 1, 0);
    for (const auto& t : a.terms()) {
        auto c = Fp::of(t.c);
        if (!c) return std::nullopt;
        std::uint64_t x = *c;
        for (std::size_t k = 0; k < kMaxVars; ++k)
            if (k != v && t.m.e[k]) x = Fp::mul(x, Fp::pow(pt[k], t.m.e[k]));
        out[t.m.e[v]] = Fp::add(out[t.m.e[v]], x);
    }
    return out;
}

inline std::size_t fp_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    auto trim = [](std::vector<std::uint64_t>& x) {
        while (!x.empty() && x.back() == 0) x.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        if (a.size() < b.size()) std::swap(a, b);
        std::uint64_t f = Fp::mul(a.back(), Fp::inv(b.back()));
        std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = Fp::sub(a[k + shift], Fp::mul(f, b[k]));
        trim(a);
        std::swap(a, b);
        if (a.size() < b.size()) std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}

/// Upper bound on deg_v gcd(a, b) from one modular image, or nullopt if the
/// evaluation point is unlucky (leading coefficient of a vanishes).
inline std::optional<std::size_t> modular_degree_bound(const Poly& a, const Poly& b, std::size_t v, unsigned salt) {
    std::array<std::uint64_t, kMaxVars> pt{};
    std::uint64_t state = 0x9E3779B97F4A7C15ULL ^ (static_cast<std::uint64_t>(salt) * 0xBF58476D1CE4E5B9ULL);
    for (auto& x : pt) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        x = (state >> 20) % Fp::p;
    }
    auto ia = modular_image(a, v, pt);
    auto ib = modular_image(b, v, pt);
    if (!ia || !ib) return std::nullopt;
    if (ia->back() == 0) return std::nullopt;
    return fp_gcd_degree(std::move(*ia), std::move(*ib));
}

/// True when gcd(a, b) is certainly a constant.
inline bool modular_coprime(const Poly& a, const Poly& b, std::uint32_t shared) {
    for (std::size_t v = 0; v < kMaxVars; ++v) {
        if (!(shared & (1u << v))) continue;
        bool decided = false;
        for (unsigned salt = 0; salt < 3 && !decided; ++salt) {
            auto d = modular_degree_bound(a, b, v, salt + 7 * static_cast<unsigned>(v));
            if (!d) continue;
            if (*d > 0) return false;
            decided = true;
        }
        if (!decided) return false;
    }
    return true;
}

inline Poly strip_monomial(const Poly& a, const Monomial& m) {
    std::vector<Poly::Term> ts(a.terms().begin(), a.terms().end());
    for (auto& t : ts)
        for (std::size_t k = 0; k < kMaxVars; ++k) t.m.e[k] = static_cast<std::uint16_t>(t.m.e[k] - m.e[k]);
    return Poly::from_terms(std::move(ts));
}

inline Poly deflate(const Poly& a, std::size_t v, unsigned k) {
    std::vector<Poly::Term> ts(a.terms().begin(), a.terms().end());
    for (auto& t : ts) t.m.e[v] = static_cast<std::uint16_t>(t.m.e[v] / k);
    return Poly::from_terms(std::move(ts));
}

inline Poly inflate(const Poly& a, std::size_t v, unsigned k) {
    std::vector<Poly::Term> ts(a.terms().begin(), a.terms().end());
    for (auto& t : ts) t.m.e[v] = static_cast<std::uint16_t>(t.m.e[v] * k);
    return Poly::from_terms(std::move(ts));
}

}  // namespace detail

/// Monic greatest common divisor; gcd(0,0) = 0.
inline Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a.size() >= b.size()) {
        if (try_divide(a, b)) return b.monic();
    } else if (try_divide(b, a)) {
        return a.monic();
    }
    std::uint32_t sa = a.support(), sb = b.support();
    // An indeterminate missing from one side only splits off through the content.
    for (std::size_t v = 0; v < kMaxVars; ++v) {
        std::uint32_t bit = 1u << v;
        if ((sa & bit) && !(sb & bit)) return gcd(detail::content_in(a, v), b);
        if ((sb & bit) && !(sa & bit)) return gcd(a, detail::content_in(b, v));
    }
    {
        Monomial ma = a.terms().front().m, mb = b.terms().front().m;
        for (const auto& t : a.terms())
            for (std::size_t k = 0; k < kMaxVars; ++k) ma.e[k] = std::min(ma.e[k], t.m.e[k]);
        for (const auto& t : b.terms())
            for (std::size_t k = 0; k < kMaxVars; ++k) mb.e[k] = std::min(mb.e[k], t.m.e[k]);
        bool any = false;
        Monomial shared_m{};
        for (std::size_t k = 0; k < kMaxVars; ++k) {
            shared_m.e[k] = std::min(ma.e[k], mb.e[k]);
            any = any || ma.e[k] || mb.e[k];
        }
        if (any) {
            Poly g = gcd(detail::strip_monomial(a, ma), detail::strip_monomial(b, mb));
            return g.shifted(shared_m);
        }
    }
    for (std::size_t v = 0; v < kMaxVars; ++v) {
        if (!(sa & (1u << v))) continue;
        unsigned k = 0;
        for (const auto* x : {&a, &b})
            for (const auto& t : x->terms()) k = std::gcd(k, static_cast<unsigned>(t.m.e[v]));
        if (k > 1) return detail::inflate(gcd(detail::deflate(a, v, k), detail::deflate(b, v, k)), v, k);
    }
    if (detail::modular_coprime(a, b, sa)) return Poly(1);
    std::size_t v = 0;
    unsigned best = ~0u;
    for (std::size_t k = 0; k < kMaxVars; ++k)
        if (sa & (1u << k)) {
            unsigned d = std::min(a.degree_in(k), b.degree_in(k));
            if (d < best) {
                best = d;
                v = k;
            }
        }
    Poly ca = detail::content_in(a, v), cb = detail::content_in(b, v);
    Poly g = gcd(ca, cb);
    Poly p = divide_exact(a, ca), q = divide_exact(b, cb);
    if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
    while (true) {
        Poly r = detail::pseudo_rem(p, q, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) {
            q = Poly(1);
            break;
        }
        p = std::move(q);
        q = divide_exact(r, detail::content_in(r, v)).monic();
    }
    return (g * q).monic();
}

inline std::string monomial_str(const Monomial& m) {
    std::string s;
    auto& vt = VarTable::instance();
    for (std::size_t k = 0; k < kMaxVars; ++k) {
        if (!m.e[k]) continue;
        if (!s.empty()) s += "*";
        s += vt.name(k);
        if (m.e[k] > 1) s += "^" + std::to_string(m.e[k]);
    }
    return s;
}

inline std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& t : terms_) {
        const GaussRat& c = t.c;
        bool neg = false;
        std::string coef;
        if (c.is_real()) {
            neg = sgn(c.re()) < 0;
            mpq_class a = abs(c.re());
            if (!(a == 1) || t.m.is_one()) coef = a.get_str();
        } else if (sgn(c.re()) == 0) {
            neg = sgn(c.im()) < 0;
            coef = GaussRat::imag_part(abs(c.im()));
        } else {
            coef = c.str();
        }
        std::string mono = monomial_str(t.m);
        std::string body = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
        if (first)
            out += (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

}  // namespace qalg

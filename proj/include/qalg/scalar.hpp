#pragma once

// Scalar: canonical rational function over Q(i) in named indeterminates.

#include <cctype>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qalg/errors.hpp"
#include "qalg/gauss.hpp"
#include "qalg/poly.hpp"

namespace qalg {

class Scalar;
using Bindings = std::map<std::string, Scalar>;

class Scalar {
public:
    Scalar() : den_(1) {}
    Scalar(long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    Scalar(const GaussRat& v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    explicit Scalar(Poly num) : num_(std::move(num)), den_(1) {}
    Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static Scalar var(const std::string& name) { return Scalar(Poly::var(name)); }
    static Scalar i() { return Scalar(GaussRat::i()); }
    static Scalar rational(long n, long d) {
        if (d == 0) throw DivisionByZero();
        mpq_class q(n, d);
        q.canonicalize();
        return Scalar(GaussRat(q));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    GaussRat constant_value() const { return num_.constant_value(); }

    /// Number of distinct indeterminates occurring.
    int variable_count() const { return __builtin_popcount(num_.support() | den_.support()); }

    std::vector<std::string> variables() const {
        std::vector<std::string> out;
        std::uint32_t s = num_.support() | den_.support();
        for (std::size_t k = 0; k < kMaxVars; ++k)
            if (s & (1u << k)) out.push_back(VarTable::instance().name(k));
        return out;
    }

    Scalar operator-() const {
        Scalar r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b, false); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return add(a, b, true); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.den_.is_one() && b.den_.is_one()) return Scalar(a.num_ * b.num_);
        if (a.is_constant()) return b.scaled(a.constant_value());
        if (b.is_constant()) return a.scaled(b.constant_value());
        Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        Scalar r;
        r.num_ = divide_exact(a.num_, g1) * divide_exact(b.num_, g2);
        r.den_ = divide_exact(a.den_, g2) * divide_exact(b.den_, g1);
        r.fix_unit();
        return r;
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inverse() const {
        if (is_zero()) throw DivisionByZero();
        Scalar r;
        r.num_ = den_;
        r.den_ = num_;
        r.fix_unit();
        return r;
    }

    Scalar pow(int k) const {
        if (k < 0) return inverse().pow(-k);
        Scalar r;
        r.num_ = num_.pow(static_cast<unsigned>(k));
        r.den_ = den_.pow(static_cast<unsigned>(k));
        return r;
    }

    Scalar scaled(const GaussRat& c) const {
        if (c.is_zero()) return {};
        Scalar r = *this;
        r.num_ = r.num_.scaled(c);
        return r;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    /// Replace indeterminates by Scalars; unbound indeterminates stay symbolic.
    Scalar substitute(const Bindings& bindings) const {
        Scalar n = eval_poly(num_, bindings);
        Scalar d = eval_poly(den_, bindings);
        if (d.is_zero()) throw DenominatorVanishes(den_.str());
        return n / d;
    }

    /// Complex conjugation: negate i and apply the involution on every indeterminate.
    Scalar conj(const Bindings& involution) const {
        for (const auto& v : variables())
            if (!involution.count(v)) throw UndeclaredConjugation(v);
        Scalar n = eval_poly(num_.conj(), involution);
        Scalar d = eval_poly(den_.conj(), involution);
        return n / d;
    }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        std::string n = num_.size() > 1 ? "(" + num_.str() + ")" : num_.str();
        return n + "/" + wrap_den(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    static std::string wrap_den(const Poly& d) {
        bool bare = d.size() == 1 && d.lead().c.is_one() && __builtin_popcount(d.support()) == 1;
        return bare ? d.str() : "(" + d.str() + ")";
    }

    static Scalar eval_poly(const Poly& p, const Bindings& bindings) {
        auto& vt = VarTable::instance();
        std::vector<const Scalar*> bound(kMaxVars, nullptr);
        std::uint32_t s = p.support();
        for (std::size_t k = 0; k < kMaxVars; ++k)
            if (s & (1u << k)) {
                auto it = bindings.find(vt.name(k));
                if (it != bindings.end()) bound[k] = &it->second;
            }
        Scalar acc;
        for (const auto& t : p.terms()) {
            Monomial kept;
            Scalar f(t.c);
            for (std::size_t k = 0; k < kMaxVars; ++k) {
                if (!t.m.e[k]) continue;
                if (bound[k])
                    f = f * bound[k]->pow(t.m.e[k]);
                else
                    kept.e[k] = t.m.e[k];
            }
            if (!kept.is_one()) f = f * Scalar(Poly(1).shifted(kept));
            acc = acc + f;
        }
        return acc;
    }

    static Scalar add(const Scalar& a, const Scalar& b, bool subtract) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return subtract ? -b : b;
        if (a.den_ == b.den_) {
            Poly n = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
            if (a.den_.is_one()) return Scalar(std::move(n));
            return Scalar(std::move(n), a.den_);
        }
        Poly g = gcd(a.den_, b.den_);
        Poly ad = divide_exact(a.den_, g), bd = divide_exact(b.den_, g);
        Poly n = subtract ? a.num_ * bd - b.num_ * ad : a.num_ * bd + b.num_ * ad;
        Scalar r;
        r.den_ = a.den_ * bd;
        if (n.is_zero()) {
            r.den_ = Poly(1);
            return r;
        }
        Poly g2 = gcd(n, g);
        r.num_ = divide_exact(n, g2);
        r.den_ = divide_exact(r.den_, g2);
        r.fix_unit();
        return r;
    }

    void normalize() {
        if (den_.is_zero()) throw DivisionByZero();
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        Poly g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = divide_exact(num_, g);
            den_ = divide_exact(den_, g);
        }
        fix_unit();
    }

    void fix_unit() {
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        const GaussRat& lc = den_.lead().c;
        if (lc.is_one()) return;
        GaussRat inv = lc.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }

    Poly num_;
    Poly den_;
};

namespace detail {

class ScalarParser {
public:
    explicit ScalarParser(std::string_view s, std::function<bool(const std::string&)> reserved = {})
        : s_(s), reserved_(std::move(reserved)) {}

    Scalar parse_all() {
        Scalar v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

    Scalar expr() {
        Scalar v = term();
        while (true) {
            skip();
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }

    std::size_t pos() const { return pos_; }
    void set_pos(std::size_t p) { pos_ = p; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Scalar term() {
        Scalar v = unary();
        while (true) {
            skip();
            if (eat('*')) {
                v = v * unary();
            } else if (eat('/')) {
                std::size_t at = pos_;
                Scalar d = unary();
                if (d.is_zero()) throw ParseError("division by zero", at);
                v = v / d;
            } else {
                return v;
            }
        }
    }

    Scalar unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Scalar power() {
        Scalar base = atom();
        if (eat('^')) {
            bool neg = eat('-');
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
            if (neg && base.is_zero()) throw ParseError("division by zero", start);
            return base.pow(neg ? -k : k);
        }
        return base;
    }

    Scalar atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Scalar v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Scalar(GaussRat(mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start))))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            std::string id = identifier();
            if (id == "i") return Scalar::i();
            if (reserved_ && reserved_(id)) throw ParseError("generator '" + id + "' inside a scalar", start);
            return Scalar::var(id);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string identifier() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    bool at_end() {
        skip();
        return pos_ >= s_.size();
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    std::string_view text() const { return s_; }

private:
    std::string_view s_;
    std::function<bool(const std::string&)> reserved_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse integers, i, identifiers, + - * / ^ and parentheses.
inline Scalar parse_scalar(std::string_view text) { return detail::ScalarParser(text).parse_all(); }

}  // namespace qalg

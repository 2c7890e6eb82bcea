#pragma once

// Free noncommutative polynomials over a declared alphabet.

#include <cctype>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qalg/errors.hpp"
#include "qalg/scalar.hpp"

namespace qalg {

enum class Sort { coordinate, form, matrix };

struct Generator {
    std::string name;
    int degree = 1;
    Sort sort = Sort::coordinate;
    int leg = 0;  // tensor leg; letters of leg 0 precede those of leg 1 in a word
};

using Letter = char8_t;
using Word = std::u8string;

/// Length first, then lexicographic on generator indices.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

using LinComb = std::map<Word, Scalar, WordLess>;

inline void add_to(LinComb& acc, const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = acc.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

inline void add_to(LinComb& acc, const LinComb& f, const Scalar& c = Scalar(1)) {
    if (c.is_zero()) return;
    for (const auto& [w, x] : f) add_to(acc, w, c.is_one() ? x : c * x);
}

class Alphabet {
public:
    Alphabet(std::string name, std::vector<Generator> gens) : name_(std::move(name)), gens_(std::move(gens)) {
        for (std::size_t k = 0; k < gens_.size(); ++k) {
            if (!index_.emplace(gens_[k].name, k).second) throw Error("duplicate generator " + gens_[k].name);
        }
    }

    const std::string& name() const { return name_; }
    std::size_t size() const { return gens_.size(); }
    const Generator& operator[](std::size_t k) const { return gens_.at(k); }

    std::optional<Letter> find(const std::string& n) const {
        auto it = index_.find(n);
        if (it == index_.end()) return std::nullopt;
        return static_cast<Letter>(it->second);
    }
    Letter at(const std::string& n) const {
        auto l = find(n);
        if (!l) throw Error("generator " + n + " not in alphabet " + name_);
        return *l;
    }

    Word word(std::initializer_list<const char*> names) const {
        Word w;
        for (const char* n : names) w.push_back(at(n));
        return w;
    }

    std::string word_str(const Word& w) const {
        std::string s;
        for (Letter l : w) {
            if (!s.empty()) s += ' ';
            s += gens_.at(l).name;
        }
        return s;
    }

    int form_degree(const Word& w) const {
        int d = 0;
        for (Letter l : w) d += gens_[l].sort == Sort::form ? 1 : 0;
        return d;
    }

private:
    std::string name_;
    std::vector<Generator> gens_;
    std::unordered_map<std::string, std::size_t> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

namespace alphabets {

inline std::vector<Generator> coords(int leg = 0) {
    std::vector<Generator> g;
    for (int m = 0; m < 4; ++m) g.push_back({"x" + std::to_string(m), 1, Sort::coordinate, leg});
    return g;
}
inline std::vector<Generator> forms(int leg = 0) {
    std::vector<Generator> g;
    for (int m = 0; m < 4; ++m) g.push_back({"dx" + std::to_string(m), 1, Sort::form, leg});
    return g;
}
inline std::vector<Generator> matrix(int leg = 0, const std::string& suffix = "") {
    std::vector<Generator> g;
    for (int m = 0; m < 4; ++m)
        for (int a = 0; a < 4; ++a) g.push_back({"M" + std::to_string(m) + std::to_string(a) + suffix, 1, Sort::matrix, leg});
    return g;
}
template <class... V>
std::vector<Generator> join(V... parts) {
    std::vector<Generator> out;
    (out.insert(out.end(), parts.begin(), parts.end()), ...);
    return out;
}

/// x0..x3.
inline AlphabetPtr plane() {
    static const AlphabetPtr a = std::make_shared<Alphabet>("plane", coords());
    return a;
}
/// x0..x3, dx0..dx3.
inline AlphabetPtr form() {
    static const AlphabetPtr a = std::make_shared<Alphabet>("form", join(coords(), forms()));
    return a;
}
/// dx0..dx3 alone.
inline AlphabetPtr exterior() {
    static const AlphabetPtr a = std::make_shared<Alphabet>("exterior", forms());
    return a;
}
/// M00..M33, letter 4μ+α.
inline AlphabetPtr matrix_alg() {
    static const AlphabetPtr a = std::make_shared<Alphabet>("matrix", matrix());
    return a;
}
/// M ⊗ A: M00..M33 then x0..x3.
inline AlphabetPtr coaction_plane() {
    static const AlphabetPtr a = std::make_shared<Alphabet>("matrix*plane", join(matrix(), coords(1)));
    return a;
}
/// M ⊗ Ω: M00..M33 then x0..x3, dx0..dx3.
inline AlphabetPtr coaction_form() {
    static const AlphabetPtr a = std::make_shared<Alphabet>("matrix*form", join(matrix(), coords(1), forms(1)));
    return a;
}
/// M ⊗ M: M00..M33 then M00'..M33'.
inline AlphabetPtr matrix_square() {
    static const AlphabetPtr a = std::make_shared<Alphabet>("matrix*matrix", join(matrix(), matrix(1, "'")));
    return a;
}

}  // namespace alphabets

enum class Grading { word_length, form_degree };

class NCPoly {
public:
    explicit NCPoly(AlphabetPtr a) : alpha_(std::move(a)) {}
    NCPoly(AlphabetPtr a, LinComb terms) : alpha_(std::move(a)), terms_(std::move(terms)) {
        for (auto it = terms_.begin(); it != terms_.end();) it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }

    static NCPoly monomial(AlphabetPtr a, Word w, const Scalar& c = Scalar(1)) {
        NCPoly p(std::move(a));
        if (!c.is_zero()) p.terms_.emplace(std::move(w), c);
        return p;
    }
    static NCPoly gen(AlphabetPtr a, const std::string& name) {
        Letter l = a->at(name);
        return monomial(std::move(a), Word(1, l));
    }
    static NCPoly constant(AlphabetPtr a, const Scalar& c) { return monomial(std::move(a), Word{}, c); }

    const AlphabetPtr& alphabet() const { return alpha_; }
    const LinComb& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Scalar coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    NCPoly operator-() const {
        NCPoly r = *this;
        for (auto& [w, c] : r.terms_) c = -c;
        return r;
    }

    friend NCPoly operator+(const NCPoly& f, const NCPoly& g) {
        check(f, g);
        NCPoly r = f;
        add_to(r.terms_, g.terms_);
        return r;
    }
    friend NCPoly operator-(const NCPoly& f, const NCPoly& g) {
        check(f, g);
        NCPoly r = f;
        add_to(r.terms_, g.terms_, Scalar(-1));
        return r;
    }
    friend NCPoly operator*(const NCPoly& f, const NCPoly& g) {
        check(f, g);
        NCPoly r(f.alpha_);
        for (const auto& [u, a] : f.terms_)
            for (const auto& [v, b] : g.terms_) add_to(r.terms_, u + v, a * b);
        return r;
    }
    friend NCPoly operator*(const Scalar& c, const NCPoly& f) {
        NCPoly r(f.alpha_);
        if (c.is_zero()) return r;
        for (const auto& [w, x] : f.terms_) r.terms_.emplace(w, c * x);
        return r;
    }

    NCPoly& operator+=(const NCPoly& g) { return *this = *this + g; }
    NCPoly& operator-=(const NCPoly& g) { return *this = *this - g; }

    friend bool operator==(const NCPoly& f, const NCPoly& g) {
        return f.alpha_ == g.alpha_ && f.terms_ == g.terms_;
    }

    /// Terms of exactly degree n under the chosen grading.
    NCPoly slice(int n, Grading grading) const {
        NCPoly r(alpha_);
        for (const auto& [w, c] : terms_) {
            int d = grading == Grading::word_length ? static_cast<int>(w.size()) : alpha_->form_degree(w);
            if (d == n) r.terms_.emplace(w, c);
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [w, c] : terms_) {
            std::string body = term_str(w, c);
            if (out.empty())
                out = body;
            else if (body[0] == '-')
                out += " - " + body.substr(1);
            else
                out += " + " + body;
        }
        return out;
    }

private:
    static void check(const NCPoly& f, const NCPoly& g) {
        if (f.alpha_ != g.alpha_) throw AlphabetMismatch();
    }

    std::string term_str(const Word& w, const Scalar& c) const {
        std::string ws = alpha_->word_str(w);
        if (!ws.empty() && c.is_one()) return ws;
        if (!ws.empty() && (-c).is_one()) return "-" + ws;
        std::string cs = c.str();
        std::string coef;
        if (simple(cs) || (cs[0] == '-' && simple(cs.substr(1))) || wrapped(cs))
            coef = cs;
        else
            coef = "(" + cs + ")";
        return ws.empty() ? coef : coef + " " + ws;
    }

    /// A number, or a product of powers without spaces.
    static bool simple(const std::string& s) {
        if (s.empty()) return false;
        bool number = true;
        for (char ch : s) {
            if (ch == ' ' || ch == '(' || ch == ')' || ch == '+' || ch == '-') return false;
            if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '/') number = false;
        }
        return number || s.find('/') == std::string::npos;
    }

    /// One balanced parenthesized group.
    static bool wrapped(const std::string& s) {
        if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
        int depth = 0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            depth += s[k] == '(' ? 1 : (s[k] == ')' ? -1 : 0);
            if (depth == 0 && k + 1 < s.size()) return false;
        }
        return true;
    }

    AlphabetPtr alpha_;
    LinComb terms_;
};

inline NCPoly graded_slice(const NCPoly& f, int n, Grading g) { return f.slice(n, g); }

namespace detail {

class NCParser {
public:
    NCParser(AlphabetPtr a, std::string_view s)
        : alpha_(std::move(a)), s_(s), sp_(s, [this](const std::string& id) { return alpha_->find(id).has_value(); }) {}

    NCPoly parse_all() {
        NCPoly f = poly();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return f;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NCPoly poly() {
        NCPoly f(alpha_);
        Scalar sign(1);
        if (peek() == '-') {
            sign = Scalar(-1);
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        while (true) {
            f += sign * term();
            char c = peek();
            if (c == '+')
                sign = Scalar(1);
            else if (c == '-')
                sign = Scalar(-1);
            else
                return f;
            ++pos_;
        }
    }

    NCPoly term() {
        NCPoly t = NCPoly::constant(alpha_, Scalar(1));
        bool any = false;
        while (true) {
            char c = peek();
            if (c == '\0' || c == '+' || c == '-' || c == ')') break;
            if (c == '*') {
                ++pos_;
                continue;
            }
            if (c == '/') {
                ++pos_;
                std::size_t at = pos_;
                Scalar d = scalar_power();
                if (d.is_zero()) throw ParseError("division by zero", at);
                t = d.inverse() * t;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos_;
                std::string id;
                while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                    id += s_[pos_++];
                while (pos_ < s_.size() && s_[pos_] == '\'') id += s_[pos_++];
                if (auto l = alpha_->find(id)) {
                    t = t * NCPoly::monomial(alpha_, Word(1, *l));
                    any = true;
                    continue;
                }
                pos_ = start;
            }
            if (c == '(') {
                std::size_t start = pos_;
                try {
                    t = scalar_power() * t;
                } catch (const ParseError&) {
                    pos_ = start + 1;
                    NCPoly inner = poly();
                    if (peek() != ')') throw ParseError("expected ')'", pos_);
                    ++pos_;
                    t = t * inner;
                }
                any = true;
                continue;
            }
            t = scalar_power() * t;
            any = true;
        }
        if (!any) throw ParseError("empty term", pos_);
        return t;
    }

    Scalar scalar_power() {
        sp_.set_pos(pos_);
        Scalar v = sp_.power();
        pos_ = sp_.pos();
        return v;
    }

    AlphabetPtr alpha_;
    std::string_view s_;
    ScalarParser sp_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse text such as "x0 x1 - l01 x1 x0" over the given alphabet.
inline NCPoly parse_ncpoly(const AlphabetPtr& a, std::string_view text) { return detail::NCParser(a, text).parse_all(); }

}  // namespace qalg

#pragma once

// Parameter files: { "variables": [...], "conjugation": {name: expr}, "l": 4x4, "p": 4x4 }
// or { "family": name, "args": {name: expr} }. Entries are expression strings or integers.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qalg/errors.hpp"
#include "qalg/params.hpp"
#include "qalg/scalar.hpp"

namespace qalg {

using JsonPath = std::vector<std::variant<std::string, std::size_t>>;

namespace io_detail {

inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

/// Byte offsets of values inside already-validated JSON text.
class Locator {
public:
    explicit Locator(std::string_view t) : t_(t) {}

    /// Offset of the value at path, or of the deepest existing ancestor.
    std::size_t find(const JsonPath& path) const {
        std::size_t pos = ws(0);
        for (const auto& step : path) {
            auto next = child(pos, step);
            if (!next) break;
            pos = *next;
        }
        return pos;
    }

private:
    std::size_t ws(std::size_t p) const {
        while (p < t_.size() && std::isspace(static_cast<unsigned char>(t_[p]))) ++p;
        return p;
    }

    std::size_t skip_string(std::size_t p) const {
        for (++p; p < t_.size() && t_[p] != '"'; ++p)
            if (t_[p] == '\\') ++p;
        return p + 1;
    }

    std::size_t skip_value(std::size_t p) const {
        if (p >= t_.size()) return p;
        if (t_[p] == '"') return skip_string(p);
        if (t_[p] == '{' || t_[p] == '[') {
            int depth = 0;
            for (; p < t_.size(); ++p) {
                char c = t_[p];
                if (c == '"') {
                    p = skip_string(p) - 1;
                } else if (c == '{' || c == '[') {
                    ++depth;
                } else if (c == '}' || c == ']') {
                    if (--depth == 0) return p + 1;
                }
            }
            return p;
        }
        while (p < t_.size() && t_[p] != ',' && t_[p] != '}' && t_[p] != ']' && !std::isspace(static_cast<unsigned char>(t_[p]))) ++p;
        return p;
    }

    std::optional<std::size_t> child(std::size_t p, const std::variant<std::string, std::size_t>& step) const {
        if (p >= t_.size()) return std::nullopt;
        if (t_[p] == '{' && std::holds_alternative<std::string>(step)) {
            const auto& key = std::get<std::string>(step);
            p = ws(p + 1);
            while (p < t_.size() && t_[p] == '"') {
                std::size_t end = skip_string(p);
                std::string k = nlohmann::json::parse(t_.substr(p, end - p)).get<std::string>();
                p = ws(ws(end) + 1);
                if (k == key) return p;
                p = ws(skip_value(p));
                if (p < t_.size() && t_[p] == ',') p = ws(p + 1);
            }
        } else if (t_[p] == '[' && std::holds_alternative<std::size_t>(step)) {
            std::size_t idx = std::get<std::size_t>(step);
            p = ws(p + 1);
            for (std::size_t k = 0; p < t_.size() && t_[p] != ']'; ++k) {
                if (k == idx) return p;
                p = ws(skip_value(p));
                if (p < t_.size() && t_[p] == ',') p = ws(p + 1);
            }
        }
        return std::nullopt;
    }

    std::string_view t_;
};

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text), loc_(text) {}

    [[noreturn]] void fail(const JsonPath& path, const std::string& msg, std::size_t extra = 0) const {
        auto [l, c] = line_col(text_, loc_.find(path) + extra);
        throw SchemaError(msg, l, c);
    }

    Scalar scalar(const nlohmann::json& v, const JsonPath& path) const {
        std::string text;
        if (v.is_string()) {
            text = v.get<std::string>();
        } else if (v.is_number_integer()) {
            text = v.dump();
        } else {
            fail(path, "expected an expression string or an integer");
        }
        try {
            return parse_scalar(text);
        } catch (const ParseError& e) {
            fail(path, std::string("bad expression: ") + e.what(), v.is_string() ? 1 + e.offset : e.offset);
        }
    }

    Table table(const nlohmann::json& v, const JsonPath& path) const {
        if (!v.is_array() || v.size() != 4) fail(path, "expected a 4x4 array");
        Table t{};
        for (std::size_t m = 0; m < 4; ++m) {
            JsonPath row = path;
            row.emplace_back(m);
            if (!v[m].is_array() || v[m].size() != 4) fail(row, "expected a row of 4 entries");
            for (std::size_t n = 0; n < 4; ++n) {
                JsonPath cell = row;
                cell.emplace_back(n);
                t[m][n] = scalar(v[m][n], cell);
            }
        }
        return t;
    }

private:
    std::string_view text_;
    Locator loc_;
};

inline const std::map<std::string, std::set<std::string>>& family_args() {
    static const std::map<std::string, std::set<std::string>> m{
        {"classical", {}},
        {"sklyanin_k", {"a", "b"}},
        {"sklyanin_C", {"alpha", "beta"}},
        {"theta", {"lam"}},
        {"cdv", {"t0", "t1", "t2", "t3"}},
        {"zero_l", {"p10", "p20", "p30"}},
    };
    return m;
}

}  // namespace io_detail

/// Argument names accepted by each family constructor.
inline const std::set<std::string>& family_arg_names(const std::string& family) {
    const auto& m = io_detail::family_args();
    auto it = m.find(family);
    if (it == m.end()) throw SchemaError("unknown family '" + family + "'");
    return it->second;
}

inline ParameterSet params_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        auto [l, c] = io_detail::line_col(text, at);
        std::string msg = e.what();
        if (auto k = msg.find("syntax error"); k != std::string::npos) msg = msg.substr(k);
        throw SchemaError(msg, l, c);
    }
    io_detail::Reader rd(text);
    if (!j.is_object()) rd.fail({}, "expected an object");
    if (j.contains("family")) {
        for (const auto& [k, v] : j.items())
            if (k != "family" && k != "args") rd.fail({k}, "unexpected key '" + k + "' next to 'family'");
        if (!j["family"].is_string()) rd.fail({"family"}, "family must be a string");
        std::string fam = j["family"].get<std::string>();
        const auto& known = io_detail::family_args();
        auto it = known.find(fam);
        if (it == known.end()) rd.fail({"family"}, "unknown family '" + fam + "'");
        Bindings args;
        if (j.contains("args")) {
            if (!j["args"].is_object()) rd.fail({"args"}, "args must be an object");
            for (const auto& [k, v] : j["args"].items()) {
                if (!it->second.count(k)) rd.fail({"args", k}, "family " + fam + " takes no argument '" + k + "'");
                args[k] = rd.scalar(v, {"args", k});
            }
        }
        return make_family(fam, args);
    }
    for (const auto& [k, v] : j.items())
        if (k != "variables" && k != "conjugation" && k != "l" && k != "p") rd.fail({k}, "unexpected key '" + k + "'");
    for (const char* k : {"l", "p"})
        if (!j.contains(k)) rd.fail({}, std::string("missing key '") + k + "'");
    ParameterSet ps;
    ps.family = "custom";
    std::set<std::string> declared;
    if (j.contains("variables")) {
        const auto& v = j["variables"];
        if (!v.is_array()) rd.fail({"variables"}, "variables must be an array of names");
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (!v[k].is_string()) rd.fail({"variables", k}, "variable names must be strings");
            declared.insert(v[k].get<std::string>());
        }
    }
    ps.l = rd.table(j["l"], {"l"});
    ps.p = rd.table(j["p"], {"p"});
    for (const char* key : {"l", "p"}) {
        const Table& t = key[0] == 'l' ? ps.l : ps.p;
        for (std::size_t m = 0; m < 4; ++m)
            for (std::size_t n = 0; n < 4; ++n)
                for (const auto& v : t[m][n].variables())
                    if (!declared.count(v)) rd.fail({key, m, n}, "undeclared variable '" + v + "'");
    }
    if (j.contains("conjugation")) {
        const auto& c = j["conjugation"];
        if (!c.is_object()) rd.fail({"conjugation"}, "conjugation must be an object");
        for (const auto& [k, v] : c.items()) {
            if (!declared.count(k)) rd.fail({"conjugation", k}, "conjugation of undeclared variable '" + k + "'");
            ps.conjugation[k] = rd.scalar(v, {"conjugation", k});
        }
    }
    ps.variables = collect_variables(ps);
    ps.flags.hyp_l02 = classify_branch(ps);
    return ps;
}

/// Canonical explicit-table form; parsing it back and writing again gives identical text.
inline std::string params_to_json(const ParameterSet& ps) {
    nlohmann::ordered_json j;
    j["variables"] = ps.variables;
    auto conj = nlohmann::ordered_json::object();
    for (const auto& v : ps.variables) {
        auto it = ps.conjugation.find(v);
        if (it != ps.conjugation.end()) conj[v] = it->second.str();
    }
    j["conjugation"] = std::move(conj);
    for (const char* key : {"l", "p"}) {
        const Table& t = key[0] == 'l' ? ps.l : ps.p;
        auto rows = nlohmann::ordered_json::array();
        for (const auto& row : t) {
            auto r = nlohmann::ordered_json::array();
            for (const auto& x : row) r.push_back(x.str());
            rows.push_back(std::move(r));
        }
        j[key] = std::move(rows);
    }
    return j.dump(2) + "\n";
}

}  // namespace qalg

#pragma once

#include <string>

#include "qalg/params.hpp"
#include "qalg/scalar.hpp"

namespace qtest {

inline qalg::Scalar q(const std::string& s) { return qalg::parse_scalar(s); }

inline qalg::ParameterSet theta2() { return qalg::make_family("theta", {{"lam", q("2")}}); }
inline qalg::ParameterSet classical() { return qalg::make_family("classical"); }
inline qalg::ParameterSet sklyanin_k_concrete() { return qalg::make_family("sklyanin_k", {{"a", q("1/2")}, {"b", q("1/3")}}); }
inline qalg::ParameterSet sklyanin_C_concrete() { return qalg::make_family("sklyanin_C", {{"alpha", q("1/2")}, {"beta", q("1/3")}}); }

/// Unit-modulus phases, so the family is star compatible.
inline qalg::ParameterSet cdv_unit() {
    return qalg::make_family("cdv", {{"t0", q("1")}, {"t1", q("3/5 + 4/5*i")}, {"t2", q("5/13 + 12/13*i")}, {"t3", q("8/17 + 15/17*i")}});
}

inline qalg::ParameterSet cdv_real() {
    return qalg::make_family("cdv", {{"t0", q("1/2")}, {"t1", q("1/3")}, {"t2", q("2")}, {"t3", q("3")}});
}

}  // namespace qtest

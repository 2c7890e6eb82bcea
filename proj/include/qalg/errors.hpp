#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qalg {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct DenominatorVanishes : Error {
    explicit DenominatorVanishes(const std::string& term)
        : Error("denominator vanishes under substitution: " + term) {}
};

struct ParseError : Error {
    std::size_t offset;
    ParseError(const std::string& what, std::size_t at)
        : Error(what + " at offset " + std::to_string(at)), offset(at) {}
};

struct AlphabetMismatch : Error {
    AlphabetMismatch() : Error("operands live over different alphabets") {}
};

struct NonTermination : Error {
    using Error::Error;
};

struct DegreeBudgetExceeded : Error {
    using Error::Error;
};

struct DegenerateFamilyParameters : Error {
    using Error::Error;
};

struct UndeclaredConjugation : Error {
    explicit UndeclaredConjugation(const std::string& var)
        : Error("no conjugation rule for indeterminate " + var) {}
};

struct CentralityNotSatisfied : Error {
    using Error::Error;
};

struct AssumptionViolated : Error {
    using Error::Error;
};

struct OrbitInconsistency : Error {
    using Error::Error;
};

struct StarNotCompatible : Error {
    using Error::Error;
};

/// Malformed parameter file or command input.
struct SchemaError : Error {
    std::size_t line = 0;
    std::size_t column = 0;
    using Error::Error;
    SchemaError(const std::string& what, std::size_t l, std::size_t c)
        : Error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what), line(l), column(c) {}
};

}  // namespace qalg

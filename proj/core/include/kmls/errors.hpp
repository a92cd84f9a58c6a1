#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kmls {

// Base for every error the library raises on its own behalf. Precondition
// violations that a caller could have checked locally (bad sizes, mismatched
// dimensions, out-of-range slots) throw std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A weighted draw was requested but the total weight is zero, i.e. every
// point coincides with a center.
class ZeroMassError : public Error {
public:
    using Error::Error;
};

// More centers requested than the instance has distinct point locations.
class InfeasibleK : public Error {
public:
    using Error::Error;
};

// The exhaustive optimum was requested for an instance above the enumeration
// bounds it can handle.
class OracleTooLarge : public Error {
public:
    using Error::Error;
};

// Malformed input data; carries the 1-based line number of the offending row.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace kmls

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated (e.g. mismatched truncation orders).
class ContractError : public Error {
public:
    using Error::Error;
};

class NotInvertibleError : public Error {
public:
    NotInvertibleError() : Error("not invertible as truncated series") {}
    explicit NotInvertibleError(const std::string& what) : Error(what) {}
};

/// Syntax error in a q-expression; `column` is 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t column, const std::string& message)
        : Error("column " + std::to_string(column) + ": " + message), column_(column)
    {
    }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

/// Evaluation failed: unbound parameter, negative q-power, non-terminating sum, ...
class EvalError : public Error {
public:
    using Error::Error;
};

class UnknownIdError : public Error {
public:
    explicit UnknownIdError(const std::string& id) : Error("unknown id '" + id + "'"), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

/// A Laurent expansion could not be given a finite certified z-window.
class WindowError : public Error {
public:
    using Error::Error;
};

}  // namespace qsv

#pragma once

#include <stdexcept>
#include <string>

namespace linkspam {

// Base class for all library errors. The CLI maps each subclass to a
// stable category token in its single-line error output.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text. line() is 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Lookup of a page or domain that is not in the graph/clustering.
class NotFoundError : public Error {
public:
    using Error::Error;
};

// Precondition violation on an operation's inputs.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

} // namespace linkspam

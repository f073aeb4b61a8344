#ifndef CUEPHRASE_ERRORS_HPP
#define CUEPHRASE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cuephrase {

// Base for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad CLI arguments, malformed experiment configs, unknown feature-set names.
class UsageError : public Error {
public:
    using Error::Error;
};

// File system trouble: missing corpus files, unwritable outputs.
class IoError : public Error {
public:
    using Error::Error;
};

// Schema violations: out-of-vocabulary values, feature/schema mismatches.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Malformed corpus or model text; carries a line number in the message.
class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace cuephrase

#endif

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mbt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, std::string expected, std::string_view text)
        : Error("parse error at " + std::to_string(position) + ": expected " + expected +
                " in '" + std::string(text) + "'"),
          position_(position),
          expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class UnknownRule : public Error {
public:
    explicit UnknownRule(const std::string& id) : Error("unknown rule: " + id) {}
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class ConfigMismatch : public Error {
public:
    using Error::Error;
};

class AmbiguousCompletion : public Error {
public:
    using Error::Error;
};

class CompletionStuck : public Error {
public:
    using Error::Error;
};

class VersionMismatch : public Error {
public:
    using Error::Error;
};

class FingerprintMismatch : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace mbt

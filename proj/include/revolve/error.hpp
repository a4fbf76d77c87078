#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace revolve {

// Root of every exception thrown by the library. The CLI maps the three
// families below onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: curve text, intervals, option values.
class InputError : public Error {
public:
    using Error::Error;
};

// The curve does not satisfy what a method requires of it.
class HypothesisError : public Error {
public:
    using Error::Error;
};

// A numeric routine could not deliver its accuracy contract.
class NumericError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public InputError {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnknownIdentifier : public InputError {
public:
    UnknownIdentifier(std::string name, std::size_t offset);

    const std::string& name() const noexcept { return name_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::string name_;
    std::size_t offset_;
};

class UnboundIdentifier : public InputError {
public:
    explicit UnboundIdentifier(std::string name);

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class InvalidArgument : public InputError {
public:
    using InputError::InputError;
};

class DomainError : public NumericError {
public:
    using NumericError::NumericError;
};

class NonFiniteEvaluation : public NumericError {
public:
    explicit NonFiniteEvaluation(double where);

    double where() const noexcept { return where_; }

private:
    double where_;
};

class NoSignChange : public NumericError {
public:
    using NumericError::NumericError;
};

class MaxIterExceeded : public NumericError {
public:
    using NumericError::NumericError;
};

class DivergedWithoutBracket : public NumericError {
public:
    using NumericError::NumericError;
};

class NotMonotone : public HypothesisError {
public:
    using HypothesisError::HypothesisError;
};

class NotInvertible : public HypothesisError {
public:
    using HypothesisError::HypothesisError;
};

class NegativeCurve : public HypothesisError {
public:
    using HypothesisError::HypothesisError;
};

class AlternationViolation : public HypothesisError {
public:
    using HypothesisError::HypothesisError;
};

class PreconditionViolated : public HypothesisError {
public:
    using HypothesisError::HypothesisError;
};

}  // namespace revolve

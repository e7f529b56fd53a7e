#pragma once

#include <stdexcept>
#include <string>

namespace leleec {

enum class ErrorKind {
    parse,
    validation,
    overlapping_input,
    duplicate_candidate,
    inconsistent_annotation,
    infeasible_assignment,
    cost_mismatch,
    infeasible,
    too_large,
    io,
};

const char* to_string(ErrorKind kind);

/// Base class for every error raised by the library. The kind drives the
/// CLI exit code mapping.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0)
        : Error(ErrorKind::parse, line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
protected:
    ValidationError(ErrorKind kind, const std::string& what) : Error(kind, what) {}
};

class OverlappingInput : public ValidationError {
public:
    OverlappingInput(int a, int b)
        : ValidationError(ErrorKind::overlapping_input,
                          "features " + std::to_string(a) + " and " + std::to_string(b) +
                              " overlap or touch"),
          a_(a), b_(b) {}
    int first() const noexcept { return a_; }
    int second() const noexcept { return b_; }

private:
    int a_;
    int b_;
};

class DuplicateCandidate : public Error {
public:
    explicit DuplicateCandidate(const std::string& what) : Error(ErrorKind::duplicate_candidate, what) {}
};

class InconsistentAnnotation : public Error {
public:
    explicit InconsistentAnnotation(const std::string& what)
        : Error(ErrorKind::inconsistent_annotation, what) {}
};

class InfeasibleAssignment : public Error {
public:
    explicit InfeasibleAssignment(const std::string& what)
        : Error(ErrorKind::infeasible_assignment, what) {}
};

class CostMismatch : public Error {
public:
    explicit CostMismatch(const std::string& what) : Error(ErrorKind::cost_mismatch, what) {}
};

class Infeasible : public Error {
public:
    explicit Infeasible(const std::string& what) : Error(ErrorKind::infeasible, what) {}
};

class TooLarge : public Error {
public:
    explicit TooLarge(const std::string& what) : Error(ErrorKind::too_large, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace leleec

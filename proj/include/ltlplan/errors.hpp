#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltlplan {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed LTL or guard text. `offset` is a byte offset into the input.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnknownOperator : public Error {
public:
    UnknownOperator(std::size_t offset, const std::string& op);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Malformed `.nba` or model file; `line` is 1-based, 0 when not line-oriented.
class FormatError : public Error {
public:
    FormatError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class UnknownAtom : public Error {
public:
    explicit UnknownAtom(const std::string& atom);
};

class NegativeWeight : public FormatError {
public:
    NegativeWeight(int robot, const std::string& src, const std::string& dst, double w);
};

class DanglingEdge : public FormatError {
public:
    DanglingEdge(int robot, const std::string& state);
};

class MissingInitial : public FormatError {
public:
    explicit MissingInitial(int robot);
};

class InvalidTransition : public Error {
public:
    using Error::Error;
};

class DuplicateNode : public Error {
public:
    using Error::Error;
};

/// A state space or automaton larger than the configured bound. `count` saturates at UINT64_MAX.
class CapacityExceeded : public Error {
public:
    CapacityExceeded(std::uint64_t count, std::uint64_t limit, const std::string& what);
    std::uint64_t count() const { return count_; }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t count_;
    std::uint64_t limit_;
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::uint64_t expansions);
    std::uint64_t expansions() const { return expansions_; }

private:
    std::uint64_t expansions_;
};

}  // namespace ltlplan

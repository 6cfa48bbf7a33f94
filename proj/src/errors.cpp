#include "ltlplan/errors.hpp"

namespace ltlplan {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) out += ", ";
        out += expected[i];
    }
    return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : Error("syntax error at offset " + std::to_string(offset) + ": expected one of {" +
            join_expected(expected) + "} but found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

UnknownOperator::UnknownOperator(std::size_t offset, const std::string& op)
    : Error("unknown operator '" + op + "' at offset " + std::to_string(offset)), offset_(offset) {}

FormatError::FormatError(std::size_t line, const std::string& what)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

UnknownAtom::UnknownAtom(const std::string& atom)
    : Error("guard references atom '" + atom + "' outside the automaton alphabet") {}

NegativeWeight::NegativeWeight(int robot, const std::string& src, const std::string& dst, double w)
    : FormatError(0, "robot " + std::to_string(robot) + ": edge " + src + " -> " + dst +
                         " has negative weight " + std::to_string(w)) {}

DanglingEdge::DanglingEdge(int robot, const std::string& state)
    : FormatError(0, "robot " + std::to_string(robot) + ": edge refers to unknown state '" + state + "'") {}

MissingInitial::MissingInitial(int robot)
    : FormatError(0, "robot " + std::to_string(robot) + ": initial state missing or not among states") {}

CapacityExceeded::CapacityExceeded(std::uint64_t count, std::uint64_t limit, const std::string& what)
    : Error(what + " has " + std::to_string(count) + " states, exceeding the limit of " +
            std::to_string(limit)),
      count_(count),
      limit_(limit) {}

BudgetExceeded::BudgetExceeded(std::uint64_t expansions)
    : Error("search budget exhausted after " + std::to_string(expansions) + " expansions"),
      expansions_(expansions) {}

}  // namespace ltlplan

#pragma once

#include <functional>
#include <memory>
#include <string>

namespace isoprof {

/// Parses a one-variable arithmetic expression in `t` with the grammar
/// +, -, *, /, ^ (right-associative), pow(a,b), exp, log, sinh, cosh,
/// tanh, sin, cos, parentheses, numeric literals and the constant pi.
/// Throws DomainError on malformed input.
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace isoprof

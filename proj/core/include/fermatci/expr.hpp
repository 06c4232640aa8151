#ifndef FERMATCI_EXPR_HPP
#define FERMATCI_EXPR_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fermatci/ratfunc.hpp"

namespace fermatci {

/// Parses `+ - * / ^`, parentheses, integer literals and generator names into
/// an element of F_p(names). `^` binds tightest and takes a non-negative
/// integer literal. Whitespace is insignificant. Errors are ParseError with
/// positions offset by (line, column) of the first character of `text`.
RatFunc parse_expression(std::string_view text, std::span<const std::string> names,
                         PrimeField field, std::size_t line = 1, std::size_t column = 1);

/// A sequence of expressions separated by whitespace or commas. An expression
/// extends as far as the grammar allows, so `s - t u` is two expressions.
std::vector<RatFunc> parse_expression_list(std::string_view text,
                                           std::span<const std::string> names, PrimeField field,
                                           std::size_t line = 1, std::size_t column = 1);

bool is_identifier(std::string_view s) noexcept;

}  // namespace fermatci

#endif  // FERMATCI_EXPR_HPP

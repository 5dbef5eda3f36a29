// Map files and the expression trees parsed out of them.
//
// File shape, line oriented, '#' starts a comment anywhere:
//
//   vars X1 X2            # required, first
//   params a b            # optional, before any component
//   bind a = 3/2          # optional, each parameter at most once
//   F1 = X1 + a*X2^2
//   F2 = X2 - 1/2*X1^3
//
// Components must appear in order F1..Fn, one per line, n = variable count.
// Expressions use + - * / ^ and parentheses; '^' takes a nonnegative
// integer literal; a denominator must not contain variables; and the only
// implicit product is a numeric literal immediately followed by a symbol
// ("2X1" but never "X1 X2" or "2 X1").
#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "polyinv/polymap.hpp"
#include "polyinv/rational.hpp"

namespace polyinv {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Literal, Variable, Parameter, Add, Sub, Neg, Mul, Div, Pow };

  Kind kind;
  Rational literal;            // Literal
  int symbol = -1;             // Variable / Parameter index
  ExprPtr left, right;         // binary nodes; Neg and Pow use left only
  std::uint64_t exponent = 0;  // Pow
};

struct MapDocument {
  std::vector<std::string> variables;
  std::vector<std::string> parameters;
  std::map<std::string, Rational> file_bindings;
  std::vector<ExprPtr> components;  // one per variable, in order
};

MapDocument parse_map(std::istream& in);
MapDocument parse_map_text(const std::string& text);
MapDocument parse_map_file(const std::string& path);  // InputError if unreadable

// One expression over the given variables, no parameters involved.
Polynomial parse_polynomial(const std::string& text,
                            const std::vector<std::string>& variables);

// Matrix file: optional comments/blank lines, then the size n, then n*n
// rational entries in row-major order, all whitespace separated.
RationalMatrix parse_matrix(std::istream& in);
RationalMatrix parse_matrix_file(const std::string& path);

}  // namespace polyinv

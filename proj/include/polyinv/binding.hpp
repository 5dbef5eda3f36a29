// Turning a parsed map document into a concrete polynomial map by giving
// every parameter a rational value — explicitly, from the file, or drawn
// from a seeded generator.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polyinv/parser.hpp"
#include "polyinv/polymap.hpp"

namespace polyinv {

struct RandomBindOptions {
  std::uint64_t seed = 0;
  long range = 10;  // numerators from [-range, range], denominators from [1, range]
  // Names that must draw a nonzero value on top of the automatic rule for
  // parameters appearing inside denominators.
  std::set<std::string> force_nonzero;
};

struct BindingOutcome {
  PolynomialMap map;
  std::vector<std::pair<std::string, Rational>> values;  // declaration order
  bool random_used = false;
  std::uint64_t seed = 0;
  long range = 0;
};

// Precedence per parameter: override, then file binding, then a random draw
// when random options are present, otherwise UnboundParameter. Draws happen
// in declaration order (skipping bound parameters), so a fixed seed yields
// a reproducible binding. A parameter sitting inside some denominator is
// redrawn until nonzero; an explicit zero there still fails later with
// DivisionByZeroParameter when the expressions are evaluated.
BindingOutcome bind_parameters(const MapDocument& doc,
                               const std::map<std::string, Rational>& overrides,
                               const std::optional<RandomBindOptions>& random = std::nullopt);

// Parameter names occurring anywhere inside a denominator of any component.
std::set<std::string> denominator_parameters(const MapDocument& doc);

// Expression to polynomial in an n-variable ring. param_values must cover
// every parameter index that occurs in the tree; param_names is used for
// error messages only.
Polynomial evaluate_expression(const ExprNode* e, int vars,
                               const std::vector<Rational>& param_values,
                               const std::vector<std::string>& param_names);

}  // namespace polyinv

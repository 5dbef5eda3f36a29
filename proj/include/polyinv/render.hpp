// Text and JSON rendering. Term order on the wire is the canonical storage
// order, so output is deterministic for equal inputs; coefficients print as
// exact integer or num/den strings, never floats.
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "polyinv/polymap.hpp"

namespace polyinv {

std::vector<std::string> default_variable_names(int n);  // X1..Xn
std::vector<std::string> inverse_variable_names(int n);  // Y1..Yn

// "0", "Y1 - Y2^2", "3/2*X1^2*X2 + 5", ... Unit coefficients drop the
// numeric factor, every explicit product uses '*'.
std::string render_polynomial(const Polynomial& p, const std::vector<std::string>& names);

// One "<prefix><i> = <polynomial>" line per component, each ending in '\n'.
std::string render_map(const PolynomialMap& f, const std::vector<std::string>& names,
                       const std::string& prefix);

nlohmann::json rational_to_json(const Rational& q);  // exact string
nlohmann::json polynomial_to_json(const Polynomial& p,
                                  const std::vector<std::string>& names);
nlohmann::json map_to_json(const PolynomialMap& f, const std::vector<std::string>& names);

}  // namespace polyinv

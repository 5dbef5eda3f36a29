#include "polyinv/render.hpp"

#include "polyinv/errors.hpp"

namespace polyinv {

namespace {

std::vector<std::string> numbered_names(int n, const char* stem) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

}  // namespace

std::vector<std::string> default_variable_names(int n) { return numbered_names(n, "X"); }
std::vector<std::string> inverse_variable_names(int n) { return numbered_names(n, "Y"); }

std::string render_polynomial(const Polynomial& p, const std::vector<std::string>& names) {
  if (static_cast<int>(names.size()) != p.vars())
    throw DimensionMismatch("rendering needs one name per variable");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool negative = is_negative(t.coeff);
    if (first) {
      if (negative) out += '-';
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    Rational magnitude = negative ? Rational(-t.coeff) : t.coeff;
    std::string factors;
    for (std::size_t i = 0; i < t.mono.exps.size(); ++i) {
      std::uint32_t e = t.mono.exps[i];
      if (e == 0) continue;
      if (!factors.empty()) factors += '*';
      factors += names[i];
      if (e > 1) factors += '^' + std::to_string(e);
    }
    if (factors.empty()) {
      out += to_string(magnitude);
    } else {
      if (magnitude != 1) out += to_string(magnitude) + '*';
      out += factors;
    }
  }
  return out;
}

std::string render_map(const PolynomialMap& f, const std::vector<std::string>& names,
                       const std::string& prefix) {
  std::string out;
  for (int i = 0; i < f.dimension(); ++i) {
    out += prefix + std::to_string(i + 1) + " = " +
           render_polynomial(f.components[static_cast<std::size_t>(i)], names) + "\n";
  }
  return out;
}

nlohmann::json rational_to_json(const Rational& q) { return to_string(q); }

nlohmann::json polynomial_to_json(const Polynomial& p,
                                  const std::vector<std::string>& names) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : p.terms()) {
    nlohmann::json exps = nlohmann::json::array();
    for (auto e : t.mono.exps) exps.push_back(e);
    // Numerator and denominator ride as decimal strings: consumers with
    // 64-bit integer parsers would silently mangle the big values that exact
    // arithmetic routinely produces.
    terms.push_back({{"exponents", exps},
                     {"numerator", t.coeff.get_num().get_str()},
                     {"denominator", t.coeff.get_den().get_str()}});
  }
  return {{"text", render_polynomial(p, names)}, {"terms", terms}};
}

nlohmann::json map_to_json(const PolynomialMap& f, const std::vector<std::string>& names) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : f.components) comps.push_back(polynomial_to_json(c, names));
  return {{"variables", names}, {"components", comps}};
}

}  // namespace polyinv

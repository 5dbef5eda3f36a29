#include "polyinv/binding.hpp"

#include <limits>
#include <random>
#include <stdexcept>

#include "polyinv/errors.hpp"

namespace polyinv {

namespace {

bool expr_has_variable(const ExprNode* e) {
  if (!e) return false;
  if (e->kind == ExprNode::Kind::Variable) return true;
  return expr_has_variable(e->left.get()) || expr_has_variable(e->right.get());
}

const ExprNode* find_parameter(const ExprNode* e) {
  if (!e) return nullptr;
  if (e->kind == ExprNode::Kind::Parameter) return e;
  if (const ExprNode* p = find_parameter(e->left.get())) return p;
  return find_parameter(e->right.get());
}

Rational eval_const(const ExprNode* e, const std::vector<Rational>& pv,
                    const std::vector<std::string>& pnames) {
  switch (e->kind) {
    case ExprNode::Kind::Literal: return e->literal;
    case ExprNode::Kind::Parameter: return pv.at(static_cast<std::size_t>(e->symbol));
    case ExprNode::Kind::Variable:
      throw std::logic_error("constant evaluation reached a variable");
    case ExprNode::Kind::Add:
      return eval_const(e->left.get(), pv, pnames) + eval_const(e->right.get(), pv, pnames);
    case ExprNode::Kind::Sub:
      return eval_const(e->left.get(), pv, pnames) - eval_const(e->right.get(), pv, pnames);
    case ExprNode::Kind::Neg: return -eval_const(e->left.get(), pv, pnames);
    case ExprNode::Kind::Mul:
      return eval_const(e->left.get(), pv, pnames) * eval_const(e->right.get(), pv, pnames);
    case ExprNode::Kind::Div: {
      Rational den = eval_const(e->right.get(), pv, pnames);
      if (is_zero(den)) {
        const ExprNode* p = find_parameter(e->right.get());
        throw DivisionByZeroParameter(p ? pnames.at(static_cast<std::size_t>(p->symbol)) : "");
      }
      return eval_const(e->left.get(), pv, pnames) / den;
    }
    case ExprNode::Kind::Pow:
      return rational_pow(eval_const(e->left.get(), pv, pnames),
                          static_cast<unsigned long>(e->exponent));
  }
  throw std::logic_error("unhandled expression node");
}

void collect_parameters(const ExprNode* e, std::set<std::string>& out,
                        const std::vector<std::string>& pnames) {
  if (!e) return;
  if (e->kind == ExprNode::Kind::Parameter)
    out.insert(pnames.at(static_cast<std::size_t>(e->symbol)));
  collect_parameters(e->left.get(), out, pnames);
  collect_parameters(e->right.get(), out, pnames);
}

void collect_denominator_parameters(const ExprNode* e, std::set<std::string>& out,
                                    const std::vector<std::string>& pnames) {
  if (!e) return;
  if (e->kind == ExprNode::Kind::Div)
    collect_parameters(e->right.get(), out, pnames);
  collect_denominator_parameters(e->left.get(), out, pnames);
  collect_denominator_parameters(e->right.get(), out, pnames);
}

// Unbiased draw from [lo, hi] using only the raw 64-bit stream, so results
// are identical across platforms and library versions.
long draw_int(std::mt19937_64& rng, long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t zone = std::numeric_limits<std::uint64_t>::max() / span * span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= zone);
  return lo + static_cast<long>(x % span);
}

}  // namespace

Polynomial evaluate_expression(const ExprNode* e, int vars,
                               const std::vector<Rational>& param_values,
                               const std::vector<std::string>& param_names) {
  switch (e->kind) {
    case ExprNode::Kind::Literal: return Polynomial::constant(vars, e->literal);
    case ExprNode::Kind::Variable: return Polynomial::variable(vars, e->symbol);
    case ExprNode::Kind::Parameter:
      return Polynomial::constant(vars,
                                  param_values.at(static_cast<std::size_t>(e->symbol)));
    case ExprNode::Kind::Add:
      return add(evaluate_expression(e->left.get(), vars, param_values, param_names),
                 evaluate_expression(e->right.get(), vars, param_values, param_names));
    case ExprNode::Kind::Sub:
      return sub(evaluate_expression(e->left.get(), vars, param_values, param_names),
                 evaluate_expression(e->right.get(), vars, param_values, param_names));
    case ExprNode::Kind::Neg:
      return neg(evaluate_expression(e->left.get(), vars, param_values, param_names));
    case ExprNode::Kind::Mul:
      return mul(evaluate_expression(e->left.get(), vars, param_values, param_names),
                 evaluate_expression(e->right.get(), vars, param_values, param_names));
    case ExprNode::Kind::Div: {
      Rational den = eval_const(e->right.get(), param_values, param_names);
      if (is_zero(den)) {
        const ExprNode* p = find_parameter(e->right.get());
        throw DivisionByZeroParameter(
            p ? param_names.at(static_cast<std::size_t>(p->symbol)) : "");
      }
      return mul_scalar(
          evaluate_expression(e->left.get(), vars, param_values, param_names),
          Rational(1) / den);
    }
    case ExprNode::Kind::Pow: {
      if (!expr_has_variable(e->left.get()))
        return Polynomial::constant(
            vars, rational_pow(eval_const(e->left.get(), param_values, param_names),
                               static_cast<unsigned long>(e->exponent)));
      return pow(evaluate_expression(e->left.get(), vars, param_values, param_names),
                 e->exponent);
    }
  }
  throw std::logic_error("unhandled expression node");
}

std::set<std::string> denominator_parameters(const MapDocument& doc) {
  std::set<std::string> out;
  for (const auto& comp : doc.components)
    collect_denominator_parameters(comp.get(), out, doc.parameters);
  return out;
}

BindingOutcome bind_parameters(const MapDocument& doc,
                               const std::map<std::string, Rational>& overrides,
                               const std::optional<RandomBindOptions>& random) {
  for (const auto& [name, value] : overrides) {
    (void)value;
    bool known = false;
    for (const auto& p : doc.parameters)
      if (p == name) { known = true; break; }
    if (!known) throw InputError("cannot bind unknown parameter '" + name + "'");
  }
  if (random && random->range < 1)
    throw InputError("random binding range must be at least 1");

  const std::set<std::string> in_denominator = denominator_parameters(doc);
  std::mt19937_64 rng(random ? random->seed : 0);

  BindingOutcome out;
  if (random) {
    out.seed = random->seed;
    out.range = random->range;
  }
  std::vector<Rational> values;
  values.reserve(doc.parameters.size());
  for (const auto& name : doc.parameters) {
    Rational v;
    if (auto it = overrides.find(name); it != overrides.end()) {
      v = it->second;
    } else if (auto it2 = doc.file_bindings.find(name); it2 != doc.file_bindings.end()) {
      v = it2->second;
    } else if (random) {
      const bool must_be_nonzero =
          in_denominator.count(name) || random->force_nonzero.count(name);
      long num, den;
      do {
        num = draw_int(rng, -random->range, random->range);
        den = draw_int(rng, 1, random->range);
      } while (must_be_nonzero && num == 0);
      v = make_rational(Integer(num), Integer(den));
      out.random_used = true;
    } else {
      throw UnboundParameter(name);
    }
    values.push_back(v);
    out.values.emplace_back(name, v);
  }

  const int n = static_cast<int>(doc.variables.size());
  std::vector<Polynomial> comps;
  comps.reserve(doc.components.size());
  for (const auto& comp : doc.components)
    comps.push_back(evaluate_expression(comp.get(), n, values, doc.parameters));
  out.map = PolynomialMap(std::move(comps));
  return out;
}

}  // namespace polyinv

#include "polyinv/parser.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "polyinv/binding.hpp"
#include "polyinv/errors.hpp"

namespace polyinv {

namespace {

struct Token {
  enum class Kind { Name, Number, Plus, Minus, Star, Slash, Caret, LParen, RParen, Equals, End };
  Kind kind;
  std::string text;
  int col_start = 0;  // 1-based
  int col_end = 0;    // one past the last character
};

const char* token_noun(Token::Kind k) {
  switch (k) {
    case Token::Kind::Name: return "name";
    case Token::Kind::Number: return "number";
    case Token::Kind::Plus: return "'+'";
    case Token::Kind::Minus: return "'-'";
    case Token::Kind::Star: return "'*'";
    case Token::Kind::Slash: return "'/'";
    case Token::Kind::Caret: return "'^'";
    case Token::Kind::LParen: return "'('";
    case Token::Kind::RParen: return "')'";
    case Token::Kind::Equals: return "'='";
    case Token::Kind::End: return "end of line";
  }
  return "token";
}

std::vector<Token> lex_line(const std::string& line, int line_no) {
  std::vector<Token> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') { ++i; continue; }
    Token t;
    t.col_start = static_cast<int>(i) + 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
      t.kind = Token::Kind::Name;
      t.text = line.substr(i, j - i);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      t.kind = Token::Kind::Number;
      t.text = line.substr(i, j - i);
      i = j;
    } else {
      switch (c) {
        case '+': t.kind = Token::Kind::Plus; break;
        case '-': t.kind = Token::Kind::Minus; break;
        case '*': t.kind = Token::Kind::Star; break;
        case '/': t.kind = Token::Kind::Slash; break;
        case '^': t.kind = Token::Kind::Caret; break;
        case '(': t.kind = Token::Kind::LParen; break;
        case ')': t.kind = Token::Kind::RParen; break;
        case '=': t.kind = Token::Kind::Equals; break;
        default:
          throw ParseError(line_no, static_cast<int>(i) + 1,
                           std::string("unexpected character '") + c + "'");
      }
      t.text = std::string(1, c);
      ++i;
    }
    t.col_end = static_cast<int>(i) + 1;
    toks.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.col_start = end.col_end = static_cast<int>(line.size()) + 1;
  toks.push_back(end);
  return toks;
}

ExprPtr make_literal(Rational v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Literal;
  n->literal = std::move(v);
  return n;
}

ExprPtr make_symbol(ExprNode::Kind kind, int index) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->symbol = index;
  return n;
}

ExprPtr make_binary(ExprNode::Kind kind, ExprPtr l, ExprPtr r) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

ExprPtr make_unary(ExprNode::Kind kind, ExprPtr operand, std::uint64_t exponent = 0) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->left = std::move(operand);
  n->exponent = exponent;
  return n;
}

bool subtree_has_variable(const ExprNode* e, int* which) {
  if (!e) return false;
  if (e->kind == ExprNode::Kind::Variable) {
    if (which) *which = e->symbol;
    return true;
  }
  return subtree_has_variable(e->left.get(), which) ||
         subtree_has_variable(e->right.get(), which);
}

// Recursive descent over one already-lexed line.
struct ExprParser {
  const std::vector<Token>& toks;
  std::size_t pos;
  int line_no;
  const std::map<std::string, int>& var_index;
  const std::map<std::string, int>& param_index;
  const std::vector<std::string>& var_names;

  const Token& peek() const { return toks[pos]; }
  const Token& take() { return toks[pos++]; }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    throw ParseError(line_no, at.col_start, msg);
  }

  ExprPtr parse_expression() {
    ExprPtr lhs = parse_term();
    while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
      bool plus = take().kind == Token::Kind::Plus;
      ExprPtr rhs = parse_term();
      lhs = make_binary(plus ? ExprNode::Kind::Add : ExprNode::Kind::Sub,
                        std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (true) {
      const Token& t = peek();
      if (t.kind == Token::Kind::Star) {
        take();
        lhs = make_binary(ExprNode::Kind::Mul, std::move(lhs), parse_factor());
      } else if (t.kind == Token::Kind::Slash) {
        Token slash = take();
        ExprPtr rhs = parse_factor();
        int var = -1;
        if (subtree_has_variable(rhs.get(), &var))
          fail(slash, "variable '" + var_names[static_cast<std::size_t>(var)] +
                          "' is not allowed in a denominator");
        lhs = make_binary(ExprNode::Kind::Div, std::move(lhs), std::move(rhs));
      } else if (t.kind == Token::Kind::Name && pos > 0 &&
                 toks[pos - 1].kind == Token::Kind::Number &&
                 toks[pos - 1].col_end == t.col_start) {
        // the one sanctioned implicit product: "2X1", "3a" — literal glued to a symbol
        lhs = make_binary(ExprNode::Kind::Mul, std::move(lhs), parse_factor());
      } else {
        break;
      }
    }
    return lhs;
  }

  ExprPtr parse_factor() {
    if (peek().kind == Token::Kind::Minus) {
      take();
      return make_unary(ExprNode::Kind::Neg, parse_factor());
    }
    ExprPtr atom = parse_atom();
    if (peek().kind == Token::Kind::Caret) {
      Token caret = take();
      if (peek().kind != Token::Kind::Number)
        fail(peek(), "'^' needs a nonnegative integer exponent");
      Token num = take();
      std::uint64_t e = 0;
      try {
        e = std::stoull(num.text);
      } catch (const std::out_of_range&) {
        fail(num, "exponent is too large");
      }
      (void)caret;
      return make_unary(ExprNode::Kind::Pow, std::move(atom), e);
    }
    return atom;
  }

  ExprPtr parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Number: {
        Token num = take();
        return make_literal(Rational(Integer(num.text)));
      }
      case Token::Kind::Name: {
        Token name = take();
        if (auto it = var_index.find(name.text); it != var_index.end())
          return make_symbol(ExprNode::Kind::Variable, it->second);
        if (auto it = param_index.find(name.text); it != param_index.end())
          return make_symbol(ExprNode::Kind::Parameter, it->second);
        fail(name, "unknown symbol '" + name.text + "'");
      }
      case Token::Kind::LParen: {
        take();
        ExprPtr inner = parse_expression();
        if (peek().kind != Token::Kind::RParen) fail(peek(), "expected ')'");
        take();
        return inner;
      }
      default:
        fail(t, std::string("expected a value, found ") + token_noun(t.kind));
    }
  }
};

// Name list after a "vars"/"params" keyword token.
std::vector<std::string> read_name_list(const std::vector<Token>& toks, int line_no,
                                        const char* directive) {
  std::vector<std::string> names;
  std::size_t i = 1;
  while (toks[i].kind == Token::Kind::Name) names.push_back(toks[i++].text);
  if (toks[i].kind != Token::Kind::End)
    throw ParseError(line_no, toks[i].col_start,
                     std::string("'") + directive + "' takes a list of names");
  if (names.empty())
    throw ParseError(line_no, toks[0].col_end,
                     std::string("'") + directive + "' needs at least one name");
  return names;
}

bool reserved_word(const std::string& s) {
  return s == "vars" || s == "params" || s == "bind";
}

// Tokens of a "bind x = ..." value: a signed rational literal.
Rational read_bind_value(const std::vector<Token>& toks, std::size_t i, int line_no) {
  std::string text;
  bool expect_digits = true;
  if (toks[i].kind == Token::Kind::Minus) {
    text += '-';
    ++i;
  }
  for (; toks[i].kind != Token::Kind::End; ++i) {
    if (toks[i].kind == Token::Kind::Number) {
      text += toks[i].text;
      expect_digits = false;
    } else if (toks[i].kind == Token::Kind::Slash && !expect_digits) {
      text += '/';
      expect_digits = true;
    } else {
      throw ParseError(line_no, toks[i].col_start, "malformed rational value");
    }
  }
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(line_no, toks.empty() ? 1 : toks[0].col_start, ex.what());
  }
}

}  // namespace

MapDocument parse_map(std::istream& in) {
  MapDocument doc;
  std::map<std::string, int> var_index;
  std::map<std::string, int> param_index;
  std::string raw;
  int line_no = 0;
  bool saw_vars = false;
  bool saw_params = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::vector<Token> toks = lex_line(raw, line_no);
    if (toks[0].kind == Token::Kind::End) continue;
    const Token& head = toks[0];
    if (head.kind != Token::Kind::Name)
      throw ParseError(line_no, head.col_start, "expected a directive or component line");

    if (!saw_vars) {
      if (head.text != "vars")
        throw ParseError(line_no, head.col_start, "the file must start with its 'vars' line");
      doc.variables = read_name_list(toks, line_no, "vars");
      for (std::size_t i = 0; i < doc.variables.size(); ++i) {
        const std::string& name = doc.variables[i];
        if (reserved_word(name))
          throw ParseError(line_no, head.col_start, "'" + name + "' is a reserved word");
        if (!var_index.emplace(name, static_cast<int>(i)).second)
          throw ParseError(line_no, head.col_start, "variable '" + name + "' declared twice");
      }
      saw_vars = true;
      continue;
    }

    if (head.text == "vars")
      throw ParseError(line_no, head.col_start, "duplicate 'vars' line");

    if (head.text == "params") {
      if (saw_params)
        throw ParseError(line_no, head.col_start, "duplicate 'params' line");
      if (!doc.components.empty())
        throw ParseError(line_no, head.col_start, "'params' must come before the components");
      doc.parameters = read_name_list(toks, line_no, "params");
      for (std::size_t i = 0; i < doc.parameters.size(); ++i) {
        const std::string& name = doc.parameters[i];
        if (reserved_word(name))
          throw ParseError(line_no, head.col_start, "'" + name + "' is a reserved word");
        if (var_index.count(name))
          throw ParseError(line_no, head.col_start,
                           "'" + name + "' is already a variable");
        if (!param_index.emplace(name, static_cast<int>(i)).second)
          throw ParseError(line_no, head.col_start, "parameter '" + name + "' declared twice");
      }
      saw_params = true;
      continue;
    }

    if (head.text == "bind") {
      if (toks[1].kind != Token::Kind::Name)
        throw ParseError(line_no, toks[1].col_start, "'bind' needs a parameter name");
      const std::string& name = toks[1].text;
      if (!param_index.count(name))
        throw ParseError(line_no, toks[1].col_start, "unknown parameter '" + name + "'");
      if (toks[2].kind != Token::Kind::Equals)
        throw ParseError(line_no, toks[2].col_start, "expected '=' after the parameter name");
      if (doc.file_bindings.count(name))
        throw ParseError(line_no, toks[1].col_start, "parameter '" + name + "' bound twice");
      doc.file_bindings.emplace(name, read_bind_value(toks, 3, line_no));
      continue;
    }

    // component line
    const int n = static_cast<int>(doc.variables.size());
    const int index = static_cast<int>(doc.components.size());
    if (index == n)
      throw ParseError(line_no, head.col_start,
                       "map already has all " + std::to_string(n) + " components");
    const std::string expected = "F" + std::to_string(index + 1);
    if (head.text != expected)
      throw ParseError(line_no, head.col_start, "expected '" + expected + " = ...'");
    if (toks[1].kind != Token::Kind::Equals)
      throw ParseError(line_no, toks[1].col_start, "expected '=' after '" + expected + "'");
    ExprParser parser{toks, 2, line_no, var_index, param_index, doc.variables};
    ExprPtr expr = parser.parse_expression();
    const Token& rest = parser.peek();
    if (rest.kind != Token::Kind::End)
      throw ParseError(line_no, rest.col_start,
                       std::string("unexpected ") + token_noun(rest.kind));
    doc.components.push_back(std::move(expr));
  }

  if (!saw_vars) throw ParseError(std::max(line_no, 1), 1, "missing 'vars' line");
  if (doc.components.size() != doc.variables.size())
    throw ParseError(std::max(line_no, 1), 1,
                     "expected " + std::to_string(doc.variables.size()) +
                         " components, found " + std::to_string(doc.components.size()));
  return doc;
}

MapDocument parse_map_text(const std::string& text) {
  std::istringstream in(text);
  return parse_map(in);
}

MapDocument parse_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open map file '" + path + "'");
  return parse_map(in);
}

Polynomial parse_polynomial(const std::string& text,
                            const std::vector<std::string>& variables) {
  std::map<std::string, int> var_index;
  for (std::size_t i = 0; i < variables.size(); ++i)
    var_index.emplace(variables[i], static_cast<int>(i));
  static const std::map<std::string, int> no_params;
  std::vector<Token> toks = lex_line(text, 1);
  ExprParser parser{toks, 0, 1, var_index, no_params, variables};
  ExprPtr expr = parser.parse_expression();
  if (parser.peek().kind != Token::Kind::End)
    throw ParseError(1, parser.peek().col_start,
                     std::string("unexpected ") + token_noun(parser.peek().kind));
  return evaluate_expression(expr.get(), static_cast<int>(variables.size()), {}, {});
}

RationalMatrix parse_matrix(std::istream& in) {
  std::vector<std::string> words;
  std::string raw;
  while (std::getline(in, raw)) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string w;
    while (line >> w) words.push_back(w);
  }
  if (words.empty()) throw InputError("matrix file is empty");
  long n = 0;
  try {
    std::size_t used = 0;
    n = std::stol(words[0], &used);
    if (used != words[0].size()) throw std::invalid_argument(words[0]);
  } catch (const std::exception&) {
    throw InputError("matrix file must start with its size, found '" + words[0] + "'");
  }
  if (n < 1) throw InputError("matrix size must be positive");
  const std::size_t need = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (words.size() - 1 != need)
    throw InputError("matrix of size " + std::to_string(n) + " needs " +
                     std::to_string(need) + " entries, found " +
                     std::to_string(words.size() - 1));
  RationalMatrix m(static_cast<int>(n));
  for (std::size_t i = 0; i < need; ++i) {
    try {
      m.a[i] = parse_rational(words[i + 1]);
    } catch (const std::invalid_argument& ex) {
      throw InputError(std::string("matrix entry ") + std::to_string(i + 1) + ": " + ex.what());
    }
  }
  return m;
}

RationalMatrix parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file '" + path + "'");
  return parse_matrix(in);
}

}  // namespace polyinv

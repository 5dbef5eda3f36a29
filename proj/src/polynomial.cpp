#include "polyinv/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

namespace polyinv {

namespace detail {
struct PolyAccess {
  static std::vector<Polynomial::Term>& terms(Polynomial& p) { return p.terms_; }
};
}  // namespace detail

using Term = Polynomial::Term;

namespace {

void check_same_ring(const Polynomial& a, const Polynomial& b, const char* op) {
  if (a.vars() != b.vars())
    throw DimensionMismatch(std::string(op) + ": operands live in different rings (" +
                            std::to_string(a.vars()) + " vs " +
                            std::to_string(b.vars()) + " variables)");
}

void check_var_index(const Polynomial& a, int var, const char* op) {
  if (var < 0 || var >= a.vars())
    throw DimensionMismatch(std::string(op) + ": variable index " + std::to_string(var) +
                            " out of range for " + std::to_string(a.vars()) + " variables");
}

bool term_less(const Term& a, const Term& b) { return term_order_less(a.mono, b.mono); }

// p scaled by one term. A uniform monomial shift preserves both the degree
// ordering and the in-degree tie-break, so the result is assembled in
// canonical order directly.
Polynomial mul_single_term(const Polynomial& p, const Term& t,
                           std::optional<long> max_degree) {
  Polynomial r(p.vars());
  auto& out = detail::PolyAccess::terms(r);
  out.reserve(p.term_count());
  for (const auto& pt : p.terms()) {
    if (max_degree &&
        pt.mono.degree + t.mono.degree > static_cast<std::uint64_t>(*max_degree))
      break;  // ascending degree: everything after is out of bounds too
    Rational c = pt.coeff * t.coeff;
    out.push_back({monomial_mul(pt.mono, t.mono), std::move(c)});
  }
  return r;
}

}  // namespace

Monomial Monomial::variable(int vars, int index) {
  if (index < 0 || index >= vars)
    throw DimensionMismatch("monomial variable index " + std::to_string(index) +
                            " out of range for " + std::to_string(vars) + " variables");
  Monomial m = unit(vars);
  m.exps[static_cast<std::size_t>(index)] = 1;
  m.degree = 1;
  return m;
}

bool term_order_less(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  // within one degree the lexicographically greater exponent vector comes first
  return std::lexicographical_compare(b.exps.begin(), b.exps.end(),
                                      a.exps.begin(), a.exps.end());
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  if (a.exps.size() != b.exps.size())
    throw DimensionMismatch("monomial product across different rings");
  Monomial r = a;
  for (std::size_t i = 0; i < r.exps.size(); ++i) {
    std::uint64_t s = static_cast<std::uint64_t>(a.exps[i]) + b.exps[i];
    if (s > std::numeric_limits<std::uint32_t>::max())
      throw InputError("exponent overflow in monomial product");
    r.exps[i] = static_cast<std::uint32_t>(s);
  }
  r.degree = a.degree + b.degree;
  return r;
}

bool monomial_divides(const Monomial& divisor, const Monomial& dividend) {
  if (divisor.exps.size() != dividend.exps.size()) return false;
  for (std::size_t i = 0; i < divisor.exps.size(); ++i)
    if (divisor.exps[i] > dividend.exps[i]) return false;
  return true;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull + m.exps.size();
  for (std::uint32_t e : m.exps) {
    h ^= e;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
  }
  return static_cast<std::size_t>(h);
}

Polynomial Polynomial::constant(int vars, const Rational& c) {
  Polynomial r(vars);
  if (!polyinv::is_zero(c)) r.terms_.push_back({Monomial::unit(vars), c});
  return r;
}

Polynomial Polynomial::variable(int vars, int index) {
  Polynomial r(vars);
  r.terms_.push_back({Monomial::variable(vars, index), Rational(1)});
  return r;
}

Polynomial Polynomial::term(int vars, Monomial m, const Rational& c) {
  if (static_cast<int>(m.exps.size()) != vars)
    throw DimensionMismatch("term exponent count does not match ring dimension");
  std::uint64_t d = 0;
  for (auto e : m.exps) d += e;
  m.degree = d;
  Polynomial r(vars);
  if (!polyinv::is_zero(c)) r.terms_.push_back({std::move(m), c});
  return r;
}

Polynomial Polynomial::from_terms(int vars, std::vector<Term> terms) {
  for (auto& t : terms) {
    if (static_cast<int>(t.mono.exps.size()) != vars)
      throw DimensionMismatch("term exponent count does not match ring dimension");
    std::uint64_t d = 0;  // recompute: callers assemble these by hand
    for (auto e : t.mono.exps) d += e;
    t.mono.degree = d;
  }
  std::sort(terms.begin(), terms.end(), term_less);
  Polynomial r(vars);
  auto& out = r.terms_;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
      if (polyinv::is_zero(out.back().coeff)) out.pop_back();
    } else if (!polyinv::is_zero(t.coeff)) {
      out.push_back(std::move(t));
    }
  }
  return r;
}

std::optional<long> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  return static_cast<long>(terms_.back().mono.degree);
}

std::optional<long> Polynomial::lower_degree() const {
  if (terms_.empty()) return std::nullopt;
  return static_cast<long>(terms_.front().mono.degree);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree == 0);
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.front().mono.degree == 0) return terms_.front().coeff;
  return Rational(0);
}

std::size_t Polynomial::leading_index() const {
  const std::uint64_t top = terms_.back().mono.degree;
  auto it = std::partition_point(terms_.begin(), terms_.end(),
                                 [&](const Term& t) { return t.mono.degree < top; });
  return static_cast<std::size_t>(it - terms_.begin());
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (vars_ != other.vars_ || terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].mono != other.terms_[i].mono) return false;
    if (terms_[i].coeff != other.terms_[i].coeff) return false;
  }
  return true;
}

bool Polynomial::is_canonical() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (static_cast<int>(t.mono.exps.size()) != vars_) return false;
    std::uint64_t d = 0;
    for (auto e : t.mono.exps) d += e;
    if (d != t.mono.degree) return false;
    if (polyinv::is_zero(t.coeff)) return false;
    if (i > 0 && !term_order_less(terms_[i - 1].mono, t.mono)) return false;
  }
  return true;
}

Polynomial add(const Polynomial& a, const Polynomial& b) {
  check_same_ring(a, b, "add");
  Polynomial r(a.vars());
  auto& out = detail::PolyAccess::terms(r);
  out.reserve(a.term_count() + b.term_count());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea && ib != eb) {
    if (ia->mono == ib->mono) {
      Rational c = ia->coeff + ib->coeff;
      if (!is_zero(c)) out.push_back({ia->mono, std::move(c)});
      ++ia;
      ++ib;
    } else if (term_order_less(ia->mono, ib->mono)) {
      out.push_back(*ia++);
    } else {
      out.push_back(*ib++);
    }
  }
  out.insert(out.end(), ia, ea);
  out.insert(out.end(), ib, eb);
  return r;
}

Polynomial sub(const Polynomial& a, const Polynomial& b) {
  check_same_ring(a, b, "sub");
  Polynomial r(a.vars());
  auto& out = detail::PolyAccess::terms(r);
  out.reserve(a.term_count() + b.term_count());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea && ib != eb) {
    if (ia->mono == ib->mono) {
      Rational c = ia->coeff - ib->coeff;
      if (!is_zero(c)) out.push_back({ia->mono, std::move(c)});
      ++ia;
      ++ib;
    } else if (term_order_less(ia->mono, ib->mono)) {
      out.push_back(*ia++);
    } else {
      out.push_back({ib->mono, -ib->coeff});
      ++ib;
    }
  }
  out.insert(out.end(), ia, ea);
  for (; ib != eb; ++ib) out.push_back({ib->mono, -ib->coeff});
  return r;
}

Polynomial neg(const Polynomial& a) {
  Polynomial r(a.vars());
  auto& out = detail::PolyAccess::terms(r);
  out.reserve(a.term_count());
  for (const auto& t : a.terms()) out.push_back({t.mono, -t.coeff});
  return r;
}

Polynomial mul(const Polynomial& a, const Polynomial& b,
               std::optional<long> max_degree, std::size_t term_limit) {
  check_same_ring(a, b, "mul");
  if (a.is_zero() || b.is_zero()) return Polynomial(a.vars());
  if (a.term_count() == 1) return mul_single_term(b, a.terms()[0], max_degree);
  if (b.term_count() == 1) return mul_single_term(a, b.terms()[0], max_degree);

  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.term_count() + b.term_count());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      if (max_degree &&
          ta.mono.degree + tb.mono.degree > static_cast<std::uint64_t>(*max_degree))
        break;  // b ascends in degree: the rest of this row is out of bounds
      Rational prod = ta.coeff * tb.coeff;
      auto [it, inserted] = acc.try_emplace(monomial_mul(ta.mono, tb.mono), std::move(prod));
      if (!inserted) it->second += prod;  // try_emplace left prod untouched
    }
    if (term_limit && acc.size() > term_limit) throw ResourceLimit(term_limit, acc.size());
  }

  Polynomial r(a.vars());
  auto& out = detail::PolyAccess::terms(r);
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!is_zero(c)) out.push_back({m, std::move(c)});
  std::sort(out.begin(), out.end(), term_less);
  return r;
}

Polynomial mul_scalar(const Polynomial& a, const Rational& c) {
  if (is_zero(c)) return Polynomial(a.vars());
  Polynomial r(a.vars());
  auto& out = detail::PolyAccess::terms(r);
  out.reserve(a.term_count());
  for (const auto& t : a.terms()) out.push_back({t.mono, t.coeff * c});
  return r;
}

Polynomial pow(const Polynomial& a, std::uint64_t k,
               std::optional<long> max_degree, std::size_t term_limit) {
  Polynomial result = Polynomial::constant(a.vars(), Rational(1));
  if (k == 0) return result;
  Polynomial base = max_degree ? truncate_above(a, *max_degree) : a;
  while (true) {
    if (k & 1) result = mul(result, base, max_degree, term_limit);
    k >>= 1;
    if (k == 0) break;
    base = mul(base, base, max_degree, term_limit);
  }
  return result;
}

Polynomial partial_derivative(const Polynomial& a, int var) {
  check_var_index(a, var, "partial_derivative");
  Polynomial r(a.vars());
  auto& out = detail::PolyAccess::terms(r);
  out.reserve(a.term_count());
  for (const auto& t : a.terms()) {
    std::uint32_t e = t.mono.exps[static_cast<std::size_t>(var)];
    if (e == 0) continue;
    Term nt{t.mono, t.coeff * static_cast<unsigned long>(e)};
    nt.mono.exps[static_cast<std::size_t>(var)] = e - 1;
    nt.mono.degree -= 1;
    out.push_back(std::move(nt));
  }
  // a uniform decrement in one position keeps the surviving terms in order
  return r;
}

Polynomial truncate_above(const Polynomial& a, long d) {
  Polynomial r(a.vars());
  if (d < 0) return r;
  auto end = std::partition_point(
      a.terms().begin(), a.terms().end(),
      [&](const Term& t) { return t.mono.degree <= static_cast<std::uint64_t>(d); });
  auto& out = detail::PolyAccess::terms(r);
  out.assign(a.terms().begin(), end);
  return r;
}

Polynomial homogeneous_component(const Polynomial& a, long d) {
  Polynomial r(a.vars());
  if (d < 0) return r;
  const auto ud = static_cast<std::uint64_t>(d);
  auto first = std::partition_point(a.terms().begin(), a.terms().end(),
                                    [&](const Term& t) { return t.mono.degree < ud; });
  auto last = std::partition_point(first, a.terms().end(),
                                   [&](const Term& t) { return t.mono.degree <= ud; });
  auto& out = detail::PolyAccess::terms(r);
  out.assign(first, last);
  return r;
}

Rational evaluate(const Polynomial& a, const std::vector<Rational>& point) {
  if (static_cast<int>(point.size()) != a.vars())
    throw DimensionMismatch("evaluate: point dimension " + std::to_string(point.size()) +
                            " does not match ring dimension " + std::to_string(a.vars()));
  Rational total(0);
  for (const auto& t : a.terms()) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < t.mono.exps.size(); ++i) {
      std::uint32_t e = t.mono.exps[i];
      if (e == 1)
        v *= point[i];
      else if (e > 1)
        v *= rational_pow(point[i], e);
    }
    total += v;
  }
  return total;
}

Polynomial divide_exact(const Polynomial& dividend, const Polynomial& divisor) {
  check_same_ring(dividend, divisor, "divide_exact");
  if (divisor.is_zero()) throw std::logic_error("divide_exact: division by zero polynomial");
  const int vars = dividend.vars();
  const Term& ld = divisor.terms()[divisor.leading_index()];
  Polynomial rem = dividend;
  std::vector<Term> quotient;
  while (!rem.is_zero()) {
    const Term& lr = rem.terms()[rem.leading_index()];
    if (!monomial_divides(ld.mono, lr.mono))
      throw std::logic_error("divide_exact: divisor does not divide dividend");
    Term t;
    t.mono = lr.mono;
    for (std::size_t i = 0; i < t.mono.exps.size(); ++i) t.mono.exps[i] -= ld.mono.exps[i];
    t.mono.degree = lr.mono.degree - ld.mono.degree;
    t.coeff = lr.coeff / ld.coeff;
    quotient.push_back(t);
    rem = sub(rem, mul(divisor, Polynomial::term(vars, t.mono, t.coeff)));
  }
  return Polynomial::from_terms(vars, std::move(quotient));
}

PowerCache::PowerCache(std::vector<Polynomial> images,
                       std::optional<long> max_degree, std::size_t term_limit)
    : images_(std::move(images)), max_degree_(max_degree), term_limit_(term_limit) {
  if (images_.empty())
    throw DimensionMismatch("substitution requires at least one image");
  target_vars_ = images_[0].vars();
  for (const auto& img : images_)
    if (img.vars() != target_vars_)
      throw DimensionMismatch("substitution images live in different rings");
  powers_.resize(images_.size());
}

const Polynomial& PowerCache::power(int var, std::uint32_t k) {
  auto& vec = powers_[static_cast<std::size_t>(var)];
  if (vec.empty()) {
    vec.push_back(Polynomial::constant(target_vars_, Rational(1)));
    vec.push_back(max_degree_ ? truncate_above(images_[static_cast<std::size_t>(var)],
                                               *max_degree_)
                              : images_[static_cast<std::size_t>(var)]);
  }
  while (vec.size() <= k) {
    // grow incrementally so every intermediate power stays available
    vec.push_back(mul(vec.back(), vec[1], max_degree_, term_limit_));
  }
  return vec[k];
}

namespace {

Polynomial substitute_rec(const std::vector<const Term*>& ts, std::size_t v,
                          PowerCache& cache) {
  const int out_vars = cache.target_vars();
  if (ts.empty()) return Polynomial(out_vars);
  if (v == static_cast<std::size_t>(cache.source_vars())) {
    // all exponents pinned along this path; canonical storage guarantees
    // exactly one original term survives here
    if (ts.size() != 1)
      throw std::logic_error("substitute: duplicate monomials in canonical polynomial");
    return Polynomial::constant(out_vars, ts[0]->coeff);
  }
  std::map<std::uint32_t, std::vector<const Term*>> groups;
  for (const Term* t : ts) groups[t->mono.exps[v]].push_back(t);
  Polynomial acc(out_vars);
  for (auto& [e, group] : groups) {
    Polynomial part = substitute_rec(group, v + 1, cache);
    if (e > 0 && !part.is_zero())
      part = mul(part, cache.power(static_cast<int>(v), e), cache.max_degree(),
                 cache.term_limit());
    acc = add(acc, part);
  }
  return acc;
}

}  // namespace

Polynomial substitute(const Polynomial& p, PowerCache& cache) {
  if (p.vars() != cache.source_vars())
    throw DimensionMismatch("substitute: polynomial has " + std::to_string(p.vars()) +
                            " variables but " + std::to_string(cache.source_vars()) +
                            " images were provided");
  std::vector<const Term*> ts;
  ts.reserve(p.term_count());
  for (const auto& t : p.terms()) ts.push_back(&t);
  return substitute_rec(ts, 0, cache);
}

Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images,
                      std::optional<long> max_degree, std::size_t term_limit) {
  PowerCache cache(images, max_degree, term_limit);
  return substitute(p, cache);
}

}  // namespace polyinv

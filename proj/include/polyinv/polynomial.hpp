// Sparse multivariate polynomials over the rationals, with a fixed variable
// count per polynomial. This is the workhorse of the whole library: the
// inverse-construction loop is essentially repeated substitute() under a
// degree truncation, so the representation is chosen to make that cheap.
//
// Term storage is canonical and doubles as the output order:
//   * ascending total degree;
//   * within one degree, descending lexicographic on exponent vectors
//     (X1 counted most significant).
// Consequences used throughout: degree and lower degree are O(1) reads,
// truncation is a suffix cut, the homogeneous pieces are contiguous blocks,
// and the grlex-leading term is the first entry of the last block.
#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyinv/errors.hpp"
#include "polyinv/rational.hpp"

namespace polyinv {

namespace detail {
struct PolyAccess;  // implementation backdoor for the arithmetic kernels
}

// Exponent vector with cached total degree. Inline storage covers rings of
// up to 8 variables without heap traffic; larger rings spill transparently.
struct Monomial {
  boost::container::small_vector<std::uint32_t, 8> exps;
  std::uint64_t degree = 0;

  static Monomial unit(int vars) {
    Monomial m;
    m.exps.assign(static_cast<std::size_t>(vars), 0);
    return m;
  }
  static Monomial variable(int vars, int index);

  bool operator==(const Monomial& other) const { return exps == other.exps; }
  bool operator!=(const Monomial& other) const { return !(*this == other); }
};

// Storage order predicate: true when a comes strictly before b.
bool term_order_less(const Monomial& a, const Monomial& b);

// Product of exponent vectors (exponents add). Throws InputError if an
// exponent or the total degree would overflow its field.
Monomial monomial_mul(const Monomial& a, const Monomial& b);

// Componentwise a >= b, i.e. b divides a.
bool monomial_divides(const Monomial& divisor, const Monomial& dividend);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Polynomial() = default;  // zero polynomial in a 0-variable ring
  explicit Polynomial(int vars) : vars_(vars) {}

  static Polynomial constant(int vars, const Rational& c);
  static Polynomial variable(int vars, int index);
  static Polynomial term(int vars, Monomial m, const Rational& c);
  // Canonicalizes arbitrary term soup: sorts, merges duplicates, drops zeros.
  static Polynomial from_terms(int vars, std::vector<Term> terms);

  int vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  // Degree of the zero polynomial is undefined; these return nullopt for it.
  std::optional<long> degree() const;
  std::optional<long> lower_degree() const;
  std::pair<std::optional<long>, std::optional<long>> degrees() const {
    return {lower_degree(), degree()};
  }

  bool is_constant() const;        // zero counts as constant
  Rational constant_term() const;  // coefficient of the degree-0 monomial

  // Index of the grlex-greatest term. Precondition: not zero.
  std::size_t leading_index() const;

  bool operator==(const Polynomial& other) const;
  bool operator!=(const Polynomial& other) const { return !(*this == other); }

  // Internal invariant check (sorted, merged, no zero coefficients,
  // consistent exponent widths); used by tests, cheap enough to run ad hoc.
  bool is_canonical() const;

 private:
  friend struct detail::PolyAccess;

  int vars_ = 0;
  std::vector<Term> terms_;  // canonical order, see file comment
};

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial sub(const Polynomial& a, const Polynomial& b);
Polynomial neg(const Polynomial& a);

// Product, optionally discarding every term of total degree > max_degree
// while it is being formed (both inputs are scanned in ascending degree, so
// the cutoff prunes whole tail ranges). term_limit > 0 bounds the number of
// distinct monomials the accumulator may hold; exceeding it throws
// ResourceLimit.
Polynomial mul(const Polynomial& a, const Polynomial& b,
               std::optional<long> max_degree = std::nullopt,
               std::size_t term_limit = 0);
Polynomial mul_scalar(const Polynomial& a, const Rational& c);
Polynomial pow(const Polynomial& a, std::uint64_t k,
               std::optional<long> max_degree = std::nullopt,
               std::size_t term_limit = 0);

Polynomial partial_derivative(const Polynomial& a, int var);

// Terms of total degree <= d (d may be negative: result is zero).
Polynomial truncate_above(const Polynomial& a, long d);
// The homogeneous piece of total degree exactly d.
Polynomial homogeneous_component(const Polynomial& a, long d);

Rational evaluate(const Polynomial& a, const std::vector<Rational>& point);

// Exact quotient q with q * divisor == dividend. Divisibility is the
// caller's responsibility (the fraction-free determinant guarantees it);
// a remainder raises std::logic_error.
Polynomial divide_exact(const Polynomial& dividend, const Polynomial& divisor);

// Memoized powers of a fixed family of substitution images, shared across
// repeated substitute() calls — the sequence recursion substitutes into the
// same map at every step, so the cache pays for itself immediately.
// Images may live in a different ring than the polynomials substituted into
// them; all images must share one variable count.
class PowerCache {
 public:
  explicit PowerCache(std::vector<Polynomial> images,
                      std::optional<long> max_degree = std::nullopt,
                      std::size_t term_limit = 0);

  const Polynomial& power(int var, std::uint32_t k);

  const std::vector<Polynomial>& images() const { return images_; }
  int source_vars() const { return static_cast<int>(images_.size()); }
  int target_vars() const { return target_vars_; }
  std::optional<long> max_degree() const { return max_degree_; }
  std::size_t term_limit() const { return term_limit_; }

 private:
  std::vector<Polynomial> images_;
  std::vector<std::vector<Polynomial>> powers_;  // powers_[v][k] = images_[v]^k
  int target_vars_ = 0;
  std::optional<long> max_degree_;
  std::size_t term_limit_ = 0;
};

// p(images): each variable of p replaced by its image, computed bottom-up
// per variable so shared subproducts are multiplied once. p.vars() must
// equal cache.source_vars(); the result lives in the images' ring.
Polynomial substitute(const Polynomial& p, PowerCache& cache);
Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images,
                      std::optional<long> max_degree = std::nullopt,
                      std::size_t term_limit = 0);

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) { return add(a, b); }
inline Polynomial operator-(const Polynomial& a, const Polynomial& b) { return sub(a, b); }
inline Polynomial operator-(const Polynomial& a) { return neg(a); }
inline Polynomial operator*(const Polynomial& a, const Polynomial& b) { return mul(a, b); }

}  // namespace polyinv

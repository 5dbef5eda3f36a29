// Exercises the polynomial layer: canonical storage, exact arithmetic, the
// degree-truncated product, substitution with its power cache, and the
// support routines (derivatives, homogeneous slices, exact division) that
// the inversion engine leans on.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "polyinv/parser.hpp"
#include "polyinv/polynomial.hpp"

using namespace polyinv;

namespace {

const std::vector<std::string> xy = {"X1", "X2"};
const std::vector<std::string> xyz = {"X1", "X2", "X3"};

Polynomial P(const std::string& text, const std::vector<std::string>& names = xy) {
  return parse_polynomial(text, names);
}

// Small random polynomial with the given shape; deterministic per seed.
Polynomial random_poly(std::mt19937_64& rng, int vars, int max_deg, int terms) {
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<Polynomial::Term> soup;
  for (int t = 0; t < terms; ++t) {
    Monomial m = Monomial::unit(vars);
    int budget = deg(rng);
    std::uniform_int_distribution<int> pick(0, vars - 1);
    for (int d = 0; d < budget; ++d) {
      int v = pick(rng);
      m.exps[static_cast<std::size_t>(v)]++;
      m.degree++;
    }
    soup.push_back({std::move(m), Rational(coeff(rng))});
  }
  return Polynomial::from_terms(vars, std::move(soup));
}

std::vector<Rational> random_point(std::mt19937_64& rng, int vars) {
  std::uniform_int_distribution<int> num(-7, 7);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<Rational> pt;
  for (int i = 0; i < vars; ++i) pt.push_back(make_rational(num(rng), den(rng)));
  return pt;
}

}  // namespace

TEST_CASE("monomial construction and product") {
  Monomial u = Monomial::unit(3);
  CHECK(u.degree == 0);
  CHECK(u.exps.size() == 3);

  Monomial x2 = Monomial::variable(3, 1);
  CHECK(x2.degree == 1);
  CHECK(x2.exps[1] == 1);
  CHECK(x2.exps[0] == 0);

  Monomial prod = monomial_mul(x2, x2);
  CHECK(prod.degree == 2);
  CHECK(prod.exps[1] == 2);

  CHECK(monomial_divides(x2, prod));
  CHECK_FALSE(monomial_divides(prod, x2));
  CHECK(monomial_divides(u, x2));  // 1 divides everything

  // exponent fields are 32-bit; pushing one near the edge must be caught
  Monomial big = Monomial::unit(1);
  big.exps[0] = 0xFFFFFFFFu;
  big.degree = 0xFFFFFFFFu;
  CHECK_THROWS_AS(monomial_mul(big, Monomial::variable(1, 0)), InputError);
}

TEST_CASE("term order: ascending degree, descending lex inside a degree") {
  // X1^2 > X1*X2 > X2^2 lexicographically, so within degree 2 that is the
  // storage order; degree 1 terms come before all of them.
  Polynomial p = P("X2^2 + X1*X2 + X1^2 + X2 + X1 + 5");
  const auto& t = p.terms();
  REQUIRE(t.size() == 6);
  CHECK(t[0].mono.degree == 0);
  CHECK(t[1].mono == Monomial::variable(2, 0));   // X1
  CHECK(t[2].mono == Monomial::variable(2, 1));   // X2
  CHECK(t[3].mono.exps[0] == 2);                  // X1^2
  CHECK(t[4].mono.exps[0] == 1);                  // X1*X2
  CHECK(t[5].mono.exps[1] == 2);                  // X2^2
  CHECK(p.is_canonical());

  CHECK(term_order_less(t[0].mono, t[1].mono));
  CHECK(term_order_less(t[3].mono, t[4].mono));
  CHECK_FALSE(term_order_less(t[4].mono, t[3].mono));
  CHECK_FALSE(term_order_less(t[4].mono, t[4].mono));
}

TEST_CASE("from_terms canonicalizes arbitrary soup") {
  Monomial m = Monomial::variable(2, 0);
  std::vector<Polynomial::Term> soup;
  soup.push_back({m, Rational(3)});
  soup.push_back({Monomial::unit(2), Rational(1)});
  soup.push_back({m, Rational(-3)});             // cancels the first entry
  soup.push_back({Monomial::variable(2, 1), Rational(0)});  // dropped
  Polynomial p = Polynomial::from_terms(2, std::move(soup));
  CHECK(p == Polynomial::constant(2, Rational(1)));
  CHECK(p.term_count() == 1);
  CHECK(p.is_canonical());
}

TEST_CASE("degree bookkeeping") {
  Polynomial z(2);
  CHECK(z.is_zero());
  CHECK_FALSE(z.degree().has_value());
  CHECK_FALSE(z.lower_degree().has_value());
  CHECK(z.is_constant());
  CHECK(z.constant_term() == 0);

  Polynomial p = P("X1^3*X2 + X2^2 + 7");
  CHECK(p.degree() == 4);
  CHECK(p.lower_degree() == 0);
  CHECK(p.constant_term() == 7);
  CHECK_FALSE(p.is_constant());

  Polynomial q = P("X1*X2 + X1^2");
  CHECK(q.lower_degree() == 2);
  CHECK(q.degree() == 2);

  // leading term under grlex = first entry of the top degree block
  CHECK(p.terms()[p.leading_index()].mono.exps[0] == 3);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 40; ++round) {
    Polynomial a = random_poly(rng, 3, 5, 6);
    Polynomial b = random_poly(rng, 3, 5, 6);
    Polynomial c = random_poly(rng, 3, 5, 6);
    CHECK(add(a, b) == add(b, a));
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    CHECK(mul(a, b) == mul(b, a));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    CHECK(add(sub(a, b), b) == a);
    CHECK(add(a, neg(a)).is_zero());
    CHECK(mul(a, Polynomial::constant(3, Rational(1))) == a);
    CHECK(mul(a, Polynomial(3)).is_zero());
    CHECK(mul_scalar(a, Rational(-2)) == mul(a, Polynomial::constant(3, Rational(-2))));
    CHECK(add(a, b).is_canonical());
    CHECK(mul(a, b).is_canonical());
  }
}

TEST_CASE("frozen products") {
  CHECK(mul(P("X1 + X2"), P("X1 + X2")) == P("X1^2 + 2*X1*X2 + X2^2"));
  CHECK(mul(P("X1 + X2 + 1"), P("X1 - X2")) == P("X1^2 - X2^2 + X1 - X2"));
  CHECK(pow(P("2*X1 - 3*X2"), 3) ==
        P("8*X1^3 - 36*X1^2*X2 + 54*X1*X2^2 - 27*X2^3"));
  CHECK(pow(P("X1 + X2"), 0) == P("1"));
  CHECK(pow(Polynomial(2), 5).is_zero());
  // rational coefficients stay exact
  CHECK(mul(P("1/2*X1 + 1/3"), P("1/2*X1 - 1/3")) == P("1/4*X1^2 - 1/9"));
}

TEST_CASE("truncating product agrees with truncating afterwards") {
  std::mt19937_64 rng(555);
  for (int round = 0; round < 30; ++round) {
    Polynomial a = random_poly(rng, 2, 6, 7);
    Polynomial b = random_poly(rng, 2, 6, 7);
    for (long d : {0L, 3L, 7L, 12L}) {
      CHECK(mul(a, b, d) == truncate_above(mul(a, b), d));
      CHECK(pow(a, 3, d) == truncate_above(pow(a, 3), d));
    }
  }
}

TEST_CASE("pow matches repeated multiplication") {
  std::mt19937_64 rng(77);
  Polynomial a = random_poly(rng, 3, 3, 5);
  Polynomial acc = Polynomial::constant(3, Rational(1));
  for (std::uint64_t k = 0; k <= 6; ++k) {
    CHECK(pow(a, k) == acc);
    acc = mul(acc, a);
  }
}

TEST_CASE("term limit aborts oversized products") {
  // (1 + X1 + X2 + X3)^8 has 165 distinct monomials; a budget of 50 must trip
  Polynomial base = P("1 + X1 + X2 + X3", xyz);
  CHECK_THROWS_AS(pow(base, 8, std::nullopt, 50), ResourceLimit);
  Polynomial ok = pow(base, 8, std::nullopt, 200);
  CHECK(ok.term_count() == 165);
  try {
    pow(base, 8, std::nullopt, 50);
    FAIL("expected ResourceLimit");
  } catch (const ResourceLimit& e) {
    CHECK(e.limit == 50);
    CHECK(e.reached > 50);
  }
}

TEST_CASE("derivatives: linearity and the product rule") {
  std::mt19937_64 rng(909);
  for (int round = 0; round < 25; ++round) {
    Polynomial a = random_poly(rng, 2, 5, 6);
    Polynomial b = random_poly(rng, 2, 5, 6);
    for (int v = 0; v < 2; ++v) {
      CHECK(partial_derivative(add(a, b), v) ==
            add(partial_derivative(a, v), partial_derivative(b, v)));
      CHECK(partial_derivative(mul(a, b), v) ==
            add(mul(partial_derivative(a, v), b), mul(a, partial_derivative(b, v))));
    }
  }
  CHECK(partial_derivative(P("7"), 0).is_zero());
  CHECK(partial_derivative(P("X1^4"), 0) == P("4*X1^3"));
  CHECK(partial_derivative(P("X1^4"), 1).is_zero());
}

TEST_CASE("truncation and homogeneous slices partition the polynomial") {
  Polynomial p = P("X1^5 + 2*X1^2*X2 + X1*X2 + 3*X2 + 4");
  CHECK(truncate_above(p, -1).is_zero());
  CHECK(truncate_above(p, 0) == P("4"));
  CHECK(truncate_above(p, 2) == P("X1*X2 + 3*X2 + 4"));
  CHECK(truncate_above(p, 100) == p);

  Polynomial rebuilt(2);
  for (long d = 0; d <= 5; ++d) rebuilt = add(rebuilt, homogeneous_component(p, d));
  CHECK(rebuilt == p);
  CHECK(homogeneous_component(p, 3) == P("2*X1^2*X2"));
  CHECK(homogeneous_component(p, 4).is_zero());

  // the suffix-cut identity: low part plus high part is the whole
  std::mt19937_64 rng(31);
  for (int round = 0; round < 20; ++round) {
    Polynomial a = random_poly(rng, 3, 6, 8);
    for (long d = 0; d <= 6; ++d) {
      Polynomial low = truncate_above(a, d);
      CHECK(add(low, sub(a, low)) == a);
      if (!low.is_zero()) CHECK(*low.degree() <= d);
    }
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 25; ++round) {
    Polynomial a = random_poly(rng, 3, 4, 6);
    Polynomial b = random_poly(rng, 3, 4, 6);
    auto pt = random_point(rng, 3);
    CHECK(evaluate(add(a, b), pt) == evaluate(a, pt) + evaluate(b, pt));
    CHECK(evaluate(mul(a, b), pt) == evaluate(a, pt) * evaluate(b, pt));
  }
  CHECK(evaluate(P("X1^2*X2 - 1/2"), {Rational(2), make_rational(1, 4)}) ==
        make_rational(1, 2));
}

TEST_CASE("exact division undoes multiplication") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 30; ++round) {
    Polynomial a = random_poly(rng, 2, 4, 5);
    Polynomial b = random_poly(rng, 2, 4, 5);
    if (b.is_zero()) continue;
    CHECK(divide_exact(mul(a, b), b) == a);
  }
  CHECK_THROWS_AS(divide_exact(P("X1^2 + 1"), P("X2")), std::logic_error);
  CHECK(divide_exact(Polynomial(2), P("X1")).is_zero());
}

TEST_CASE("substitution: identity, composition with evaluation, cross-ring") {
  std::vector<Polynomial> id = {Polynomial::variable(2, 0), Polynomial::variable(2, 1)};
  std::mt19937_64 rng(808);
  for (int round = 0; round < 20; ++round) {
    Polynomial p = random_poly(rng, 2, 5, 6);
    CHECK(substitute(p, id) == p);

    std::vector<Polynomial> images = {random_poly(rng, 2, 3, 4), random_poly(rng, 2, 3, 4)};
    Polynomial q = substitute(p, images);
    // evaluating the substituted polynomial = evaluating p at the images' values
    auto pt = random_point(rng, 2);
    std::vector<Rational> image_vals = {evaluate(images[0], pt), evaluate(images[1], pt)};
    CHECK(evaluate(q, pt) == evaluate(p, image_vals));
  }

  // substitution is a ring homomorphism as well
  for (int round = 0; round < 15; ++round) {
    Polynomial a = random_poly(rng, 2, 3, 4);
    Polynomial b = random_poly(rng, 2, 3, 4);
    std::vector<Polynomial> images = {random_poly(rng, 2, 2, 3), random_poly(rng, 2, 2, 3)};
    PowerCache cache(images);
    CHECK(substitute(add(a, b), cache) == add(substitute(a, cache), substitute(b, cache)));
    CHECK(substitute(mul(a, b), cache) == mul(substitute(a, cache), substitute(b, cache)));
  }

  // a 2-variable polynomial pushed into a 3-variable ring
  Polynomial p2 = P("X1*X2 + X2^2");
  std::vector<Polynomial> into3 = {P("X1 + X3", xyz), P("X2", xyz)};
  CHECK(substitute(p2, into3) == P("X1*X2 + X3*X2 + X2^2", xyz));
  CHECK(substitute(p2, into3).vars() == 3);
}

TEST_CASE("truncated substitution equals truncated exact substitution") {
  std::mt19937_64 rng(616);
  for (int round = 0; round < 20; ++round) {
    Polynomial p = random_poly(rng, 2, 4, 5);
    std::vector<Polynomial> images = {random_poly(rng, 2, 3, 4), random_poly(rng, 2, 3, 4)};
    Polynomial exact = substitute(p, images);
    for (long d : {0L, 2L, 5L, 9L}) {
      CHECK(substitute(p, images, d) == truncate_above(exact, d));
    }
  }
}

TEST_CASE("power cache returns the same powers as pow") {
  std::mt19937_64 rng(123);
  std::vector<Polynomial> images = {random_poly(rng, 2, 3, 4), random_poly(rng, 2, 3, 4)};
  PowerCache cache(images, 8);
  for (int v = 0; v < 2; ++v)
    for (std::uint32_t k = 0; k <= 5; ++k)
      CHECK(cache.power(v, k) == pow(images[static_cast<std::size_t>(v)], k, 8));
  CHECK(cache.source_vars() == 2);
  CHECK(cache.max_degree() == 8);
}

TEST_CASE("substitution rejects a ring mismatch") {
  Polynomial p = P("X1 + X2");                       // two variables
  std::vector<Polynomial> one = {Polynomial::variable(1, 0)};  // one image
  CHECK_THROWS_AS(substitute(p, one), DimensionMismatch);
}

#include "polyinv/polymap.hpp"

#include <string>
#include <utility>

namespace polyinv {

namespace {

void check_square(const PolyMatrix& m, const char* op) {
  if (m.empty()) throw DimensionMismatch(std::string(op) + ": empty matrix");
  for (const auto& row : m)
    if (row.size() != m.size())
      throw DimensionMismatch(std::string(op) + ": matrix is not square");
}

void check_same_dimension(const PolynomialMap& f, const PolynomialMap& g, const char* op) {
  if (f.dimension() != g.dimension())
    throw DimensionMismatch(std::string(op) + ": maps have dimensions " +
                            std::to_string(f.dimension()) + " and " +
                            std::to_string(g.dimension()));
}

}  // namespace

PolynomialMap::PolynomialMap(std::vector<Polynomial> comps) : components(std::move(comps)) {
  const int n = dimension();
  if (n == 0) throw DimensionMismatch("polynomial map needs at least one component");
  for (const auto& c : components)
    if (c.vars() != n)
      throw DimensionMismatch("map component lives in a " + std::to_string(c.vars()) +
                              "-variable ring but the map has " + std::to_string(n) +
                              " components");
}

std::optional<long> PolynomialMap::degree() const {
  std::optional<long> d;
  for (const auto& c : components)
    if (auto cd = c.degree(); cd && (!d || *cd > *d)) d = cd;
  return d;
}

PolynomialMap identity_map(int n) {
  if (n <= 0) throw DimensionMismatch("identity map needs a positive dimension");
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) comps.push_back(Polynomial::variable(n, i));
  return PolynomialMap(std::move(comps));
}

PolynomialMap compose(const PolynomialMap& f, const PolynomialMap& g,
                      std::optional<long> max_degree, std::size_t term_limit) {
  check_same_dimension(f, g, "compose");
  PowerCache cache(g.components, max_degree, term_limit);
  std::vector<Polynomial> comps;
  comps.reserve(f.components.size());
  for (const auto& c : f.components) comps.push_back(substitute(c, cache));
  return PolynomialMap(std::move(comps));
}

std::vector<Rational> evaluate_map(const PolynomialMap& f,
                                   const std::vector<Rational>& point) {
  std::vector<Rational> out;
  out.reserve(f.components.size());
  for (const auto& c : f.components) out.push_back(evaluate(c, point));
  return out;
}

PolyMatrix jacobian(const PolynomialMap& f) {
  const int n = f.dimension();
  PolyMatrix m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    m[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      m[static_cast<std::size_t>(i)].push_back(partial_derivative(f.components[static_cast<std::size_t>(i)], j));
  }
  return m;
}

Polynomial determinant_cofactor(const PolyMatrix& m) {
  check_square(m, "determinant_cofactor");
  const std::size_t n = m.size();
  const int vars = m[0][0].vars();
  if (n == 1) return m[0][0];
  Polynomial det(vars);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix minor;
    minor.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      row.reserve(n - 1);
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Polynomial contrib = mul(m[0][j], determinant_cofactor(minor));
    det = (j % 2 == 0) ? add(det, contrib) : sub(det, contrib);
  }
  return det;
}

Polynomial determinant_bareiss(const PolyMatrix& input) {
  check_square(input, "determinant_bareiss");
  const std::size_t n = input.size();
  const int vars = input[0][0].vars();
  if (n == 1) return input[0][0];
  PolyMatrix m = input;
  bool negate = false;
  Polynomial prev = Polynomial::constant(vars, Rational(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k;
      for (std::size_t r = k + 1; r < n; ++r)
        if (!m[r][k].is_zero()) { swap_row = r; break; }
      if (swap_row == k) return Polynomial(vars);  // column dead: determinant vanishes
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = sub(mul(m[k][k], m[i][j]), mul(m[i][k], m[k][j]));
        // the one-step fraction-free scheme: this division is always exact
        m[i][j] = (k == 0) ? std::move(num) : divide_exact(num, prev);
      }
      m[i][k] = Polynomial(vars);
    }
    prev = m[k][k];
  }
  return negate ? neg(m[n - 1][n - 1]) : m[n - 1][n - 1];
}

Polynomial determinant(const PolyMatrix& m) {
  check_square(m, "determinant");
  return m.size() <= 3 ? determinant_cofactor(m) : determinant_bareiss(m);
}

bool is_keller(const PolynomialMap& f) {
  return determinant(jacobian(f)) == Polynomial::constant(f.dimension(), Rational(1));
}

bool IdPlusH::cubic_homogeneous() const {
  if (h_is_zero()) return false;
  for (const auto& c : h.components) {
    if (c.is_zero()) continue;
    if (c.lower_degree() != 3 || c.degree() != 3) return false;
  }
  return true;
}

IdPlusH decompose(const PolynomialMap& f) {
  const int n = f.dimension();
  const PolynomialMap id = identity_map(n);
  IdPlusH out;
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Polynomial hi = sub(f.components[static_cast<std::size_t>(i)], id.components[static_cast<std::size_t>(i)]);
    auto low = hi.lower_degree();
    if (low && *low < 2)
      throw NotIdPlusH(i, "component " + std::to_string(i + 1) +
                              " minus its coordinate has a term of degree " +
                              std::to_string(*low) +
                              "; the higher-order part must start at degree 2");
    out.lower_degrees.push_back(low);
    if (low && (!out.min_lower_degree || *low < *out.min_lower_degree))
      out.min_lower_degree = low;
    comps.push_back(std::move(hi));
  }
  out.h = PolynomialMap(std::move(comps));
  return out;
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix matrix_mul(const RationalMatrix& x, const RationalMatrix& y) {
  if (x.n != y.n) throw DimensionMismatch("matrix product of different sizes");
  RationalMatrix r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      if (is_zero(x.at(i, k))) continue;
      for (int j = 0; j < x.n; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

bool matrix_is_zero(const RationalMatrix& x) {
  for (const auto& v : x.a)
    if (!is_zero(v)) return false;
  return true;
}

std::optional<RationalMatrix> matrix_inverse(const RationalMatrix& m) {
  const int n = m.n;
  RationalMatrix work = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!is_zero(work.at(r, col))) { pivot = r; break; }
    if (pivot < 0) return std::nullopt;
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(work.at(pivot, j), work.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    Rational p = work.at(col, col);
    for (int j = 0; j < n; ++j) {
      work.at(col, j) /= p;
      inv.at(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || is_zero(work.at(r, col))) continue;
      Rational factor = work.at(r, col);
      for (int j = 0; j < n; ++j) {
        work.at(r, j) -= factor * work.at(col, j);
        inv.at(r, j) -= factor * inv.at(col, j);
      }
    }
  }
  return inv;
}

std::vector<Rational> constant_part(const PolynomialMap& f) {
  std::vector<Rational> c;
  c.reserve(f.components.size());
  for (const auto& comp : f.components) c.push_back(comp.constant_term());
  return c;
}

RationalMatrix linear_part(const PolynomialMap& f) {
  const int n = f.dimension();
  RationalMatrix m(n);
  for (int i = 0; i < n; ++i) {
    Polynomial lin = homogeneous_component(f.components[static_cast<std::size_t>(i)], 1);
    for (const auto& t : lin.terms())
      for (int j = 0; j < n; ++j)
        if (t.mono.exps[static_cast<std::size_t>(j)] == 1) {
          m.at(i, j) = t.coeff;
          break;
        }
  }
  return m;
}

AffineNormalization normalize_affine(const PolynomialMap& f) {
  const int n = f.dimension();
  AffineNormalization out;
  out.translation = constant_part(f);
  out.linear = linear_part(f);
  auto inv = matrix_inverse(out.linear);
  if (!inv)
    throw SingularLinearPart("the linear part of the map is singular; no affine normalization exists");
  out.linear_inverse = std::move(*inv);

  bool trivial = out.linear == RationalMatrix::identity(n);
  if (trivial)
    for (const auto& c : out.translation)
      if (!is_zero(c)) { trivial = false; break; }
  out.was_normalized_already = trivial;
  if (trivial) {
    out.normalized = f;
    return out;
  }

  std::vector<Polynomial> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Polynomial gi(n);
    for (int j = 0; j < n; ++j) {
      const Rational& w = out.linear_inverse.at(i, j);
      if (is_zero(w)) continue;
      Polynomial fj_shifted = sub(f.components[static_cast<std::size_t>(j)],
                                  Polynomial::constant(n, out.translation[static_cast<std::size_t>(j)]));
      gi = add(gi, mul_scalar(fj_shifted, w));
    }
    comps.push_back(std::move(gi));
  }
  out.normalized = PolynomialMap(std::move(comps));
  return out;
}

PolynomialMap pull_back_inverse(const AffineNormalization& nrm,
                                const PolynomialMap& g_inverse,
                                std::optional<long> max_degree, std::size_t term_limit) {
  if (nrm.was_normalized_already) return g_inverse;
  const int n = g_inverse.dimension();
  // y |-> L^{-1}(y - c), then feed through g^{-1}
  std::vector<Polynomial> affine;
  affine.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<Polynomial::Term> terms;
    Rational constant(0);
    for (int j = 0; j < n; ++j) {
      const Rational& w = nrm.linear_inverse.at(i, j);
      if (is_zero(w)) continue;
      terms.push_back({Monomial::variable(n, j), w});
      constant -= w * nrm.translation[static_cast<std::size_t>(j)];
    }
    if (!is_zero(constant)) terms.push_back({Monomial::unit(n), constant});
    affine.push_back(Polynomial::from_terms(n, std::move(terms)));
  }
  return compose(g_inverse, PolynomialMap(std::move(affine)), max_degree, term_limit);
}

bool nilpotent_of_index_two(const RationalMatrix& a) {
  return matrix_is_zero(matrix_mul(a, a));
}

PolynomialMap druzkowski_map(const RationalMatrix& a, bool force) {
  if (a.n <= 0) throw DimensionMismatch("cubic-linear map needs a positive dimension");
  if (!force && !nilpotent_of_index_two(a))
    throw NotNilpotentOfIndexTwo("matrix square is not zero; pass force to build the map anyway");
  const int n = a.n;
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<Polynomial::Term> lin;
    for (int j = 0; j < n; ++j)
      if (!is_zero(a.at(i, j))) lin.push_back({Monomial::variable(n, j), a.at(i, j)});
    Polynomial form = Polynomial::from_terms(n, std::move(lin));
    comps.push_back(add(Polynomial::variable(n, i), pow(form, 3)));
  }
  return PolynomialMap(std::move(comps));
}

}  // namespace polyinv

// Polynomial maps F: Q^n -> Q^n and the linear algebra around them:
// Jacobians, exact determinants, affine normalization, and the cubic-linear
// construction X + (AX)^{∘3} from a square matrix A.
#pragma once

#include <optional>
#include <vector>

#include "polyinv/polynomial.hpp"

namespace polyinv {

// A square polynomial map: component i is the image of coordinate i, and
// every component lives in the n-variable ring with n == component count.
struct PolynomialMap {
  std::vector<Polynomial> components;

  PolynomialMap() = default;
  explicit PolynomialMap(std::vector<Polynomial> comps);  // validates shape

  int dimension() const { return static_cast<int>(components.size()); }
  // Largest component degree; nullopt for the (degenerate) all-zero map.
  std::optional<long> degree() const;

  bool operator==(const PolynomialMap& other) const { return components == other.components; }
  bool operator!=(const PolynomialMap& other) const { return !(*this == other); }
};

PolynomialMap identity_map(int n);

// compose(f, g)(X) = f(g(X)); g runs first. Both maps must share one
// dimension. The optional degree cutoff and term budget behave as in mul().
PolynomialMap compose(const PolynomialMap& f, const PolynomialMap& g,
                      std::optional<long> max_degree = std::nullopt,
                      std::size_t term_limit = 0);

std::vector<Rational> evaluate_map(const PolynomialMap& f,
                                   const std::vector<Rational>& point);

// Matrix of polynomials, row-major; entry [i][j] of jacobian() is dF_i/dX_j.
using PolyMatrix = std::vector<std::vector<Polynomial>>;

PolyMatrix jacobian(const PolynomialMap& f);

// Exact determinants. determinant() picks cofactor expansion for n <= 3 and
// fraction-free elimination beyond that; both routes are exposed so tests
// can cross-check them against each other.
Polynomial determinant(const PolyMatrix& m);
Polynomial determinant_cofactor(const PolyMatrix& m);
Polynomial determinant_bareiss(const PolyMatrix& m);

// det(Jacobian) identically one.
bool is_keller(const PolynomialMap& f);

// The split F = Id + H. Valid only when every component of H = F - Id is
// zero or has lower degree >= 2 (no constant and no linear admixture);
// anything else throws NotIdPlusH naming the offending component.
struct IdPlusH {
  PolynomialMap h;
  std::vector<std::optional<long>> lower_degrees;  // per component of h
  std::optional<long> min_lower_degree;            // over nonzero components

  bool h_is_zero() const { return !min_lower_degree.has_value(); }
  // Every nonzero component of h homogeneous of degree exactly 3.
  bool cubic_homogeneous() const;
};

IdPlusH decompose(const PolynomialMap& f);

// Dense exact rational matrix, row-major.
struct RationalMatrix {
  int n = 0;
  std::vector<Rational> a;

  RationalMatrix() = default;
  explicit RationalMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, Rational(0)) {}
  static RationalMatrix identity(int n);

  Rational& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const Rational& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  bool operator==(const RationalMatrix& other) const { return n == other.n && a == other.a; }
};

RationalMatrix matrix_mul(const RationalMatrix& x, const RationalMatrix& y);
bool matrix_is_zero(const RationalMatrix& x);

// Exact Gauss-Jordan elimination, first nonzero pivot down each column;
// nullopt when singular.
std::optional<RationalMatrix> matrix_inverse(const RationalMatrix& m);

std::vector<Rational> constant_part(const PolynomialMap& f);  // f(0)
RationalMatrix linear_part(const PolynomialMap& f);           // degree-1 coefficients

// f written as f(x) = L g(x) + c with g(0) = 0 and linear part of g the
// identity: g = L^{-1} (f - c). Throws SingularLinearPart when L has no
// inverse. An inverse of g pulls back to one of f via
// f^{-1}(y) = g^{-1}(L^{-1}(y - c)), see pull_back_inverse().
struct AffineNormalization {
  PolynomialMap normalized;
  std::vector<Rational> translation;  // c = f(0)
  RationalMatrix linear;              // L
  RationalMatrix linear_inverse;
  bool was_normalized_already = false;
};

AffineNormalization normalize_affine(const PolynomialMap& f);

PolynomialMap pull_back_inverse(const AffineNormalization& nrm,
                                const PolynomialMap& g_inverse,
                                std::optional<long> max_degree = std::nullopt,
                                std::size_t term_limit = 0);

// A A == 0 exactly.
bool nilpotent_of_index_two(const RationalMatrix& a);

// The cubic-linear map X + (AX)^{∘3}, i.e. component i is
// X_i + (sum_j a_ij X_j)^3. Rejects matrices with A A != 0 via
// NotNilpotentOfIndexTwo unless force is set; force exists so the shape can
// be studied on matrices outside the nilpotent family.
PolynomialMap druzkowski_map(const RationalMatrix& a, bool force = false);

}  // namespace polyinv

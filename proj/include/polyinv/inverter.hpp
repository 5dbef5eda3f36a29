// Inverse construction for polynomial maps.
//
// The engine iterates, per coordinate i, the linear step P -> P(F) - P
// starting from the coordinate polynomial itself. For an invertible map
// each of these sequences eventually hits zero, and the inverse's i-th
// component is the alternating sum of the sequence entries before that
// point. Working under a degree truncation keeps every step finite; the
// truncation is raised adaptively until the assembled candidate survives
// exact verification by composition, or the theory-side ceiling rules an
// inverse out.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polyinv/polymap.hpp"

namespace polyinv {

// Upper bound for the degree of the inverse of f: (deg f)^(n-1), clamped to
// the range of long. A constant map (degree < 1) has no meaningful bound
// and raises InputError.
long max_inverse_degree(const PolynomialMap& f);

// Number of recursion steps after which a sequence truncated at degree
// target_degree must have died: the smallest integer exceeding
// (D * target_degree - d) / (d - 1) + 1, with D the map degree and d the
// least lower degree among nonzero higher-order components. A map with no
// higher-order part needs exactly one step. f must split as Id + H.
long iteration_cap(const PolynomialMap& f, long target_degree);

struct SequenceOptions {
  std::optional<long> truncation;  // degree cutoff; nullopt = untruncated
  long cap = 0;                    // hard step limit, must be positive
  std::size_t term_limit = 0;      // per-polynomial budget, 0 = unlimited
};

struct SequenceRecord {
  int coordinate = 0;  // 0-based
  std::optional<long> truncation;
  long cap = 0;
  std::vector<Polynomial> terms;    // P_0 .. P_last actually computed
  std::optional<long> stop_index;   // first k with P_k == 0; nullopt = cap hit
  long max_degree_seen = 0;
  std::size_t peak_terms = 0;
};

// P_0 = X_coordinate, P_k = P_{k-1}(f) - P_{k-1}, truncated per options,
// stopping at the first zero or at the cap. f must split as Id + H.
// The overload taking a PowerCache expects one built over f.components with
// the same truncation and term limit (so several coordinates can share the
// memoized powers); the other builds its own.
SequenceRecord build_sequence(const PolynomialMap& f, int coordinate,
                              const SequenceOptions& opts);
SequenceRecord build_sequence(const PolynomialMap& f, int coordinate,
                              const SequenceOptions& opts, PowerCache& cache);

// Alternating sum G_i = sum_{l < m_i} (-1)^l P_l^i per coordinate. Needs one
// record per coordinate (0..n-1, any order) and every record stopped;
// anything else is a caller bug and raises std::logic_error.
PolynomialMap assemble_inverse(const std::vector<SequenceRecord>& records);

// Exact both-ways check f(g) == Id == g(f). Both compositions are computed
// in full; the direction that looks cheaper (smaller outer map) runs first
// and a failure there skips the second.
bool verify_inverse(const PolynomialMap& f, const PolynomialMap& g,
                    std::size_t term_limit = 0);

enum class InversionStatus { Inverted, NotInvertible, BoundExhausted };

enum class NonInvertibilityKind {
  NonconstantJacobian,    // det J is not constant: no polynomial inverse exists
  ZeroJacobianConstant,   // det J is identically zero
  SequenceExhausted,      // candidate failed verification at the full degree bound
};

struct InversionOptions {
  std::size_t term_limit = 4'000'000;  // per-polynomial term budget
  bool parallel = true;                // one worker per coordinate
  std::optional<long> truncation_start;  // default: degree of the (normalized) map
  std::optional<long> truncation_limit;  // user ceiling below the theory bound
  bool keep_sequences = false;           // retain full records in the report
};

struct CoordinateDiagnostics {
  std::optional<long> stop_index;
  long steps_taken = 0;
  long max_degree_seen = 0;
  std::size_t peak_terms = 0;
};

struct InversionReport {
  InversionStatus status = InversionStatus::NotInvertible;
  std::optional<NonInvertibilityKind> reason;
  std::optional<PolynomialMap> inverse;  // inverse of the original map
  bool verified = false;

  bool jacobian_constant = false;
  std::optional<Rational> jacobian_determinant;  // value when constant
  bool affine_normalized = false;

  std::vector<std::optional<long>> stop_indices;  // final truncation round
  std::optional<long> truncation_used;
  long rounds = 0;
  std::vector<CoordinateDiagnostics> coordinates;
  std::vector<SequenceRecord> sequences;  // when keep_sequences was set
};

// Full pipeline: Jacobian pre-check, affine normalization, adaptive
// truncated sequence construction, exact verification, and pull-back of the
// inverse to the original coordinates. See the file comment for the shape
// of the loop and InversionStatus/NonInvertibilityKind for the verdicts.
InversionReport invert(const PolynomialMap& f, const InversionOptions& opts = {});

// Rebuilds the length-depth sequence of p under f without truncation, then
// recomputes each P_l(f) by fresh substitution and tests
//   p == sum_{l < depth} (-1)^l P_l(f) + (-1)^depth P_depth.
// This holds for every map of the Id + H shape, terminated or not, and
// cross-checks the recursion bookkeeping against direct composition.
bool telescoping_check(const PolynomialMap& f, const Polynomial& p, long depth,
                       std::size_t term_limit = 0);

// For each untruncated record that stopped at m: the entry P_{m-1} is a
// polynomial fixed by composition with f. The fixedness is re-verified here
// and a violation raises std::logic_error; exhausted records yield nullopt.
// Records must be untruncated (InputError otherwise).
std::vector<std::optional<Polynomial>> extract_invariants(
    const PolynomialMap& f, const std::vector<SequenceRecord>& records);

struct QuasiTranslationReport {
  bool via_sequence = false;  // untruncated P_2 vanishes for every coordinate
  bool via_jacobian = false;  // JH applied to H is the zero vector
  bool quasi = false;         // the agreed verdict
};

// Whether f = Id + H satisfies f^{-1} = Id - H. The two criteria are
// computed independently; they are provably equivalent, so disagreement
// raises std::logic_error. f must split as Id + H.
QuasiTranslationReport is_quasi_translation(const PolynomialMap& f);

// Largest stop index over the untruncated per-coordinate sequences, i.e.
// the least k with P_k = 0 for every coordinate; nullopt when some
// coordinate has not died within `cap` steps. f must split as Id + H.
std::optional<long> filtration_level(const PolynomialMap& f, long cap);

}  // namespace polyinv

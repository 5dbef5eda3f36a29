#include "polyinv/inverter.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <string>
#include <utility>

namespace polyinv {

namespace {

// D^(n-1) in exact arithmetic, clamped into long.
long clamped_power(long base, int exp) {
  Integer b(base);
  Integer r(1);
  for (int i = 0; i < exp; ++i) r *= b;
  if (!r.fits_slong_p()) return std::numeric_limits<long>::max();
  return r.get_si();
}

// Smallest integer strictly greater than (D*N - d)/(d-1) + 1, assuming
// D >= d >= 2 and N >= 1; with integer floor division that is
// (D*N - d) div (d-1) + 2.
long cap_from_degrees(long map_degree, long min_lower, long target_degree) {
  Integer a = Integer(map_degree) * target_degree - min_lower;
  if (sgn(a) < 0) a = 0;
  Integer cap = a / (min_lower - 1) + 2;
  if (!cap.fits_slong_p()) return std::numeric_limits<long>::max();
  return cap.get_si();
}

long cap_for_split(const IdPlusH& split, long map_degree, long target_degree) {
  if (split.h_is_zero()) return 1;
  return cap_from_degrees(map_degree, *split.min_lower_degree, target_degree);
}

SequenceRecord run_sequence(const PolynomialMap& f, int coordinate,
                            const SequenceOptions& opts, PowerCache& cache) {
  SequenceRecord rec;
  rec.coordinate = coordinate;
  rec.truncation = opts.truncation;
  rec.cap = opts.cap;
  Polynomial current = Polynomial::variable(f.dimension(), coordinate);
  rec.terms.push_back(current);
  rec.peak_terms = current.term_count();
  rec.max_degree_seen = 1;
  for (long k = 1; k <= opts.cap; ++k) {
    Polynomial next = sub(substitute(current, cache), current);
    if (opts.truncation) next = truncate_above(next, *opts.truncation);
    rec.peak_terms = std::max(rec.peak_terms, next.term_count());
    if (auto d = next.degree()) rec.max_degree_seen = std::max(rec.max_degree_seen, *d);
    rec.terms.push_back(next);
    if (next.is_zero()) {
      rec.stop_index = k;
      break;
    }
    current = std::move(next);
  }
  return rec;
}

// Rough cost of using `outer` as the outer map of a composition; used only
// to pick which verification direction runs first.
double composition_cost(const PolynomialMap& outer) {
  double c = 0;
  for (const auto& comp : outer.components)
    c += static_cast<double>(comp.term_count()) *
         (1.0 + static_cast<double>(comp.degree().value_or(0)));
  return c;
}

}  // namespace

long max_inverse_degree(const PolynomialMap& f) {
  auto d = f.degree();
  if (!d || *d < 1)
    throw InputError("degree bound for the inverse needs a map of degree at least 1");
  return clamped_power(*d, f.dimension() - 1);
}

long iteration_cap(const PolynomialMap& f, long target_degree) {
  if (target_degree < 1) throw InputError("iteration cap needs a positive target degree");
  IdPlusH split = decompose(f);
  return cap_for_split(split, f.degree().value_or(1), target_degree);
}

SequenceRecord build_sequence(const PolynomialMap& f, int coordinate,
                              const SequenceOptions& opts, PowerCache& cache) {
  if (coordinate < 0 || coordinate >= f.dimension())
    throw DimensionMismatch("sequence coordinate " + std::to_string(coordinate) +
                            " out of range for dimension " + std::to_string(f.dimension()));
  if (opts.cap < 1) throw InputError("sequence cap must be positive");
  decompose(f);  // shape check only; throws NotIdPlusH for other maps
  return run_sequence(f, coordinate, opts, cache);
}

SequenceRecord build_sequence(const PolynomialMap& f, int coordinate,
                              const SequenceOptions& opts) {
  PowerCache cache(f.components, opts.truncation, opts.term_limit);
  return build_sequence(f, coordinate, opts, cache);
}

PolynomialMap assemble_inverse(const std::vector<SequenceRecord>& records) {
  if (records.empty()) throw std::logic_error("assemble_inverse: no records");
  const int n = static_cast<int>(records.size());
  std::vector<const SequenceRecord*> by_coord(records.size(), nullptr);
  for (const auto& rec : records) {
    if (rec.coordinate < 0 || rec.coordinate >= n || by_coord[static_cast<std::size_t>(rec.coordinate)])
      throw std::logic_error("assemble_inverse: records do not cover each coordinate once");
    by_coord[static_cast<std::size_t>(rec.coordinate)] = &rec;
  }
  std::vector<Polynomial> comps;
  comps.reserve(records.size());
  for (const SequenceRecord* rec : by_coord) {
    if (!rec->stop_index)
      throw std::logic_error("assemble_inverse: sequence for coordinate " +
                             std::to_string(rec->coordinate + 1) + " did not terminate");
    Polynomial gi(n);
    for (long l = 0; l < *rec->stop_index; ++l) {
      const Polynomial& pl = rec->terms[static_cast<std::size_t>(l)];
      gi = (l % 2 == 0) ? add(gi, pl) : sub(gi, pl);
    }
    comps.push_back(std::move(gi));
  }
  return PolynomialMap(std::move(comps));
}

bool verify_inverse(const PolynomialMap& f, const PolynomialMap& g,
                    std::size_t term_limit) {
  if (f.dimension() != g.dimension())
    throw DimensionMismatch("verify: maps have dimensions " +
                            std::to_string(f.dimension()) + " and " +
                            std::to_string(g.dimension()));
  const PolynomialMap id = identity_map(f.dimension());
  const bool f_outer_first = composition_cost(f) <= composition_cost(g);
  const PolynomialMap& outer1 = f_outer_first ? f : g;
  const PolynomialMap& inner1 = f_outer_first ? g : f;
  if (compose(outer1, inner1, std::nullopt, term_limit) != id) return false;
  return compose(inner1, outer1, std::nullopt, term_limit) == id;
}

InversionReport invert(const PolynomialMap& f, const InversionOptions& opts) {
  InversionReport rep;
  const int n = f.dimension();

  Polynomial det = determinant(jacobian(f));
  if (det.is_zero()) {
    rep.status = InversionStatus::NotInvertible;
    rep.reason = NonInvertibilityKind::ZeroJacobianConstant;
    rep.jacobian_constant = true;
    rep.jacobian_determinant = Rational(0);
    return rep;
  }
  if (!det.is_constant()) {
    rep.status = InversionStatus::NotInvertible;
    rep.reason = NonInvertibilityKind::NonconstantJacobian;
    return rep;
  }
  rep.jacobian_constant = true;
  rep.jacobian_determinant = det.constant_term();

  // The determinant of the linear part equals det J at the origin, which we
  // now know is nonzero — normalization cannot fail from here on.
  AffineNormalization nrm = normalize_affine(f);
  rep.affine_normalized = !nrm.was_normalized_already;
  const PolynomialMap& g = nrm.normalized;
  IdPlusH split = decompose(g);  // structurally safe after normalization

  const long map_degree = g.degree().value_or(1);
  const long full_bound = split.h_is_zero() ? 1 : max_inverse_degree(g);
  long bound_ceiling = full_bound;
  if (opts.truncation_limit && *opts.truncation_limit < bound_ceiling)
    bound_ceiling = std::max<long>(1, *opts.truncation_limit);
  long b = opts.truncation_start ? std::max<long>(1, *opts.truncation_start) : map_degree;
  b = std::min(b, bound_ceiling);

  while (true) {
    ++rep.rounds;
    SequenceOptions seq_opts;
    seq_opts.truncation = b;
    seq_opts.cap = cap_for_split(split, map_degree, b);
    seq_opts.term_limit = opts.term_limit;

    std::vector<SequenceRecord> records;
    records.reserve(static_cast<std::size_t>(n));
    if (opts.parallel && n > 1) {
      std::vector<std::future<SequenceRecord>> futures;
      futures.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        futures.push_back(std::async(std::launch::async, [&, i] {
          PowerCache cache(g.components, seq_opts.truncation, seq_opts.term_limit);
          return run_sequence(g, i, seq_opts, cache);
        }));
      for (auto& fut : futures) records.push_back(fut.get());
    } else {
      PowerCache cache(g.components, seq_opts.truncation, seq_opts.term_limit);
      for (int i = 0; i < n; ++i) records.push_back(run_sequence(g, i, seq_opts, cache));
    }

    rep.stop_indices.clear();
    rep.coordinates.clear();
    bool all_stopped = true;
    for (const auto& rec : records) {
      rep.stop_indices.push_back(rec.stop_index);
      rep.coordinates.push_back({rec.stop_index,
                                 static_cast<long>(rec.terms.size()) - 1,
                                 rec.max_degree_seen, rec.peak_terms});
      if (!rec.stop_index) all_stopped = false;
    }
    rep.truncation_used = b;

    if (all_stopped) {
      PolynomialMap candidate = pull_back_inverse(nrm, assemble_inverse(records),
                                                  std::nullopt, opts.term_limit);
      bool ok;
      try {
        ok = verify_inverse(f, candidate, opts.term_limit);
      } catch (const ResourceLimit&) {
        // A wrong candidate can blow past the budget mid-composition even
        // though the true inverse verifies cheaply; treat like a failed
        // round unless the truncation cannot grow any further.
        if (b >= bound_ceiling) throw;
        ok = false;
      }
      if (ok) {
        rep.status = InversionStatus::Inverted;
        rep.verified = true;
        rep.inverse = std::move(candidate);
        if (opts.keep_sequences) rep.sequences = std::move(records);
        return rep;
      }
    }

    if (b >= bound_ceiling) {
      rep.status = bound_ceiling == full_bound ? InversionStatus::NotInvertible
                                               : InversionStatus::BoundExhausted;
      if (bound_ceiling == full_bound) rep.reason = NonInvertibilityKind::SequenceExhausted;
      if (opts.keep_sequences) rep.sequences = std::move(records);
      return rep;
    }
    b = (b > bound_ceiling / 2) ? bound_ceiling : b * 2;
  }
}

bool telescoping_check(const PolynomialMap& f, const Polynomial& p, long depth,
                       std::size_t term_limit) {
  if (depth < 0) throw InputError("telescoping depth must be nonnegative");
  if (p.vars() != f.dimension())
    throw DimensionMismatch("telescoping: polynomial ring does not match the map");
  decompose(f);  // shape check

  std::vector<Polynomial> seq;
  seq.reserve(static_cast<std::size_t>(depth) + 1);
  seq.push_back(p);
  {
    PowerCache cache(f.components, std::nullopt, term_limit);
    for (long k = 1; k <= depth; ++k)
      seq.push_back(sub(substitute(seq.back(), cache), seq.back()));
  }

  // Recompose every P_l(f) from scratch — a fresh cache, not the recursion's
  // own bookkeeping — so the identity is a genuine cross-check.
  PowerCache fresh(f.components, std::nullopt, term_limit);
  Polynomial total(p.vars());
  for (long l = 0; l < depth; ++l) {
    Polynomial composed = substitute(seq[static_cast<std::size_t>(l)], fresh);
    total = (l % 2 == 0) ? add(total, composed) : sub(total, composed);
  }
  const Polynomial& last = seq[static_cast<std::size_t>(depth)];
  total = (depth % 2 == 0) ? add(total, last) : sub(total, last);
  return total == p;
}

std::vector<std::optional<Polynomial>> extract_invariants(
    const PolynomialMap& f, const std::vector<SequenceRecord>& records) {
  std::vector<std::optional<Polynomial>> out;
  out.reserve(records.size());
  PowerCache cache(f.components, std::nullopt, 0);
  for (const auto& rec : records) {
    if (rec.truncation)
      throw InputError("invariants require untruncated sequences");
    if (!rec.stop_index) {
      out.push_back(std::nullopt);
      continue;
    }
    const Polynomial& inv = rec.terms[static_cast<std::size_t>(*rec.stop_index) - 1];
    if (substitute(inv, cache) != inv)
      throw std::logic_error("invariant candidate is not fixed by the map");
    out.push_back(inv);
  }
  return out;
}

QuasiTranslationReport is_quasi_translation(const PolynomialMap& f) {
  IdPlusH split = decompose(f);
  const int n = f.dimension();
  QuasiTranslationReport rep;

  // Route one: the second sequence entry H_i(f) - H_i vanishes everywhere.
  {
    PowerCache cache(f.components, std::nullopt, 0);
    rep.via_sequence = true;
    for (int i = 0; i < n && rep.via_sequence; ++i) {
      const Polynomial& hi = split.h.components[static_cast<std::size_t>(i)];
      if (hi.is_zero()) continue;
      if (!sub(substitute(hi, cache), hi).is_zero()) rep.via_sequence = false;
    }
  }

  // Route two: the Jacobian of H applied to H is the zero vector.
  {
    PolyMatrix jh = jacobian(split.h);
    rep.via_jacobian = true;
    for (int i = 0; i < n && rep.via_jacobian; ++i) {
      Polynomial acc(n);
      for (int j = 0; j < n; ++j)
        acc = add(acc, mul(jh[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                           split.h.components[static_cast<std::size_t>(j)]));
      if (!acc.is_zero()) rep.via_jacobian = false;
    }
  }

  if (rep.via_sequence != rep.via_jacobian)
    throw std::logic_error("quasi-translation criteria disagree");
  rep.quasi = rep.via_sequence && rep.via_jacobian;
  return rep;
}

std::optional<long> filtration_level(const PolynomialMap& f, long cap) {
  if (cap < 1) throw InputError("filtration cap must be positive");
  decompose(f);  // shape check
  const int n = f.dimension();
  SequenceOptions opts;
  opts.cap = cap;
  PowerCache cache(f.components, std::nullopt, 0);
  long level = 0;
  for (int i = 0; i < n; ++i) {
    SequenceRecord rec = run_sequence(f, i, opts, cache);
    if (!rec.stop_index) return std::nullopt;
    level = std::max(level, *rec.stop_index);
  }
  return level;
}

}  // namespace polyinv

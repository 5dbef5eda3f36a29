#include "polyinv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <sstream>

#include "polyinv/binding.hpp"
#include "polyinv/errors.hpp"
#include "polyinv/inverter.hpp"
#include "polyinv/parser.hpp"
#include "polyinv/render.hpp"

namespace polyinv {

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string file;
  std::vector<std::string> binds;
  bool random_bind = false;
  std::uint64_t seed = 0;
  long range = 10;
  std::string format = "text";
  std::size_t max_terms = 0;  // 0 = unlimited (invert pre-seeds its own default)
};

void add_binding_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--bind", o.binds, "bind a parameter, name=value (repeatable)");
  cmd->add_flag("--random-bind", o.random_bind, "draw unbound parameters from a seeded generator");
  cmd->add_option("--seed", o.seed, "seed for --random-bind (default 0)");
  cmd->add_option("--range", o.range, "magnitude range for --random-bind draws (default 10)");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "output format (default text)")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--max-terms", o.max_terms, "per-polynomial term budget, 0 = unlimited");
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("file", o.file, "map file")->required();
  add_binding_flags(cmd, o);
  add_output_flags(cmd, o);
}

std::map<std::string, Rational> parse_bind_args(const std::vector<std::string>& binds) {
  std::map<std::string, Rational> overrides;
  for (const auto& s : binds) {
    auto pos = s.find('=');
    if (pos == std::string::npos || pos == 0)
      throw InputError("--bind expects name=value, got '" + s + "'");
    std::string name = s.substr(0, pos);
    try {
      if (!overrides.emplace(name, parse_rational(s.substr(pos + 1))).second)
        throw InputError("parameter '" + name + "' bound twice on the command line");
    } catch (const std::invalid_argument& ex) {
      throw InputError("bad value in --bind '" + s + "': " + ex.what());
    }
  }
  return overrides;
}

struct LoadedMap {
  MapDocument doc;
  BindingOutcome bound;
};

LoadedMap load_map(const CommonOpts& o) {
  LoadedMap lm;
  lm.doc = parse_map_file(o.file);
  std::optional<RandomBindOptions> random;
  if (o.random_bind) random = RandomBindOptions{o.seed, o.range, {}};
  lm.bound = bind_parameters(lm.doc, parse_bind_args(o.binds), random);
  return lm;
}

json envelope(const char* command, const CommonOpts& o, const LoadedMap& lm) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  j["input"] = {{"file", o.file},
                {"variables", lm.doc.variables},
                {"parameters", lm.doc.parameters}};
  json b;
  b["mode"] = lm.bound.random_used ? "random"
                                   : (lm.doc.parameters.empty() ? "none" : "explicit");
  if (lm.bound.random_used) {
    b["seed"] = std::to_string(lm.bound.seed);
    b["range"] = lm.bound.range;
  }
  json vals = json::array();
  for (const auto& [name, value] : lm.bound.values)
    vals.push_back({{"name", name}, {"value", to_string(value)}});
  b["values"] = vals;
  j["binding"] = b;
  return j;
}

void print_binding_text(std::ostream& out, const LoadedMap& lm) {
  if (lm.bound.values.empty()) return;
  out << "binding:";
  bool first = true;
  for (const auto& [name, value] : lm.bound.values) {
    out << (first ? " " : ", ") << name << " = " << to_string(value);
    first = false;
  }
  if (lm.bound.random_used)
    out << " (seed " << lm.bound.seed << ", range " << lm.bound.range << ")";
  out << "\n";
}

const char* status_word(InversionStatus s) {
  switch (s) {
    case InversionStatus::Inverted: return "inverted";
    case InversionStatus::NotInvertible: return "not_invertible";
    case InversionStatus::BoundExhausted: return "bound_exhausted";
  }
  return "?";
}

const char* reason_word(NonInvertibilityKind k) {
  switch (k) {
    case NonInvertibilityKind::NonconstantJacobian: return "nonconstant_jacobian";
    case NonInvertibilityKind::ZeroJacobianConstant: return "zero_jacobian";
    case NonInvertibilityKind::SequenceExhausted: return "sequence_exhausted";
  }
  return "?";
}

const char* reason_text(NonInvertibilityKind k) {
  switch (k) {
    case NonInvertibilityKind::NonconstantJacobian:
      return "the Jacobian determinant is not constant";
    case NonInvertibilityKind::ZeroJacobianConstant:
      return "the Jacobian determinant is identically zero";
    case NonInvertibilityKind::SequenceExhausted:
      return "no candidate verified at the full degree bound";
  }
  return "?";
}

int do_invert(const CommonOpts& o, bool expect_noninvertible, std::ostream& out) {
  LoadedMap lm = load_map(o);
  InversionOptions opts;
  opts.term_limit = o.max_terms;
  InversionReport rep = invert(lm.bound.map, opts);
  const int n = lm.bound.map.dimension();
  const auto ynames = inverse_variable_names(n);

  if (o.format == "json") {
    json j = envelope("invert", o, lm);
    j["status"] = status_word(rep.status);
    j["reason"] = rep.reason ? json(reason_word(*rep.reason)) : json(nullptr);
    j["jacobian_determinant"] =
        rep.jacobian_determinant ? rational_to_json(*rep.jacobian_determinant) : json(nullptr);
    j["affine_normalized"] = rep.affine_normalized;
    j["truncation"] = rep.truncation_used ? json(*rep.truncation_used) : json(nullptr);
    j["rounds"] = rep.rounds;
    json stops = json::array();
    for (const auto& s : rep.stop_indices) stops.push_back(s ? json(*s) : json(nullptr));
    j["stop_indices"] = stops;
    json coords = json::array();
    for (const auto& c : rep.coordinates)
      coords.push_back({{"stop_index", c.stop_index ? json(*c.stop_index) : json(nullptr)},
                        {"steps", c.steps_taken},
                        {"max_degree", c.max_degree_seen},
                        {"peak_terms", c.peak_terms}});
    j["coordinates"] = coords;
    j["verified"] = rep.verified;
    j["inverse"] = rep.inverse ? map_to_json(*rep.inverse, ynames) : json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    print_binding_text(out, lm);
    out << "status: " << status_word(rep.status) << "\n";
    if (rep.reason) out << "reason: " << reason_text(*rep.reason) << "\n";
    if (rep.jacobian_determinant)
      out << "jacobian determinant: " << to_string(*rep.jacobian_determinant) << "\n";
    if (rep.truncation_used) {
      out << "truncation: " << *rep.truncation_used << " (rounds: " << rep.rounds << ")\n";
      out << "stop indices:";
      for (const auto& s : rep.stop_indices)
        out << " " << (s ? std::to_string(*s) : std::string("-"));
      out << "\n";
    }
    if (rep.inverse) {
      out << "verified: " << (rep.verified ? "yes" : "no") << "\n";
      out << "inverse:\n" << render_map(*rep.inverse, ynames, "G");
    }
  }

  switch (rep.status) {
    case InversionStatus::Inverted: return expect_noninvertible ? 1 : 0;
    case InversionStatus::NotInvertible: return expect_noninvertible ? 0 : 1;
    case InversionStatus::BoundExhausted: return 3;
  }
  return 70;
}

int do_check_keller(const CommonOpts& o, std::ostream& out) {
  LoadedMap lm = load_map(o);
  Polynomial det = determinant(jacobian(lm.bound.map));
  const bool constant = det.is_constant();
  const bool keller = constant && det.constant_term() == 1;

  if (o.format == "json") {
    json j = envelope("check-keller", o, lm);
    j["keller"] = keller;
    j["determinant_constant"] = constant ? rational_to_json(det.constant_term()) : json(nullptr);
    j["determinant_degree"] = det.degree() ? json(*det.degree()) : json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    print_binding_text(out, lm);
    if (constant)
      out << "jacobian determinant: " << to_string(det.constant_term()) << "\n";
    else
      out << "jacobian determinant: nonconstant (degree " << *det.degree() << ")\n";
    out << "keller: " << (keller ? "yes" : "no") << "\n";
  }
  return keller ? 0 : 1;
}

int do_check_quasi(const CommonOpts& o, std::ostream& out) {
  LoadedMap lm = load_map(o);
  QuasiTranslationReport rep = is_quasi_translation(lm.bound.map);

  if (o.format == "json") {
    json j = envelope("check-quasi", o, lm);
    j["quasi_translation"] = rep.quasi;
    j["via_sequence"] = rep.via_sequence;
    j["via_jacobian"] = rep.via_jacobian;
    out << j.dump(2) << "\n";
  } else {
    print_binding_text(out, lm);
    out << "second sequence entries vanish: " << (rep.via_sequence ? "yes" : "no") << "\n";
    out << "jacobian criterion: " << (rep.via_jacobian ? "yes" : "no") << "\n";
    out << "quasi-translation: " << (rep.quasi ? "yes" : "no") << "\n";
  }
  return rep.quasi ? 0 : 1;
}

int do_filtration(const CommonOpts& o, long cap, std::ostream& out) {
  LoadedMap lm = load_map(o);
  std::optional<long> level = filtration_level(lm.bound.map, cap);

  if (o.format == "json") {
    json j = envelope("filtration", o, lm);
    j["cap"] = cap;
    j["level"] = level ? json(*level) : json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    print_binding_text(out, lm);
    if (level)
      out << "filtration level: " << *level << "\n";
    else
      out << "filtration level: not reached within " << cap << " steps\n";
  }
  return level ? 0 : 1;
}

int do_sequence(const CommonOpts& o, long coord, long truncate, long cap,
                std::ostream& out) {
  LoadedMap lm = load_map(o);
  const int n = lm.bound.map.dimension();
  if (coord < 1 || coord > n)
    throw InputError("--coord must be between 1 and " + std::to_string(n));
  SequenceOptions sopts;
  if (truncate >= 0) sopts.truncation = truncate;
  sopts.cap = cap > 0 ? cap
                      : (sopts.truncation ? iteration_cap(lm.bound.map, *sopts.truncation)
                                          : 16);
  sopts.term_limit = o.max_terms;
  SequenceRecord rec = build_sequence(lm.bound.map, static_cast<int>(coord) - 1, sopts);

  if (o.format == "json") {
    json j = envelope("sequence", o, lm);
    j["coordinate"] = coord;
    j["truncation"] = sopts.truncation ? json(*sopts.truncation) : json(nullptr);
    j["cap"] = sopts.cap;
    j["stop_index"] = rec.stop_index ? json(*rec.stop_index) : json(nullptr);
    json terms = json::array();
    for (const auto& p : rec.terms) terms.push_back(polynomial_to_json(p, lm.doc.variables));
    j["terms"] = terms;
    out << j.dump(2) << "\n";
  } else {
    print_binding_text(out, lm);
    for (std::size_t k = 0; k < rec.terms.size(); ++k)
      out << "P" << k << " = " << render_polynomial(rec.terms[k], lm.doc.variables) << "\n";
    if (rec.stop_index)
      out << "stop index: " << *rec.stop_index << "\n";
    else
      out << "no stop within " << sopts.cap << " steps\n";
  }
  return 0;
}

int do_verify(const CommonOpts& o, const std::string& file_g, std::ostream& out) {
  MapDocument doc_f = parse_map_file(o.file);
  MapDocument doc_g = parse_map_file(file_g);
  std::map<std::string, Rational> overrides = parse_bind_args(o.binds);

  // Each file receives the overrides it declares; names unknown to both are
  // still an error.
  auto subset_for = [&](const MapDocument& doc) {
    std::map<std::string, Rational> sub;
    for (const auto& [name, value] : overrides)
      for (const auto& p : doc.parameters)
        if (p == name) { sub.emplace(name, value); break; }
    return sub;
  };
  auto sub_f = subset_for(doc_f);
  auto sub_g = subset_for(doc_g);
  for (const auto& [name, value] : overrides) {
    (void)value;
    if (!sub_f.count(name) && !sub_g.count(name))
      throw InputError("cannot bind unknown parameter '" + name + "'");
  }

  std::optional<RandomBindOptions> random;
  if (o.random_bind) random = RandomBindOptions{o.seed, o.range, {}};
  BindingOutcome bf = bind_parameters(doc_f, sub_f, random);
  BindingOutcome bg = bind_parameters(doc_g, sub_g, random);
  const bool ok = verify_inverse(bf.map, bg.map, o.max_terms);

  if (o.format == "json") {
    json j;
    j["schema"] = 1;
    j["command"] = "verify";
    j["input"] = {{"file", o.file}, {"second_file", file_g}};
    j["verified"] = ok;
    out << j.dump(2) << "\n";
  } else {
    out << "verified: " << (ok ? "yes" : "no") << "\n";
  }
  return ok ? 0 : 1;
}

int do_druzkowski(const CommonOpts& o, const std::string& matrix_file, bool force,
                  std::ostream& out) {
  RationalMatrix a = parse_matrix_file(matrix_file);
  const bool nilpotent = nilpotent_of_index_two(a);
  const bool built = nilpotent || force;
  PolynomialMap map;
  if (built) map = druzkowski_map(a, force);
  const auto names = default_variable_names(a.n);

  if (o.format == "json") {
    json j;
    j["schema"] = 1;
    j["command"] = "druzkowski";
    j["input"] = {{"matrix_file", matrix_file}, {"size", a.n}};
    j["nilpotent_of_index_two"] = nilpotent;
    j["forced"] = built && !nilpotent;
    j["map"] = built ? map_to_json(map, names) : json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    out << "matrix square is zero: " << (nilpotent ? "yes" : "no") << "\n";
    if (built) {
      if (!nilpotent) out << "building anyway (--force)\n";
      out << render_map(map, names, "F");
    }
  }
  return nilpotent ? 0 : 1;
}

int do_invariants(const CommonOpts& o, long cap, std::ostream& out) {
  LoadedMap lm = load_map(o);
  const PolynomialMap& f = lm.bound.map;
  const int n = f.dimension();
  SequenceOptions sopts;
  sopts.cap = cap;
  sopts.term_limit = o.max_terms;
  PowerCache cache(f.components, std::nullopt, o.max_terms);
  std::vector<SequenceRecord> records;
  records.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) records.push_back(build_sequence(f, i, sopts, cache));
  auto invariants = extract_invariants(f, records);

  if (o.format == "json") {
    json j = envelope("invariants", o, lm);
    j["cap"] = cap;
    json list = json::array();
    for (int i = 0; i < n; ++i) {
      const auto& rec = records[static_cast<std::size_t>(i)];
      const auto& inv = invariants[static_cast<std::size_t>(i)];
      list.push_back(
          {{"coordinate", i + 1},
           {"stop_index", rec.stop_index ? json(*rec.stop_index) : json(nullptr)},
           {"invariant", inv ? polynomial_to_json(*inv, lm.doc.variables) : json(nullptr)}});
    }
    j["invariants"] = list;
    out << j.dump(2) << "\n";
  } else {
    print_binding_text(out, lm);
    for (int i = 0; i < n; ++i) {
      const auto& rec = records[static_cast<std::size_t>(i)];
      const auto& inv = invariants[static_cast<std::size_t>(i)];
      out << "coordinate " << (i + 1) << ": ";
      if (inv)
        out << "stop index " << *rec.stop_index << ", invariant "
            << render_polynomial(*inv, lm.doc.variables) << "\n";
      else
        out << "no stop within " << cap << " steps\n";
    }
  }
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"exact inversion and classification of polynomial maps"};
  app.name("polyinv");
  app.require_subcommand(1);

  CommonOpts invert_o;
  invert_o.max_terms = 4'000'000;
  bool expect_noninvertible = false;
  CLI::App* c_invert = app.add_subcommand("invert", "construct and verify the inverse");
  add_common(c_invert, invert_o);
  c_invert->add_flag("--expect-noninvertible", expect_noninvertible,
                     "exit 0 when the map is proved non-invertible");

  CommonOpts keller_o;
  CLI::App* c_keller =
      app.add_subcommand("check-keller", "test whether det(Jacobian) is exactly 1");
  add_common(c_keller, keller_o);

  CommonOpts quasi_o;
  CLI::App* c_quasi =
      app.add_subcommand("check-quasi", "test whether the inverse is Id minus the higher part");
  add_common(c_quasi, quasi_o);

  CommonOpts filt_o;
  long filt_cap = 0;
  CLI::App* c_filt = app.add_subcommand("filtration", "largest sequence stop index");
  add_common(c_filt, filt_o);
  c_filt->add_option("--cap", filt_cap, "step ceiling for the untruncated sequences")
      ->required();

  CommonOpts seq_o;
  long seq_coord = 0;
  long seq_truncate = -1;
  long seq_cap = 0;
  CLI::App* c_seq = app.add_subcommand("sequence", "print one coordinate's sequence");
  add_common(c_seq, seq_o);
  c_seq->add_option("--coord", seq_coord, "coordinate, 1-based")->required();
  c_seq->add_option("--truncate", seq_truncate, "degree cutoff (omit for untruncated)");
  c_seq->add_option("--cap", seq_cap, "step ceiling (default: derived, or 16 untruncated)");

  CommonOpts verify_o;
  std::string verify_second;
  CLI::App* c_verify = app.add_subcommand("verify", "check two maps invert each other");
  c_verify->add_option("file", verify_o.file, "first map file")->required();
  c_verify->add_option("second", verify_second, "second map file")->required();
  add_binding_flags(c_verify, verify_o);
  add_output_flags(c_verify, verify_o);

  CommonOpts dru_o;
  std::string matrix_file;
  bool dru_force = false;
  CLI::App* c_dru = app.add_subcommand("druzkowski", "build the cubic-linear map of a matrix");
  c_dru->add_option("--matrix", matrix_file, "matrix file")->required();
  c_dru->add_flag("--force", dru_force, "build even when the matrix square is nonzero");
  add_output_flags(c_dru, dru_o);

  CommonOpts inva_o;
  long inva_cap = 12;
  CLI::App* c_inva = app.add_subcommand("invariants", "polynomials fixed by the map");
  add_common(c_inva, inva_o);
  c_inva->add_option("--cap", inva_cap, "step ceiling for the untruncated sequences (default 12)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("polyinv");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_invert)) return do_invert(invert_o, expect_noninvertible, out);
    if (app.got_subcommand(c_keller)) return do_check_keller(keller_o, out);
    if (app.got_subcommand(c_quasi)) return do_check_quasi(quasi_o, out);
    if (app.got_subcommand(c_filt)) return do_filtration(filt_o, filt_cap, out);
    if (app.got_subcommand(c_seq))
      return do_sequence(seq_o, seq_coord, seq_truncate, seq_cap, out);
    if (app.got_subcommand(c_verify)) return do_verify(verify_o, verify_second, out);
    if (app.got_subcommand(c_dru)) return do_druzkowski(dru_o, matrix_file, dru_force, out);
    if (app.got_subcommand(c_inva)) return do_invariants(inva_o, inva_cap, out);
    err << "error: no command selected\n";
    return 2;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 70;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 70;
  }
}

}  // namespace polyinv

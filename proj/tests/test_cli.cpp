// End-to-end coverage of the command-line surface: every subcommand, both
// output formats, the exit-code contract, and the error paths. Everything
// runs in-process through run_command with captured streams.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "polyinv/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = polyinv::run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string maps(const std::string& name) {
  return std::string(POLYINV_MAPS_DIR) + "/" + name;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// every parameter of the five-variable examples pinned to 1
std::vector<std::string> ones_binding(std::initializer_list<const char*> params) {
  std::vector<std::string> v;
  for (const char* p : params) {
    v.push_back("--bind");
    v.push_back(std::string(p) + "=1");
  }
  return v;
}

std::vector<std::string> with(std::vector<std::string> base,
                              const std::vector<std::string>& extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  return base;
}

}  // namespace

TEST_CASE("invert: plane example, text output") {
  RunResult r = run({"invert", maps("ex31.map")});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(contains(r.out, "status: inverted"));
  CHECK(contains(r.out, "jacobian determinant: 1"));
  CHECK(contains(r.out, "truncation: 6 (rounds: 1)"));
  CHECK(contains(r.out, "stop indices: 5 5"));
  CHECK(contains(r.out, "verified: yes"));
  CHECK(contains(r.out, "G1 = Y1 - Y2^2\n"));
  CHECK(contains(r.out, "G2 = Y2 - Y1^3 + 3*Y1^2*Y2^2 - 3*Y1*Y2^4 + Y2^6\n"));
  CHECK_FALSE(contains(r.out, "binding:"));  // no parameters, nothing to echo
}

TEST_CASE("invert: plane example, json output") {
  RunResult r = run({"invert", maps("ex31.map"), "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "invert");
  CHECK(j["status"] == "inverted");
  CHECK(j["reason"].is_null());
  CHECK(j["verified"] == true);
  CHECK(j["jacobian_determinant"] == "1");
  CHECK(j["affine_normalized"] == false);
  CHECK(j["truncation"] == 6);
  CHECK(j["rounds"] == 1);
  CHECK(j["stop_indices"] == json::array({5, 5}));
  CHECK(j["binding"]["mode"] == "none");
  CHECK(j["input"]["variables"] == json::array({"X1", "X2"}));

  const json& inv = j["inverse"];
  CHECK(inv["variables"] == json::array({"Y1", "Y2"}));
  REQUIRE(inv["components"].size() == 2);
  CHECK(inv["components"][0]["text"] == "Y1 - Y2^2");
  const json& terms = inv["components"][0]["terms"];
  REQUIRE(terms.size() == 2);
  CHECK(terms[0]["exponents"] == json::array({1, 0}));
  CHECK(terms[0]["numerator"] == "1");
  CHECK(terms[0]["denominator"] == "1");
  CHECK(terms[1]["exponents"] == json::array({0, 2}));
  CHECK(terms[1]["numerator"] == "-1");

  const json& coords = j["coordinates"];
  REQUIRE(coords.size() == 2);
  CHECK(coords[0]["stop_index"] == 5);
  CHECK(coords[0]["steps"] == 5);
}

TEST_CASE("invert: non-invertible map and the expectation flag") {
  RunResult r = run({"invert", maps("notinv.map")});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "status: not_invertible"));
  CHECK(contains(r.out, "reason: the Jacobian determinant is not constant"));

  RunResult ok = run({"invert", maps("notinv.map"), "--expect-noninvertible"});
  CHECK(ok.code == 0);

  RunResult flipped = run({"invert", maps("ex31.map"), "--expect-noninvertible"});
  CHECK(flipped.code == 1);
}

TEST_CASE("invert: term budget exhaustion reports the resource exit code") {
  RunResult r = run({"invert", maps("ex31.map"), "--max-terms", "3"});
  CHECK(r.code == 3);
  CHECK(contains(r.err, "error:"));
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run({"invert", "/nonexistent/void.map"}).code == 2);
  CHECK(run({"frobnicate", maps("ex31.map")}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"invert"}).code == 2);  // missing required file
  CHECK(run({"invert", maps("ex31.map"), "--no-such-flag"}).code == 2);
  CHECK(run({"invert", maps("ex31.map"), "--format", "yaml"}).code == 2);
  CHECK(run({"invert", maps("ex31.map"), "--bind", "justaname"}).code == 2);
  CHECK(run({"invert", maps("ex31.map"), "--bind", "a=1", "--bind", "a=2"}).code == 2);
  CHECK(run({"sequence", maps("ex31.map"), "--coord", "0"}).code == 2);
  CHECK(run({"sequence", maps("ex31.map"), "--coord", "3"}).code == 2);

  RunResult unparsable = run({"invert", maps("dru2.mat")});  // matrix, not a map
  CHECK(unparsable.code == 2);
  CHECK(contains(unparsable.err, "error:"));
}

TEST_CASE("help text exits cleanly") {
  RunResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "invert"));
  CHECK(contains(r.out, "check-keller"));
}

TEST_CASE("check-keller on both outcomes") {
  RunResult yes = run({"check-keller", maps("ex31.map")});
  CHECK(yes.code == 0);
  CHECK(contains(yes.out, "jacobian determinant: 1"));
  CHECK(contains(yes.out, "keller: yes"));

  RunResult no = run({"check-keller", maps("notinv.map")});
  CHECK(no.code == 1);
  CHECK(contains(no.out, "jacobian determinant: nonconstant (degree 1)"));
  CHECK(contains(no.out, "keller: no"));

  RunResult j = run({"check-keller", maps("ex31.map"), "--format", "json"});
  json parsed = json::parse(j.out);
  CHECK(parsed["keller"] == true);
  CHECK(parsed["determinant_constant"] == "1");
  CHECK(parsed["determinant_degree"] == 0);
}

TEST_CASE("check-quasi distinguishes the five-variable variants") {
  const auto ones = ones_binding({"a1", "a2", "a3", "a4", "b1", "c1", "c2", "c5", "e2"});
  RunResult yes = run(with({"check-quasi", maps("ex32_corrected.map")}, ones));
  CHECK(yes.code == 0);
  CHECK(contains(yes.out, "second sequence entries vanish: yes"));
  CHECK(contains(yes.out, "jacobian criterion: yes"));
  CHECK(contains(yes.out, "quasi-translation: yes"));
  CHECK(contains(yes.out, "binding: a1 = 1, a2 = 1"));

  const auto ones_v =
      ones_binding({"a1", "a2", "a3", "a4", "b1", "c1", "c2", "c5", "e2", "e5"});
  RunResult no = run(with({"check-quasi", maps("ex32_verbatim.map")}, ones_v));
  CHECK(no.code == 1);
  CHECK(contains(no.out, "quasi-translation: no"));

  RunResult plain = run({"check-quasi", maps("ex31.map")});
  CHECK(plain.code == 1);
}

TEST_CASE("filtration level") {
  const auto ones = ones_binding({"a1", "a2", "a3", "a4", "b1", "c1", "c2", "c5", "e2"});
  RunResult qt = run(with({"filtration", maps("ex32_corrected.map"), "--cap", "4"}, ones));
  CHECK(qt.code == 0);
  CHECK(contains(qt.out, "filtration level: 2"));

  RunResult open = run({"filtration", maps("ex31.map"), "--cap", "2"});
  CHECK(open.code == 1);
  CHECK(contains(open.out, "filtration level: not reached within 2 steps"));

  RunResult j = run(with({"filtration", maps("ex32_corrected.map"), "--cap", "4",
                          "--format", "json"},
                         ones));
  json parsed = json::parse(j.out);
  CHECK(parsed["level"] == 2);
  CHECK(parsed["cap"] == 4);
  CHECK(parsed["binding"]["mode"] == "explicit");
  CHECK(parsed["binding"]["values"].size() == 9);

  CHECK(run({"filtration", maps("ex31.map")}).code == 2);  // --cap is required
}

TEST_CASE("sequence printing") {
  RunResult r = run({"sequence", maps("ex31.map"), "--coord", "2", "--truncate", "6"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "P0 = X2\n"));
  CHECK(contains(r.out, "P1 = X1^3\n"));
  CHECK(contains(r.out, "stop index: 5"));

  RunResult open = run({"sequence", maps("ex31.map"), "--coord", "1", "--cap", "2"});
  CHECK(open.code == 0);
  CHECK(contains(open.out, "no stop within 2 steps"));

  RunResult j = run({"sequence", maps("ex31.map"), "--coord", "2", "--truncate", "6",
                     "--format", "json"});
  json parsed = json::parse(j.out);
  CHECK(parsed["command"] == "sequence");
  CHECK(parsed["coordinate"] == 2);
  CHECK(parsed["truncation"] == 6);
  CHECK(parsed["stop_index"] == 5);
  REQUIRE(parsed["terms"].size() == 6);  // P_0 .. P_5
  CHECK(parsed["terms"][1]["text"] == "X1^3");
  CHECK(parsed["terms"][5]["text"] == "0");
}

TEST_CASE("verify compositions") {
  RunResult yes = run({"verify", maps("ex31.map"), maps("ex31_inverse.map")});
  CHECK(yes.code == 0);
  CHECK(contains(yes.out, "verified: yes"));

  RunResult sym = run({"verify", maps("ex31_inverse.map"), maps("ex31.map")});
  CHECK(sym.code == 0);

  RunResult no = run({"verify", maps("ex31.map"), maps("ex31.map")});
  CHECK(no.code == 1);
  CHECK(contains(no.out, "verified: no"));

  RunResult j = run({"verify", maps("ex31.map"), maps("ex31_inverse.map"),
                     "--format", "json"});
  json parsed = json::parse(j.out);
  CHECK(parsed["command"] == "verify");
  CHECK(parsed["verified"] == true);

  RunResult unknown = run({"verify", maps("ex31.map"), maps("ex31_inverse.map"),
                           "--bind", "q=1"});
  CHECK(unknown.code == 2);
  CHECK(contains(unknown.err, "cannot bind unknown parameter 'q'"));

  RunResult mismatch = run({"verify", maps("ex31.map"), maps("ex33.map"),
                            "--random-bind", "--seed", "4"});
  CHECK(mismatch.code == 2);  // dimensions 2 vs 6
}

TEST_CASE("cubic-linear builder") {
  RunResult ok = run({"druzkowski", "--matrix", maps("dru2.mat")});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "matrix square is zero: yes"));
  CHECK(contains(ok.out, "F1 = X1 + X1^3 - 3*X1^2*X2 + 3*X1*X2^2 - X2^3\n"));
  CHECK(contains(ok.out, "F2 = X2 + X1^3 - 3*X1^2*X2 + 3*X1*X2^2 - X2^3\n"));

  // squared-zero matrix whose map is nevertheless not Keller: builder says yes
  RunResult sharp = run({"druzkowski", "--matrix", maps("dru2_sharp.mat")});
  CHECK(sharp.code == 0);

  RunResult no = run({"druzkowski", "--matrix", maps("dru2_notnil.mat")});
  CHECK(no.code == 1);
  CHECK(contains(no.out, "matrix square is zero: no"));
  CHECK_FALSE(contains(no.out, "F1 ="));

  RunResult forced = run({"druzkowski", "--matrix", maps("dru2_notnil.mat"), "--force"});
  CHECK(forced.code == 1);  // verdict unchanged by --force
  CHECK(contains(forced.out, "building anyway (--force)"));
  CHECK(contains(forced.out, "F1 = X1 + X2^3\n"));
  CHECK(contains(forced.out, "F2 = X2 + X1^3\n"));

  RunResult j = run({"druzkowski", "--matrix", maps("dru2_notnil.mat"), "--force",
                     "--format", "json"});
  json parsed = json::parse(j.out);
  CHECK(parsed["nilpotent_of_index_two"] == false);
  CHECK(parsed["forced"] == true);
  CHECK(parsed["map"]["components"].size() == 2);

  CHECK(run({"druzkowski", "--matrix", "/nonexistent.mat"}).code == 2);
  CHECK(run({"druzkowski"}).code == 2);  // --matrix is required
}

TEST_CASE("invariants") {
  const auto ones = ones_binding({"a1", "a2", "a3", "a4", "b1", "c1", "c2", "c5", "e2"});
  RunResult r = run(with({"invariants", maps("ex32_corrected.map")}, ones));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "coordinate 1: stop index"));
  CHECK(contains(r.out, "invariant"));

  RunResult open = run({"invariants", maps("ex31.map"), "--cap", "2"});
  CHECK(open.code == 0);
  CHECK(contains(open.out, "coordinate 1: no stop within 2 steps"));

  RunResult j = run(with({"invariants", maps("ex32_corrected.map"), "--format", "json"},
                         ones));
  json parsed = json::parse(j.out);
  REQUIRE(parsed["invariants"].size() == 5);
  CHECK(parsed["invariants"][0]["coordinate"] == 1);
  CHECK_FALSE(parsed["invariants"][0]["invariant"].is_null());
}

TEST_CASE("random binding is reproducible and echoed") {
  std::vector<std::string> argv = {"check-quasi", maps("ex32_corrected.map"),
                                   "--random-bind", "--seed", "11",
                                   "--format", "json"};
  RunResult a = run(argv);
  RunResult b = run(argv);
  CHECK(a.code == 0);  // the corrected variant stays a quasi-translation for generic values
  CHECK(a.out == b.out);  // byte-identical output for the same seed

  json parsed = json::parse(a.out);
  CHECK(parsed["binding"]["mode"] == "random");
  CHECK(parsed["binding"]["seed"] == "11");
  CHECK(parsed["binding"]["range"] == 10);
  CHECK(parsed["binding"]["values"].size() == 9);

  RunResult other = run({"check-quasi", maps("ex32_corrected.map"),
                         "--random-bind", "--seed", "12", "--format", "json"});
  json parsed_other = json::parse(other.out);
  CHECK(parsed["binding"]["values"] != parsed_other["binding"]["values"]);

  // an explicit bind wins over the random draw
  RunResult mixed = run({"check-quasi", maps("ex32_corrected.map"),
                         "--random-bind", "--seed", "11",
                         "--bind", "a1=7", "--format", "json"});
  json parsed_mixed = json::parse(mixed.out);
  bool found = false;
  for (const auto& v : parsed_mixed["binding"]["values"])
    if (v["name"] == "a1") {
      CHECK(v["value"] == "7");
      found = true;
    }
  CHECK(found);
}

TEST_CASE("unbound parameters are an input error") {
  RunResult r = run({"invert", maps("ex32_corrected.map")});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "error:"));
}

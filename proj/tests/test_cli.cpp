#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "affweyl/cli.hpp"
#include "affweyl/report.hpp"
#include "affweyl/session.hpp"

using namespace affweyl;

namespace {

std::string cfg(const std::string& name) {
  return std::string(AFFWEYL_CONFIG_DIR) + "/" + name;
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(AFFWEYL_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct RunResult {
  int status;
  std::string out, err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("config loading", "[cli]") {
  SessionConfig c = load_config(cfg("a1.cfg"));
  REQUIRE(c.cartan.type == "A1");
  REQUIRE(c.cartan.lattice == LatticeKind::SimplyConnected);
  Session s = open_session(c);
  REQUIRE(s.datum->rank == 1);
  REQUIRE(s.twist->is_identity_twist());

  SessionConfig cf = load_config(cfg("a2_flip.cfg"));
  REQUIRE(cf.diagram_perm == std::vector<int>{1, 0});
  Session sf = open_session(cf);
  REQUIRE(sf.twist->order == 2);

  REQUIRE_THROWS_WITH(load_config(cfg("missing.cfg")),
                      Catch::Matchers::ContainsSubstring("cannot open"));
}

TEST_CASE("config validation failures", "[cli]") {
  // lattice that misses the coroot lattice
  nlohmann::json bad = {{"cartan_type", "A1"}, {"lattice", {{3}}}};
  SessionConfig c = parse_config(bad);
  REQUIRE_THROWS_WITH(open_session(c),
                      Catch::Matchers::ContainsSubstring("lattice does not contain"));

  REQUIRE_THROWS_WITH(parse_config(nlohmann::json{{"cartan_type", "A1"}}),
                      Catch::Matchers::ContainsSubstring("lattice"));
  REQUIRE_THROWS_WITH(parse_config(nlohmann::json{{"cartan_type", "A1"},
                                                  {"lattice", "maximal"}}),
                      Catch::Matchers::ContainsSubstring("simply_connected"));

  // undeclared twist label
  nlohmann::json tw = {{"cartan_type", "A1"},
                       {"lattice", "adjoint"},
                       {"twist", {{"omega", "zeta"}}}};
  REQUIRE_THROWS_WITH(open_session(parse_config(tw)),
                      Catch::Matchers::ContainsSubstring("not declared"));
}

TEST_CASE("cli golden outputs", "[cli]") {
  struct Case {
    std::string file;
    std::vector<std::string> args;
  };
  std::vector<Case> cases = {
      {"cli_classify_a1.txt",
       {"classify", "--datum", cfg("a1.cfg"), "--element", "s0 s1"}},
      {"cli_fiber_a1.txt", {"fiber", "--datum", cfg("a1.cfg"), "--element", ""}},
      {"cli_cocenter_a1.txt",
       {"cocenter", "--datum", cfg("a1.cfg"), "--element", "s0 s1 s0"}},
      {"cli_reduce_dot_a1.txt",
       {"reduce", "--datum", cfg("a1.cfg"), "--element", "s0 s1 s0", "--format", "dot"}},
      {"cli_triples_a1.txt", {"triples", "--datum", cfg("a1.cfg"), "--element", ""}},
      {"cli_pairs_a1_adjoint.txt", {"rigid-pairs", "--datum", cfg("a1_adjoint.cfg")}},
      {"cli_classify_a2_flip_json.txt",
       {"classify", "--datum", cfg("a2_flip.cfg"), "--element", "s1 s2", "--format",
        "structured"}},
  };
  for (const Case& k : cases) {
    INFO(k.file);
    RunResult r1 = run_cli(k.args);
    REQUIRE(r1.status == 0);
    REQUIRE(r1.err.empty());
    REQUIRE(r1.out == golden(k.file));
    // byte-identical across repeated runs
    RunResult r2 = run_cli(k.args);
    REQUIRE(r2.out == r1.out);
  }
}

TEST_CASE("cli errors never print partial reports", "[cli]") {
  RunResult r = run_cli({"classify", "--datum", cfg("a1.cfg"), "--element", "zork"});
  REQUIRE(r.status != 0);
  REQUIRE(r.out.empty());
  REQUIRE_THAT(r.err, Catch::Matchers::ContainsSubstring("unknown token"));

  RunResult r2 = run_cli({"cocenter", "--datum", cfg("a1.cfg"), "--element", "e",
                          "--format", "dot"});
  REQUIRE(r2.status != 0);
  REQUIRE(r2.out.empty());

  RunResult r3 = run_cli({"classify", "--datum", cfg("nope.cfg"), "--element", "e"});
  REQUIRE(r3.status != 0);
  REQUIRE_THAT(r3.err, Catch::Matchers::ContainsSubstring("cannot open"));
}

TEST_CASE("serialization round trips", "[cli]") {
  // rational vectors
  for (const RatVec& v : {RatVec{}, RatVec{Rat(1)}, RatVec{Rat(-3, 2), Rat(0), Rat(7, 3)}})
    REQUIRE(parse_rat_vec(str(v)) == v);
  // polynomials
  std::vector<ParamPoly> polys = {ParamPoly(0), ParamPoly(1), ParamPoly(-4),
                                  ParamPoly::q(), ParamPoly::q_minus_one()};
  polys.push_back(ParamPoly::q() * ParamPoly::q() * ParamPoly(3) - ParamPoly(2));
  polys.push_back(ParamPoly(0) - ParamPoly::q());
  for (const ParamPoly& p : polys) REQUIRE(ParamPoly::parse(p.str()) == p);
  // elements through the session tokenizer
  Session s = open_session_file(cfg("a2_adjoint.cfg"));
  for (const IntVec& c : s.datum->omega.torsion_elements()) {
    ExtAffElt tau = omega_rep_from_coords(*s.datum, c);
    for (const ExtAffElt& w : enumerate_coset_ball(tau, 4))
      REQUIRE(s.parse_element(s.show(w)) == w);
  }
}

TEST_CASE("dot outputs have graph structure", "[cli]") {
  RunResult r = run_cli({"fiber", "--datum", cfg("a1.cfg"), "--element", "s0 s1",
                         "--format", "dot"});
  REQUIRE(r.status == 0);
  REQUIRE_THAT(r.out, Catch::Matchers::StartsWith("digraph"));
  REQUIRE_THAT(r.out, Catch::Matchers::ContainsSubstring("style=dashed"));
}

TEST_CASE("nmax subcommand", "[cli]") {
  RunResult r = run_cli({"nmax", "--datum", cfg("a2.cfg")});
  REQUIRE(r.status == 0);
  REQUIRE(r.out == "n_max: 3\n");
}

TEST_CASE("help and missing subcommand", "[cli]") {
  RunResult help = run_cli({"--help"});
  REQUIRE(help.status == 0);
  REQUIRE_THAT(help.out, Catch::Matchers::ContainsSubstring("classify"));
  RunResult none = run_cli({});
  REQUIRE(none.status != 0);
  REQUIRE(none.out.empty());
}

TEST_CASE("dcosets subcommand", "[cli]") {
  RunResult r = run_cli({"dcosets", "--datum", cfg("a1.cfg"), "--left", "0", "--right",
                         "1", "--bound", "2"});
  REQUIRE(r.status == 0);
  REQUIRE(r.out == "reps: 2\ne\ns1 s0\n");
}

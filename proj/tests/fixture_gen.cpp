// Regenerates the golden files under tests/golden from the oracle and the
// CLI. Usage: fixture_gen <golden_dir> <config_dir>
//
// The dcosets fixture is produced by the oracle's descent filter, not by the
// library code it pins. The cli_* fixtures freeze the CLI's byte-level output
// for regression; inspect the diff when regenerating.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "affweyl/cli.hpp"
#include "oracle.hpp"

using namespace affweyl;

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  std::cout << "wrote " << path << "\n";
}

std::string oracle_dcosets_a1() {
  RootDatum rd = build_root_datum({"A1", LatticeKind::SimplyConnected, {}});
  OmegaLabels labels = default_labels(rd);
  // enumerate words of length <= 2 exhaustively, keep oracle-side reps
  std::map<std::vector<std::int64_t>, ExtAffElt> ball;
  std::vector<ExtAffElt> frontier{ExtAffElt::identity(rd)};
  ball.emplace(frontier[0].flat_key(), frontier[0]);
  for (int d = 0; d < 2; ++d) {
    std::vector<ExtAffElt> next;
    for (const ExtAffElt& w : frontier)
      for (int i = 0; i < rd.n_simple_affine(); ++i) {
        ExtAffElt v = mul(simple_affine(rd, i), w);
        if (ball.emplace(v.flat_key(), v).second) next.push_back(v);
      }
    frontier = std::move(next);
  }
  std::vector<std::pair<std::pair<std::int64_t, std::string>, std::string>> reps;
  for (const auto& [k, w] : ball) {
    if (oracle::oracle_length(w) > 2) continue;
    if (!oracle::oracle_dcoset_rep(w, {0}, {0})) continue;
    std::string name = element_string(w, labels);
    reps.push_back({{oracle::oracle_length(w), name}, name});
  }
  std::sort(reps.begin(), reps.end());
  std::string out;
  for (const auto& [key, name] : reps) out += name + "\n";
  return out;
}

std::string run_cli_capture(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  if (status != 0) throw std::runtime_error("cli failed: " + err.str());
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: fixture_gen <golden_dir> <config_dir>\n";
    return 2;
  }
  std::string golden = argv[1], cfg = argv[2];
  try {
    write_file(golden + "/dcosets_a1_s0_s0_2.txt", oracle_dcosets_a1());
    write_file(golden + "/cli_classify_a1.txt",
               run_cli_capture({"classify", "--datum", cfg + "/a1.cfg", "--element", "s0 s1"}));
    write_file(golden + "/cli_fiber_a1.txt",
               run_cli_capture({"fiber", "--datum", cfg + "/a1.cfg", "--element", ""}));
    write_file(golden + "/cli_cocenter_a1.txt",
               run_cli_capture({"cocenter", "--datum", cfg + "/a1.cfg", "--element", "s0 s1 s0"}));
    write_file(golden + "/cli_reduce_dot_a1.txt",
               run_cli_capture({"reduce", "--datum", cfg + "/a1.cfg", "--element", "s0 s1 s0",
                                "--format", "dot"}));
    write_file(golden + "/cli_triples_a1.txt",
               run_cli_capture({"triples", "--datum", cfg + "/a1.cfg", "--element", ""}));
    write_file(golden + "/cli_pairs_a1_adjoint.txt",
               run_cli_capture({"rigid-pairs", "--datum", cfg + "/a1_adjoint.cfg"}));
    write_file(golden + "/cli_classify_a2_flip_json.txt",
               run_cli_capture({"classify", "--datum", cfg + "/a2_flip.cfg", "--element",
                                "s1 s2", "--format", "structured"}));
  } catch (const std::exception& e) {
    std::cerr << "fixture_gen: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

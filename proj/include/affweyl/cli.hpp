#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affweyl/report.hpp"
#include "affweyl/session.hpp"

namespace affweyl {
namespace cli {

namespace detail {

inline std::vector<int> parse_index_set(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    if (cur.empty()) continue;
    out.push_back(std::stoi(cur));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<ExtAffElt> parse_tau_list(const Session& s, const std::vector<std::string>& taus) {
  if (taus.empty()) return default_tau_list(s);
  std::vector<ExtAffElt> out;
  for (const std::string& t : taus) {
    ExtAffElt w = s.parse_element(t);
    if (length(w) != 0) throw Error("cli", "tau '" + t + "' does not have length zero");
    out.push_back(w);
  }
  return out;
}

}  // namespace detail

/// Dispatch a full command line. Returns the process exit status; reports are
/// printed to `out` only when the whole computation succeeded.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact combinatorics of extended affine Weyl groups: Newton strata, "
               "minimal length elements, Hecke cocenters, rigid covers"};
  app.require_subcommand(1);

  std::string datum_path, element, element2, format_override;
  std::string left_set, right_set;
  std::vector<std::string> tau_tokens;
  std::int64_t bound = -1;

  auto add_common = [&](CLI::App* sub, bool needs_element) {
    sub->add_option("--datum", datum_path, "session config file")->required();
    if (needs_element)
      sub->add_option("--element", element, "element in token syntax, e.g. \"s0 s1\"");
    sub->add_option("--format", format_override, "text | structured | dot");
    return sub;
  };

  CLI::App* c_classify = add_common(app.add_subcommand("classify", "Newton invariants of an element"), true);
  CLI::App* c_reduce = add_common(app.add_subcommand("reduce", "reduce to a minimal length element"), true);
  CLI::App* c_fiber = add_common(app.add_subcommand("fiber", "minimal elements with the element's invariants"), true);
  CLI::App* c_triples = add_common(app.add_subcommand("triples", "standard triples covering the fiber"), true);
  CLI::App* c_cocenter = add_common(app.add_subcommand("cocenter", "cocenter reduction of T_element"), true);
  CLI::App* c_grade = add_common(app.add_subcommand("grade", "Newton grading of the reduced T_element"), true);
  CLI::App* c_trace = add_common(app.add_subcommand("trace-check", "compare T_x T_y with T_y T_theta(x) in the cocenter"), true);
  c_trace->add_option("--element2", element2, "second element");
  CLI::App* c_pairs = add_common(app.add_subcommand("rigid-pairs", "standard pairs over a tau list"), false);
  c_pairs->add_option("--tau", tau_tokens, "length-zero elements (default: identity + torsion generators)");
  CLI::App* c_cover = add_common(app.add_subcommand("rigid-cover", "standard pair covering a rigid minimal element"), true);
  CLI::App* c_dcosets = add_common(app.add_subcommand("dcosets", "minimal double coset representatives in a ball"), false);
  c_dcosets->add_option("--left", left_set, "left descent-free index set, e.g. \"0,1\"");
  c_dcosets->add_option("--right", right_set, "right descent-free index set");
  c_dcosets->add_option("--bound", bound, "length bound (default: config ball_radius)");
  c_dcosets->add_option("--tau", tau_tokens, "length-zero coset base points");
  CLI::App* c_nmax = add_common(app.add_subcommand("nmax", "maximal finite-parabolic longest length"), false);

  std::vector<std::string> args = argv;
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return 0;
    }
    err << "cli: " << e.what() << "\n";
    return 1;
  }

  try {
    Session s = open_session_file(datum_path);
    std::string format = format_override.empty() ? s.config.format : format_override;
    if (format != "text" && format != "structured" && format != "dot")
      throw Error("cli", "format must be 'text', 'structured', or 'dot'");
    std::string text;

    if (c_classify->parsed()) {
      ExtAffElt w = s.parse_element(element);
      if (format == "dot") throw Error("cli", "dot output is available for reduce and fiber");
      text = format == "structured" ? report::classify_json(s, w) : report::classify_text(s, w);
    } else if (c_reduce->parsed()) {
      ExtAffElt w = s.parse_element(element);
      text = format == "dot" ? report::reduce_dot(s, w)
             : format == "structured" ? report::reduce_json(s, w)
                                      : report::reduce_text(s, w);
    } else if (c_fiber->parsed()) {
      ExtAffElt w = s.parse_element(element);
      FiberReport rep = s.conj->fiber_min(w);
      text = format == "dot" ? report::fiber_dot(s, rep)
             : format == "structured" ? report::fiber_json(s, rep)
                                      : report::fiber_text(s, rep);
    } else if (c_triples->parsed()) {
      ExtAffElt w = s.parse_element(element);
      if (format == "dot") throw Error("cli", "dot output is available for reduce and fiber");
      text = format == "structured" ? report::triples_json(s, w) : report::triples_text(s, w);
    } else if (c_cocenter->parsed()) {
      ExtAffElt w = s.parse_element(element);
      if (format == "dot") throw Error("cli", "dot output is available for reduce and fiber");
      CocenterVector cv = cocenter_reduce(*s.conj, HeckeElt::basis(w));
      text = format == "structured"
                 ? report::dump_json(nlohmann::json{{"terms", report::cocenter_json_terms(s, cv)}})
                 : report::cocenter_lines(s, cv);
    } else if (c_grade->parsed()) {
      ExtAffElt w = s.parse_element(element);
      if (format == "dot") throw Error("cli", "dot output is available for reduce and fiber");
      CocenterVector cv = cocenter_reduce(*s.conj, HeckeElt::basis(w));
      auto graded = newton_grade(*s.conj, cv);
      text = format == "structured" ? report::grade_json(s, graded) : report::grade_text(s, graded);
    } else if (c_trace->parsed()) {
      ExtAffElt x = s.parse_element(element);
      ExtAffElt y = s.parse_element(element2);
      if (format == "dot") throw Error("cli", "dot output is available for reduce and fiber");
      TraceCheckResult r = trace_check(*s.conj, x, y);
      if (format == "structured") {
        nlohmann::json j{{"equal", r.ok},
                         {"discrepancy", report::cocenter_json_terms(s, r.discrepancy)}};
        text = report::dump_json(j);
      } else {
        text = report::trace_text(s, r);
      }
    } else if (c_pairs->parsed()) {
      if (format == "dot") throw Error("cli", "dot output is available for reduce and fiber");
      std::vector<ExtAffElt> taus = detail::parse_tau_list(s, tau_tokens);
      std::vector<StandardPair> ps = standard_pairs(*s.conj, taus);
      text = format == "structured" ? report::pairs_json(s, ps) : report::pairs_text(s, ps);
    } else if (c_cover->parsed()) {
      ExtAffElt w = s.parse_element(element);
      if (format == "dot") throw Error("cli", "dot output is available for reduce and fiber");
      StandardPair p = rigid_cover(*s.conj, w);
      if (format == "structured") {
        text = report::dump_json(nlohmann::json{{"element", s.show(w)}, {"K", p.k}, {"tau", s.show(p.tau)}});
      } else {
        text = report::cover_text(s, w, p);
      }
    } else if (c_dcosets->parsed()) {
      if (format == "dot") throw Error("cli", "dot output is available for reduce and fiber");
      std::vector<ExtAffElt> taus = detail::parse_tau_list(s, tau_tokens);
      std::int64_t b = bound >= 0 ? bound : s.config.ball_radius;
      std::vector<ExtAffElt> reps = double_coset_reps(
          *s.conj, detail::parse_index_set(left_set), detail::parse_index_set(right_set), b, taus);
      text = format == "structured" ? report::reps_json(s, reps) : report::reps_text(s, reps);
    } else if (c_nmax->parsed()) {
      if (format == "dot") throw Error("cli", "dot output is available for reduce and fiber");
      std::int64_t n = n_max(*s.datum);
      text = format == "structured" ? report::dump_json(nlohmann::json{{"n_max", n}})
                                    : "n_max: " + std::to_string(n) + "\n";
    }

    out << text;
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "cli: " << e.what() << "\n";
    return 1;
  }
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace cli
}  // namespace affweyl

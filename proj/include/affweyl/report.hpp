#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "affweyl/session.hpp"

namespace affweyl {

namespace report {

inline std::string index_set(const std::vector<int>& k) {
  std::string s = "{";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(k[i]);
  }
  return s + "}";
}

inline nlohmann::json rat_vec_json(const RatVec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const Rat& x : v) a.push_back(x.str());
  return a;
}

inline nlohmann::json int_vec_json(const IntVec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (std::int64_t x : v) a.push_back(x);
  return a;
}

inline std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---- classify ----

inline std::string classify_text(const Session& s, const ExtAffElt& w) {
  NewtonPoint np = s.conj->newton_point(w);
  std::ostringstream out;
  out << "element: " << s.show(w) << "\n";
  out << "length: " << length(w) << "\n";
  out << "nu: " << str(np.nu) << "\n";
  out << "nu_bar: " << str(np.nu_bar) << "\n";
  out << "kappa: " << str(s.conj->kappa(w)) << "\n";
  out << "straight: " << (s.conj->is_straight(w) ? "true" : "false") << "\n";
  return out.str();
}

inline std::string classify_json(const Session& s, const ExtAffElt& w) {
  NewtonPoint np = s.conj->newton_point(w);
  nlohmann::json j;
  j["element"] = s.show(w);
  j["length"] = length(w);
  j["nu"] = rat_vec_json(np.nu);
  j["nu_bar"] = rat_vec_json(np.nu_bar);
  j["witness_power"] = np.witness_n;
  j["kappa"] = int_vec_json(s.conj->kappa(w));
  j["straight"] = s.conj->is_straight(w);
  return dump_json(j);
}

// ---- reduce ----

inline std::string path_string(const std::vector<ReductionStep>& path) {
  std::string s = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += " ";
    s += "s" + std::to_string(path[i].gen) + ":" + std::to_string(path[i].delta);
  }
  return s + "]";
}

inline std::string reduce_text(const Session& s, const ExtAffElt& w) {
  ReductionResult r = s.conj->reduce_to_min(w);
  std::ostringstream out;
  out << "input: " << s.show(w) << "\n";
  out << "input_length: " << length(w) << "\n";
  out << "minimal: " << s.show(r.minimal_element) << "\n";
  out << "minimal_length: " << length(r.minimal_element) << "\n";
  out << "label: " << s.show(r.class_label) << "\n";
  out << "path: " << path_string(r.path) << "\n";
  return out.str();
}

inline std::string reduce_json(const Session& s, const ExtAffElt& w) {
  ReductionResult r = s.conj->reduce_to_min(w);
  nlohmann::json j;
  j["input"] = s.show(w);
  j["input_length"] = length(w);
  j["minimal"] = s.show(r.minimal_element);
  j["minimal_length"] = length(r.minimal_element);
  j["label"] = s.show(r.class_label);
  nlohmann::json steps = nlohmann::json::array();
  for (const ReductionStep& st : r.path)
    steps.push_back({{"gen", st.gen}, {"delta", st.delta}});
  j["path"] = steps;
  return dump_json(j);
}

inline std::string reduce_dot(const Session& s, const ExtAffElt& w) {
  ReductionResult r = s.conj->reduce_to_min(w);
  std::ostringstream out;
  out << "digraph reduction {\n  rankdir=LR;\n";
  ExtAffElt cur = w;
  out << "  \"" << s.show(cur) << "\";\n";
  for (const ReductionStep& st : r.path) {
    ExtAffElt nxt = s.conj->move(cur, st.gen);
    out << "  \"" << s.show(cur) << "\" -> \"" << s.show(nxt) << "\" [label=\"s"
        << st.gen << "\", style=" << (st.delta < 0 ? "solid" : "dashed") << "];\n";
    cur = nxt;
  }
  out << "}\n";
  return out.str();
}

// ---- fiber ----

inline std::string fiber_text(const Session& s, const FiberReport& rep) {
  std::ostringstream out;
  out << "nu_bar: " << str(rep.nu.nu_bar) << "\n";
  out << "kappa: " << str(rep.nu.kappa) << "\n";
  out << "classes: " << rep.classes.size() << "\n";
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    const FiberClass& c = rep.classes[i];
    out << "class " << (i + 1) << ": label = " << s.show(c.label)
        << " | straight = " << (c.straight ? "true" : "false") << " | minimal = { ";
    for (std::size_t k = 0; k < c.minimal_elements.size(); ++k) {
      if (k) out << " ; ";
      out << s.show(c.minimal_elements[k]);
    }
    out << " }\n";
  }
  out << "N_nu: " << rep.n_nu << "\n";
  return out.str();
}

inline std::string fiber_json(const Session& s, const FiberReport& rep) {
  nlohmann::json j;
  j["nu_bar"] = rat_vec_json(rep.nu.nu_bar);
  j["kappa"] = int_vec_json(rep.nu.kappa);
  nlohmann::json classes = nlohmann::json::array();
  for (const FiberClass& c : rep.classes) {
    nlohmann::json jc;
    jc["label"] = s.show(c.label);
    jc["straight"] = c.straight;
    nlohmann::json mins = nlohmann::json::array();
    for (const ExtAffElt& m : c.minimal_elements) mins.push_back(s.show(m));
    jc["minimal_elements"] = mins;
    classes.push_back(jc);
  }
  j["classes"] = classes;
  j["N_nu"] = rep.n_nu;
  return dump_json(j);
}

inline std::string fiber_dot(const Session& s, const FiberReport& rep) {
  std::ostringstream out;
  out << "digraph fiber {\n  rankdir=LR;\n";
  for (std::size_t ci = 0; ci < rep.classes.size(); ++ci) {
    const FiberClass& c = rep.classes[ci];
    out << "  subgraph cluster_" << ci << " {\n";
    out << "    label=\"" << s.show(c.label) << "\";\n";
    std::set<std::pair<std::string, std::string>> edges;
    for (const ExtAffElt& m : c.minimal_elements) out << "    \"" << s.show(m) << "\";\n";
    for (const ExtAffElt& m : c.minimal_elements) {
      for (int i = 0; i < s.datum->n_simple_affine(); ++i) {
        ExtAffElt y = s.conj->move(m, i);
        if (length(y) != length(m)) continue;
        std::string a = s.show(m), b = s.show(y);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (edges.insert({a, b}).second)
          out << "    \"" << a << "\" -> \"" << b << "\" [style=dashed, dir=none];\n";
      }
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

// ---- standard triples ----

inline std::string triples_text(const Session& s, const ExtAffElt& seed) {
  std::vector<StandardTriple> ts = s.conj->standard_triples(seed);
  NewtonPair nu = s.conj->pi(seed);
  std::ostringstream out;
  out << "nu_bar: " << str(nu.nu_bar) << "\n";
  out << "kappa: " << str(nu.kappa) << "\n";
  out << "triples: " << ts.size() << "\n";
  std::vector<ExtAffElt> products;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out << "triple " << (i + 1) << ": x = " << s.show(ts[i].x)
        << " | K = " << index_set(ts[i].k) << " | u = " << s.show(ts[i].u) << "\n";
    products.push_back(mul(ts[i].u, ts[i].x));
  }
  sort_shortlex(products);
  out << "products: { ";
  for (std::size_t k = 0; k < products.size(); ++k) {
    if (k) out << " ; ";
    out << s.show(products[k]);
  }
  out << " }\n";
  return out.str();
}

inline std::string triples_json(const Session& s, const ExtAffElt& seed) {
  std::vector<StandardTriple> ts = s.conj->standard_triples(seed);
  NewtonPair nu = s.conj->pi(seed);
  nlohmann::json j;
  j["nu_bar"] = rat_vec_json(nu.nu_bar);
  j["kappa"] = int_vec_json(nu.kappa);
  nlohmann::json arr = nlohmann::json::array();
  for (const StandardTriple& t : ts) {
    arr.push_back({{"x", s.show(t.x)}, {"K", t.k}, {"u", s.show(t.u)},
                   {"product", s.show(mul(t.u, t.x))}});
  }
  j["triples"] = arr;
  return dump_json(j);
}

// ---- cocenter / grade / trace ----

inline std::string coeff_string(const ParamPoly& p) {
  int nonzero = 0;
  for (std::int64_t c : p.c) nonzero += c != 0;
  std::string s = p.str();
  return nonzero > 1 ? "(" + s + ")" : s;
}

inline std::string cocenter_lines(const Session& s, const CocenterVector& cv) {
  if (cv.empty()) return "0\n";
  std::ostringstream out;
  for (const auto& [w, p] : cv.sorted_terms())
    out << coeff_string(p) << " * [" << s.show(w) << "]\n";
  return out.str();
}

inline nlohmann::json cocenter_json_terms(const Session& s, const CocenterVector& cv) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [w, p] : cv.sorted_terms()) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::int64_t c : p.c) coeffs.push_back(c);
    arr.push_back({{"label", s.show(w)}, {"coeff", coeffs}, {"coeff_str", p.str()}});
  }
  return arr;
}

inline std::string grade_text(const Session& s, const std::map<NewtonPair, CocenterVector>& g) {
  std::ostringstream out;
  out << "components: " << g.size() << "\n";
  for (const auto& [nu, cv] : g) {
    out << "component kappa = " << str(nu.kappa) << " nu_bar = " << str(nu.nu_bar) << ":\n";
    out << cocenter_lines(s, cv);
  }
  return out.str();
}

inline std::string grade_json(const Session& s, const std::map<NewtonPair, CocenterVector>& g) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [nu, cv] : g) {
    arr.push_back({{"kappa", int_vec_json(nu.kappa)},
                   {"nu_bar", rat_vec_json(nu.nu_bar)},
                   {"terms", cocenter_json_terms(s, cv)}});
  }
  return dump_json(nlohmann::json{{"components", arr}});
}

inline std::string trace_text(const Session& s, const TraceCheckResult& r) {
  std::ostringstream out;
  out << "equal: " << (r.ok ? "true" : "false") << "\n";
  out << "discrepancy:\n" << cocenter_lines(s, r.discrepancy);
  return out.str();
}

// ---- rigid ----

inline std::string pairs_text(const Session& s, const std::vector<StandardPair>& ps) {
  std::ostringstream out;
  out << "pairs: " << ps.size() << "\n";
  for (std::size_t i = 0; i < ps.size(); ++i)
    out << "pair " << (i + 1) << ": K = " << index_set(ps[i].k)
        << " | tau = " << s.show(ps[i].tau) << "\n";
  return out.str();
}

inline std::string pairs_json(const Session& s, const std::vector<StandardPair>& ps) {
  nlohmann::json arr = nlohmann::json::array();
  for (const StandardPair& p : ps) arr.push_back({{"K", p.k}, {"tau", s.show(p.tau)}});
  return dump_json(nlohmann::json{{"pairs", arr}});
}

inline std::string cover_text(const Session& s, const ExtAffElt& w, const StandardPair& p) {
  std::ostringstream out;
  out << "element: " << s.show(w) << "\n";
  out << "pair: K = " << index_set(p.k) << " | tau = " << s.show(p.tau) << "\n";
  return out.str();
}

inline std::string reps_text(const Session& s, const std::vector<ExtAffElt>& reps) {
  std::ostringstream out;
  out << "reps: " << reps.size() << "\n";
  for (const ExtAffElt& w : reps) out << s.show(w) << "\n";
  return out.str();
}

inline std::string reps_json(const Session& s, const std::vector<ExtAffElt>& reps) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ExtAffElt& w : reps) arr.push_back(s.show(w));
  return dump_json(nlohmann::json{{"reps", arr}});
}

}  // namespace report

}  // namespace affweyl

#pragma once

#include <cstdint>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "affweyl/hecke.hpp"
#include "affweyl/newton.hpp"
#include "affweyl/rigid.hpp"
#include "affweyl/weyl.hpp"

namespace affweyl {

/// Parsed configuration: one file describes one (datum, twist) session.
struct SessionConfig {
  CartanSpec cartan;
  std::vector<int> diagram_perm;           // empty = identity
  std::string twist_omega_label;           // empty = none
  std::vector<std::pair<std::string, IntVec>> omega_labels;  // label -> Lambda vector
  std::int64_t ball_radius = 8;
  std::int64_t conj_depth = 4;
  int twist_check_depth = 3;
  std::string format = "text";  // text | structured | dot
};

/// Live session: the root datum, the twist, labels, and the conjugation
/// engine. Owns the datum so element pointers stay valid.
struct Session {
  std::unique_ptr<RootDatum> datum;
  std::unique_ptr<Twist> twist;
  OmegaLabels labels;
  std::unique_ptr<Conjugation> conj;
  SessionConfig config;

  ExtAffElt parse_element(const std::string& tokens) const {
    return from_word(*datum, tokens, labels);
  }
  std::string show(const ExtAffElt& w) const { return element_string(w, labels); }
};

inline SessionConfig parse_config(const nlohmann::json& j) {
  SessionConfig cfg;
  if (!j.is_object()) throw Error("cli", "config root must be an object");
  if (!j.contains("cartan_type") || !j["cartan_type"].is_string())
    throw Error("cli", "config needs a string field 'cartan_type'");
  cfg.cartan.type = j["cartan_type"].get<std::string>();

  if (!j.contains("lattice")) throw Error("cli", "config needs a field 'lattice'");
  const auto& lat = j["lattice"];
  if (lat.is_string()) {
    std::string s = lat.get<std::string>();
    if (s == "simply_connected") cfg.cartan.lattice = LatticeKind::SimplyConnected;
    else if (s == "adjoint") cfg.cartan.lattice = LatticeKind::Adjoint;
    else throw Error("cli", "lattice must be 'simply_connected', 'adjoint', or a matrix");
  } else if (lat.is_array()) {
    cfg.cartan.lattice = LatticeKind::Explicit;
    int rows = static_cast<int>(lat.size());
    int cols = rows ? static_cast<int>(lat[0].size()) : 0;
    IntMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
      if (!lat[static_cast<std::size_t>(i)].is_array() ||
          static_cast<int>(lat[static_cast<std::size_t>(i)].size()) != cols)
        throw Error("cli", "lattice matrix rows must have equal length");
      for (int k = 0; k < cols; ++k)
        m(i, k) = lat[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<std::int64_t>();
    }
    cfg.cartan.basis = m;
  } else {
    throw Error("cli", "lattice must be 'simply_connected', 'adjoint', or a matrix");
  }

  if (j.contains("twist")) {
    const auto& tw = j["twist"];
    if (!tw.is_object()) throw Error("cli", "twist must be an object");
    if (tw.contains("diagram_perm")) {
      for (const auto& v : tw["diagram_perm"]) cfg.diagram_perm.push_back(v.get<int>());
    }
    if (tw.contains("omega")) cfg.twist_omega_label = tw["omega"].get<std::string>();
    if (tw.contains("check_depth")) cfg.twist_check_depth = tw["check_depth"].get<int>();
  }
  if (j.contains("omega_labels")) {
    const auto& ol = j["omega_labels"];
    if (!ol.is_object()) throw Error("cli", "omega_labels must map labels to lattice vectors");
    for (auto it = ol.begin(); it != ol.end(); ++it) {
      IntVec v;
      for (const auto& x : it.value()) v.push_back(x.get<std::int64_t>());
      cfg.omega_labels.emplace_back(it.key(), v);
    }
  }
  if (j.contains("ball_radius")) cfg.ball_radius = j["ball_radius"].get<std::int64_t>();
  if (j.contains("conj_depth")) cfg.conj_depth = j["conj_depth"].get<std::int64_t>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (cfg.format != "text" && cfg.format != "structured" && cfg.format != "dot")
    throw Error("cli", "format must be 'text', 'structured', or 'dot'");
  return cfg;
}

inline SessionConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cli", "cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("cli", std::string("config parse error: ") + e.what());
  }
  try {
    return parse_config(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error("cli", std::string("config field error: ") + e.what());
  }
}

inline Session open_session(const SessionConfig& cfg) {
  Session s;
  s.config = cfg;
  s.datum = std::make_unique<RootDatum>(build_root_datum(cfg.cartan));
  s.labels = default_labels(*s.datum);
  for (const auto& [name, lambda] : cfg.omega_labels) {
    if (static_cast<int>(lambda.size()) != s.datum->dim)
      throw Error("cli", "omega label '" + name + "' has a vector of wrong size");
    s.labels.add(name, s.datum->omega.project(lambda));
  }
  TwistSpec tspec;
  tspec.diagram_perm = cfg.diagram_perm;
  tspec.check_depth = cfg.twist_check_depth;
  if (!cfg.twist_omega_label.empty()) {
    auto coords = s.labels.lookup(cfg.twist_omega_label);
    if (!coords) throw Error("cli", "twist omega label '" + cfg.twist_omega_label + "' is not declared");
    tspec.omega_coords = *coords;
  }
  s.twist = std::make_unique<Twist>(build_twist(*s.datum, tspec));
  s.conj = std::make_unique<Conjugation>(*s.datum, *s.twist);
  return s;
}

inline Session open_session_file(const std::string& path) {
  return open_session(load_config(path));
}

/// Default tau list for Omega-quantified operations: the identity plus the
/// torsion generators of Omega.
inline std::vector<ExtAffElt> default_tau_list(const Session& s) {
  std::vector<ExtAffElt> taus{ExtAffElt::identity(*s.datum)};
  const auto& moduli = s.datum->omega.moduli();
  for (std::size_t k = 0; k < moduli.size(); ++k) {
    if (moduli[k] == 0) continue;  // free factors need explicit labels
    IntVec c(moduli.size(), 0);
    c[k] = 1;
    taus.push_back(omega_rep_from_coords(*s.datum, c));
  }
  sort_shortlex(taus);
  return taus;
}

}  // namespace affweyl

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Everything runs on exact arithmetic; tolerances are equalities.

#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "affweyl/hecke.hpp"
#include "affweyl/newton.hpp"
#include "affweyl/rigid.hpp"
#include "oracle.hpp"

using namespace affweyl;

namespace {

struct Datum {
  std::string name;
  std::unique_ptr<RootDatum> rd;
  OmegaLabels labels;
  std::unique_ptr<Twist> tw;
  std::unique_ptr<Conjugation> conj;
};

std::unique_ptr<Datum> make_datum(const std::string& name, const std::string& type,
                                  LatticeKind lat, TwistSpec spec = {}) {
  auto d = std::make_unique<Datum>();
  d->name = name;
  d->rd = std::make_unique<RootDatum>(build_root_datum({type, lat, {}}));
  d->labels = default_labels(*d->rd);
  d->tw = std::make_unique<Twist>(build_twist(*d->rd, spec));
  d->conj = std::make_unique<Conjugation>(*d->rd, *d->tw);
  return d;
}

TwistSpec omega_twist(IntVec coords) {
  TwistSpec s;
  s.omega_coords = std::move(coords);
  return s;
}

TwistSpec perm_twist(std::vector<int> perm, IntVec omega = {}) {
  TwistSpec s;
  s.diagram_perm = std::move(perm);
  if (!omega.empty()) s.omega_coords = std::move(omega);
  return s;
}

std::vector<ExtAffElt> torsion_reps(const Datum& d) {
  std::vector<ExtAffElt> taus;
  for (const IntVec& c : d.rd->omega.torsion_elements())
    taus.push_back(omega_rep_from_coords(*d.rd, c));
  return taus;
}

std::vector<ExtAffElt> full_ball(const Datum& d, std::int64_t radius) {
  std::vector<ExtAffElt> out;
  for (const ExtAffElt& tau : torsion_reps(d))
    for (const ExtAffElt& w : enumerate_coset_ball(tau, radius)) out.push_back(w);
  return out;
}

// the twelve (datum, twist) sessions exercised by the suite
std::vector<std::unique_ptr<Datum>> all_data() {
  std::vector<std::unique_ptr<Datum>> v;
  v.push_back(make_datum("A1/sc/id", "A1", LatticeKind::SimplyConnected));
  v.push_back(make_datum("A1/adj/id", "A1", LatticeKind::Adjoint));
  v.push_back(make_datum("A1/adj/rho", "A1", LatticeKind::Adjoint, omega_twist({1})));
  v.push_back(make_datum("A2/sc/id", "A2", LatticeKind::SimplyConnected));
  v.push_back(make_datum("A2/sc/flip", "A2", LatticeKind::SimplyConnected, perm_twist({1, 0})));
  v.push_back(make_datum("A2/adj/id", "A2", LatticeKind::Adjoint));
  v.push_back(make_datum("A2/adj/flip", "A2", LatticeKind::Adjoint, perm_twist({1, 0})));
  v.push_back(make_datum("A2/adj/rot", "A2", LatticeKind::Adjoint, omega_twist({1})));
  v.push_back(make_datum("A2/adj/rotflip", "A2", LatticeKind::Adjoint, perm_twist({1, 0}, {1})));
  v.push_back(make_datum("C2/sc/id", "C2", LatticeKind::SimplyConnected));
  v.push_back(make_datum("C2/adj/id", "C2", LatticeKind::Adjoint));
  v.push_back(make_datum("C2/adj/p", "C2", LatticeKind::Adjoint, omega_twist({1})));
  return v;
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& msg) {
    ok = false;
    if (detail.empty()) detail = msg;
  }
};

// criterion 1: every element of length <= 10 in the identity and torsion
// Omega-cosets reduces; every path step is length-non-increasing and
// pi-preserving
Outcome criterion1(std::vector<std::unique_ptr<Datum>>& data) {
  Outcome o;
  for (auto& d : data) {
    for (const ExtAffElt& w : full_ball(*d, 10)) {
      ReductionResult r = d->conj->reduce_to_min(w);
      NewtonPair p = d->conj->pi(w);
      ExtAffElt cur = w;
      std::int64_t len = length(w);
      for (const ReductionStep& st : r.path) {
        cur = d->conj->move(cur, st.gen);
        std::int64_t nl = length(cur);
        if (nl > len) { o.fail(d->name + ": length increased along a path"); break; }
        if (d->conj->pi(cur) != p) { o.fail(d->name + ": pi changed along a path"); break; }
        len = nl;
      }
      if (!(cur == r.minimal_element)) o.fail(d->name + ": path does not reach the minimum");
      if (!d->conj->is_minimal(r.minimal_element))
        o.fail(d->name + ": reduction did not reach a minimal element");
      if (!o.ok) return o;
    }
  }
  return o;
}

// criterion 2: pi is constant under 500 random twisted conjugations per
// element (conjugators of length <= 4), and distinct Newton pairs never share
// a minimal-closure class
Outcome criterion2(std::vector<std::unique_ptr<Datum>>& data) {
  Outcome o;
  std::mt19937 rng(20240611);
  for (auto& d : data) {
    std::vector<ExtAffElt> conjugators = full_ball(*d, 4);
    std::uniform_int_distribution<std::size_t> pick(0, conjugators.size() - 1);
    std::map<std::vector<std::int64_t>, NewtonPair> label_pi;
    for (const ExtAffElt& w : full_ball(*d, 10)) {
      NewtonPair p = d->conj->pi(w);
      for (int t = 0; t < 500; ++t) {
        const ExtAffElt& x = conjugators[pick(rng)];
        ExtAffElt y = mul(mul(x, w), inv(d->tw->apply(x)));
        if (d->conj->pi(y) != p) {
          o.fail(d->name + ": pi not invariant under twisted conjugation");
          return o;
        }
      }
      ExtAffElt label = d->conj->class_label(w);
      auto [it, fresh] = label_pi.emplace(label.flat_key(), p);
      if (!fresh && !(it->second == p)) {
        o.fail(d->name + ": two Newton pairs share a closure class");
        return o;
      }
    }
  }
  return o;
}

std::vector<std::pair<NewtonPair, ExtAffElt>> distinct_strata(Datum& d, std::int64_t radius) {
  std::vector<std::pair<NewtonPair, ExtAffElt>> out;
  std::set<std::string> seen;
  for (const ExtAffElt& w : full_ball(d, radius)) {
    NewtonPair p = d.conj->pi(w);
    if (seen.insert(p.str()).second) out.push_back({p, w});
  }
  return out;
}

// criterion 3: every computed fiber has exactly one straight class
Outcome criterion3(std::vector<std::unique_ptr<Datum>>& data,
                   std::map<std::string, std::vector<FiberReport>>& fiber_cache) {
  Outcome o;
  for (auto& d : data) {
    for (auto& [nu, seed] : distinct_strata(*d, 10)) {
      FiberReport rep = d->conj->fiber_min(seed);
      fiber_cache[d->name].push_back(rep);
      int straight = 0;
      for (const FiberClass& c : rep.classes) straight += c.straight;
      if (straight != 1) {
        o.fail(d->name + ": fiber over " + nu.str() + " has " + std::to_string(straight) +
               " straight classes");
        return o;
      }
    }
  }
  return o;
}

// criterion 4: minimal lengths bounded by <nu_bar, 2rho> + n_max, and the
// pinned A1 fiber sizes N_(0,0) = 3, N_(0,alpha^vee) = 2
Outcome criterion4(std::vector<std::unique_ptr<Datum>>& data,
                   const std::map<std::string, std::vector<FiberReport>>& fiber_cache) {
  Outcome o;
  for (auto& d : data) {
    std::int64_t nm = d->conj->parabolic_bound();
    auto it = fiber_cache.find(d->name);
    if (it == fiber_cache.end()) continue;
    for (const FiberReport& rep : it->second) {
      Rat bound = d->rd->pair(rep.nu.nu_bar, d->rd->two_rho) + Rat(nm);
      for (const FiberClass& c : rep.classes)
        for (const ExtAffElt& m : c.minimal_elements)
          if (Rat(length(m)) > bound) {
            o.fail(d->name + ": minimal element exceeds the finiteness bound");
            return o;
          }
    }
  }
  Datum& a1 = *data[0];  // A1/sc/id
  FiberReport f0 = a1.conj->fiber_min(ExtAffElt::identity(*a1.rd));
  if (f0.n_nu != 3) o.fail("A1 fiber over (0,0) has N != 3");
  FiberReport f1 = a1.conj->fiber_min(from_word(*a1.rd, "s0 s1", a1.labels));
  if (f1.n_nu != 2) o.fail("A1 fiber over (0,alpha^vee) has N != 2");
  return o;
}

// criterion 5: standard triple products lie in the fiber minimal sets and
// their closure classes cover the whole fiber
Outcome criterion5(std::vector<std::unique_ptr<Datum>>& data) {
  Outcome o;
  for (auto& d : data) {
    if (d->name.substr(0, 2) == "C2") continue;  // criterion covers A1 and A2
    for (auto& [nu, seed] : distinct_strata(*d, 8)) {
      try {
        std::vector<StandardTriple> ts = d->conj->standard_triples(seed);
        FiberReport rep = d->conj->fiber_min(seed);
        std::set<std::vector<std::int64_t>> products, fiber, covered_classes, all_classes;
        for (const StandardTriple& t : ts) products.insert(mul(t.u, t.x).flat_key());
        for (const FiberClass& c : rep.classes) {
          all_classes.insert(c.label.flat_key());
          for (const ExtAffElt& m : c.minimal_elements) {
            fiber.insert(m.flat_key());
            if (products.count(m.flat_key())) covered_classes.insert(c.label.flat_key());
          }
        }
        for (const auto& p : products)
          if (!fiber.count(p)) {
            o.fail(d->name + ": triple product outside the fiber over " + nu.str());
            return o;
          }
        if (covered_classes != all_classes) {
          o.fail(d->name + ": triples do not cover every class over " + nu.str());
          return o;
        }
      } catch (const std::exception& e) {
        o.fail(d->name + ": standard triples failed over " + nu.str() + ": " + e.what());
        return o;
      }
    }
  }
  return o;
}

// criterion 6: cocenter soundness: (a) confluence of the two pivot
// strategies for all T_w with l(w) <= 8, (b) the trace relation on 1000
// sampled pairs with l(x) + l(y) <= 8, (c) the pinned A1 fixture
Outcome criterion6(std::vector<std::unique_ptr<Datum>>& data,
                   std::map<std::string, std::vector<CocenterVector>>& reduced_cache) {
  Outcome o;
  std::vector<Datum*> hecke_data;
  for (auto& d : data)
    if (d->name == "A1/sc/id" || d->name == "A1/adj/rho" || d->name == "A2/sc/flip" ||
        d->name == "A2/adj/id")
      hecke_data.push_back(d.get());

  std::mt19937 rng(907);
  for (Datum* d : hecke_data) {
    std::vector<ExtAffElt> ball = full_ball(*d, 8);
    for (const ExtAffElt& w : ball) {
      CocenterVector a = cocenter_reduce(*d->conj, HeckeElt::basis(w), PivotStrategy::Default);
      CocenterVector b = cocenter_reduce(*d->conj, HeckeElt::basis(w), PivotStrategy::Reversed);
      if (a != b) {
        o.fail(d->name + ": pivot strategies disagree on a reduction");
        return o;
      }
      reduced_cache[d->name].push_back(a);
    }
    std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
    int done = 0;
    while (done < 250) {
      const ExtAffElt& x = ball[pick(rng)];
      const ExtAffElt& y = ball[pick(rng)];
      if (length(x) + length(y) > 8) continue;
      ++done;
      if (!trace_check(*d->conj, x, y).ok) {
        o.fail(d->name + ": trace relation fails");
        return o;
      }
    }
  }

  Datum& a1 = *data[0];
  CocenterVector got =
      cocenter_reduce(*a1.conj, HeckeElt::basis(from_word(*a1.rd, "s0 s1 s0", a1.labels)));
  CocenterVector expect =
      HeckeElt::basis(from_word(*a1.rd, "s0 s1", a1.labels), ParamPoly::q_minus_one());
  expect.add(from_word(*a1.rd, "s1", a1.labels), ParamPoly::q());
  if (got != expect) o.fail("pinned A1 cocenter fixture mismatch");
  return o;
}

// criterion 7: Newton grading re-sums to the input with homogeneous labels
Outcome criterion7(std::vector<std::unique_ptr<Datum>>& data,
                   const std::map<std::string, std::vector<CocenterVector>>& reduced_cache) {
  Outcome o;
  for (auto& d : data) {
    auto it = reduced_cache.find(d->name);
    if (it == reduced_cache.end()) continue;
    for (const CocenterVector& cv : it->second) {
      auto graded = newton_grade(*d->conj, cv);
      CocenterVector resum;
      for (const auto& [nu, part] : graded) {
        bool homogeneous = true;
        part.for_each([&](const ExtAffElt& w, const ParamPoly& p) {
          homogeneous &= d->conj->pi(w) == nu;
          resum.add(w, p);
        });
        if (!homogeneous) {
          o.fail(d->name + ": graded component is not homogeneous");
          return o;
        }
      }
      if (!(resum == cv)) {
        o.fail(d->name + ": graded components do not re-sum to the input");
        return o;
      }
    }
  }
  return o;
}

// criterion 8: minimal elements with central Newton point in balls of radius
// 8 coincide with the wk_min products over the standard pairs
Outcome criterion8(std::vector<std::unique_ptr<Datum>>& data) {
  Outcome o;
  for (auto& d : data) {
    if (d->name.substr(0, 2) == "C2") continue;
    std::set<std::vector<std::int64_t>> central, products;
    for (const ExtAffElt& w : full_ball(*d, 8)) {
      if (!is_rigid(*d->rd, d->conj->pi(w))) continue;
      if (!d->conj->is_minimal(w)) continue;
      central.insert(w.flat_key());
    }
    for (const StandardPair& p : standard_pairs(*d->conj, torsion_reps(*d))) {
      for (const ExtAffElt& u : wk_min(*d->conj, p)) {
        ExtAffElt prod = mul(u, p.tau);
        if (length(prod) <= 8) products.insert(prod.flat_key());
      }
    }
    if (central != products) {
      o.fail(d->name + ": rigid covering mismatch (" + std::to_string(central.size()) +
             " central vs " + std::to_string(products.size()) + " covered)");
      return o;
    }
  }
  return o;
}

// criterion 9: length, multiplication and straightness agree with the
// independent oracles on every tested element
Outcome criterion9(std::vector<std::unique_ptr<Datum>>& data) {
  Outcome o;
  std::mt19937 rng(4242);
  for (auto& d : data) {
    std::vector<ExtAffElt> ball = full_ball(*d, 6);
    for (const ExtAffElt& w : ball) {
      if (length(w) != oracle::oracle_length(w)) {
        o.fail(d->name + ": length disagrees with the inversion-count oracle");
        return o;
      }
      int kmax = static_cast<int>(2 * d->conj->newton_point(w).witness_n);
      if (d->conj->is_straight(w) != oracle::oracle_straight(*d->conj, w, kmax)) {
        o.fail(d->name + ": straightness disagrees with the definitional oracle");
        return o;
      }
    }
    std::vector<ExtAffElt> small = full_ball(*d, 4);
    std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
    for (int t = 0; t < 150; ++t) {
      const ExtAffElt& x = small[pick(rng)];
      const ExtAffElt& y = small[pick(rng)];
      if (hecke_mul(HeckeElt::basis(x), HeckeElt::basis(y)) !=
          oracle::oracle_hecke_mul(HeckeElt::basis(x), HeckeElt::basis(y))) {
        o.fail(d->name + ": Hecke product disagrees with the left-factoring oracle");
        return o;
      }
    }
  }
  return o;
}

}  // namespace

int main() {
  std::vector<std::unique_ptr<Datum>> data = all_data();
  std::map<std::string, std::vector<FiberReport>> fiber_cache;
  std::map<std::string, std::vector<CocenterVector>> reduced_cache;

  struct Line {
    std::string label;
    Outcome outcome;
  };
  std::vector<Line> lines;
  lines.push_back({"criterion 1: reduction totality and path soundness (length <= 10)",
                   criterion1(data)});
  lines.push_back({"criterion 2: stratum-label coherence under random twisted conjugation",
                   criterion2(data)});
  lines.push_back({"criterion 3: exactly one straight class per fiber",
                   criterion3(data, fiber_cache)});
  lines.push_back({"criterion 4: finiteness bound and pinned A1 fiber sizes",
                   criterion4(data, fiber_cache)});
  lines.push_back({"criterion 5: standard triples cover the fiber minima (A1, A2)",
                   criterion5(data)});
  lines.push_back({"criterion 6: cocenter confluence, trace relation, pinned fixture",
                   criterion6(data, reduced_cache)});
  lines.push_back({"criterion 7: Newton grading re-sums with homogeneous labels",
                   criterion7(data, reduced_cache)});
  lines.push_back({"criterion 8: rigid covering by standard pairs (radius 8)",
                   criterion8(data)});
  lines.push_back({"criterion 9: oracle equivalence for length, product, straightness",
                   criterion9(data)});

  int failures = 0;
  for (const Line& l : lines) {
    if (l.outcome.ok) {
      std::cout << "PASS " << l.label << "\n";
    } else {
      ++failures;
      std::cout << "FAIL " << l.label << " -- " << l.outcome.detail << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}

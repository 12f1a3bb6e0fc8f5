#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "affweyl/weyl.hpp"

namespace affweyl {

struct NewtonPoint {
  RatVec nu;       // lambda / n for the witness power n
  RatVec nu_bar;   // dominant W0-orbit representative
  std::int64_t witness_n = 1;
};

/// Stratum label (kappa, nu_bar) in Omega_theta x V_+.
struct NewtonPair {
  IntVec kappa;
  RatVec nu_bar;

  friend bool operator==(const NewtonPair& a, const NewtonPair& b) {
    return a.kappa == b.kappa && a.nu_bar == b.nu_bar;
  }
  friend bool operator!=(const NewtonPair& a, const NewtonPair& b) { return !(a == b); }
  friend bool operator<(const NewtonPair& a, const NewtonPair& b) {
    if (a.kappa != b.kappa) return a.kappa < b.kappa;
    return lex_less(a.nu_bar, b.nu_bar);
  }

  std::string str() const { return affweyl::str(kappa) + " x " + affweyl::str(nu_bar); }
};

struct ReductionStep {
  int gen = 0;
  int delta = 0;  // 0 for a length-preserving move, -2 for a descent
};

struct ReductionResult {
  ExtAffElt minimal_element;
  std::vector<ReductionStep> path;  // from the input, via w -> s w theta(s)
  ExtAffElt class_label;            // ShortLex-least member of the minimal closure
};

struct FiberClass {
  ExtAffElt label;
  std::vector<ExtAffElt> minimal_elements;
  bool straight = false;
};

struct FiberReport {
  NewtonPair nu;
  std::vector<FiberClass> classes;
  std::int64_t n_nu = 0;  // total number of minimal elements over the fiber
};

struct StandardTriple {
  ExtAffElt x;          // theta-straight
  std::vector<int> k;   // sorted simple-affine indices, W_K finite
  ExtAffElt u;          // element of W_K
};

/// Maximal length of a longest element over the finite standard parabolic
/// subgroups W_K, K a proper subset of the simple affine reflections.
/// Computed by greedy ascent inside each maximal proper subset.
inline std::int64_t n_max(const RootDatum& rd) {
  int ns = rd.n_simple_affine();
  if (ns == 0) return 0;
  std::vector<ExtAffElt> gens = affine_generators(rd);
  std::int64_t best = 0;
  for (int omit = 0; omit < ns; ++omit) {
    ExtAffElt x = ExtAffElt::identity(rd);
    std::int64_t len = 0;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int i = 0; i < ns; ++i) {
        if (i == omit) continue;
        if (!is_descent(x, i, Side::Left)) {
          x = mul(gens[static_cast<std::size_t>(i)], x);
          ++len;
          grew = true;
          break;
        }
      }
      if (len > 1000000) throw Error("newton", "parabolic ascent did not terminate");
    }
    best = std::max(best, len);
  }
  return best;
}

/// Engine for theta-twisted conjugation: the two stratum invariants, the
/// reduction to minimal length elements, fibers and standard triples.
/// Holds per-(datum, twist) caches; use one instance per session.
class Conjugation {
 public:
  Conjugation(const RootDatum& rd, const Twist& tw) : rd_(&rd), tw_(&tw) {
    gens_ = affine_generators(rd);
    // Omega_theta = Lambda / (Q^vee + (1 - delta) Lambda)
    std::vector<IntVec> rels;
    for (int i = 0; i < rd.rank; ++i) rels.push_back(rd.coroots[static_cast<std::size_t>(i)]);
    for (int i = 0; i < rd.dim; ++i) {
      IntVec e(static_cast<std::size_t>(rd.dim), 0);
      e[static_cast<std::size_t>(i)] = 1;
      rels.push_back(e - tw.delta * e);
    }
    omega_theta_ = AbelianQuotient(rd.dim, rels);
    for (const IntVec& c : rd.omega.torsion_elements())
      torsion_.push_back(omega_rep_from_coords(rd, c));
    sort_shortlex(torsion_);
    n_max_ = affweyl::n_max(rd);
  }

  const RootDatum& datum() const { return *rd_; }
  const Twist& twist() const { return *tw_; }
  const std::vector<ExtAffElt>& torsion_omega() const { return torsion_; }
  std::int64_t parabolic_bound() const { return n_max_; }
  const AbelianQuotient& omega_theta() const { return omega_theta_; }

  /// Kottwitz invariant: image in the theta-coinvariants of Omega.
  IntVec kappa(const ExtAffElt& w) const { return omega_theta_.project(w.lambda); }

  NewtonPoint newton_point(const ExtAffElt& w) const {
    const std::int64_t limit = tw_->order * rd_->w0_order;
    ExtAffElt acc = w;       // (w theta)^k has W-part acc
    ExtAffElt pw = w;        // theta^{k-1}(w)
    for (std::int64_t k = 1; k <= limit; ++k) {
      if (k > 1) {
        pw = tw_->apply(pw);
        acc = mul(acc, pw);
      }
      if (k % tw_->order == 0 && acc.u.is_identity()) {
        NewtonPoint np;
        np.witness_n = k;
        np.nu.resize(acc.lambda.size());
        for (std::size_t i = 0; i < acc.lambda.size(); ++i) np.nu[i] = Rat(acc.lambda[i], k);
        np.nu_bar = dominant_rep(*rd_, np.nu).first;
        return np;
      }
    }
    throw Error("newton", "no translation power within the witness bound");
  }

  NewtonPair pi(const ExtAffElt& w) const {
    return {kappa(w), newton_point(w).nu_bar};
  }

  /// Length criterion: w is theta-straight iff l(w) = <nu_bar, 2 rho>.
  bool is_straight(const ExtAffElt& w) const {
    NewtonPoint np = newton_point(w);
    Rat p = rd_->pair(np.nu_bar, rd_->two_rho);
    return Rat(length(w)) == p;
  }

  /// One theta-twisted conjugation move.
  ExtAffElt move(const ExtAffElt& w, int i) const {
    return mul(mul(gens_[static_cast<std::size_t>(i)], w),
               gens_[static_cast<std::size_t>(tw_->apply_affine_index(i))]);
  }

  /// True iff no element of the fixed-length closure of w admits a
  /// length-decreasing move (which characterizes minimality).
  bool is_minimal(const ExtAffElt& w) {
    auto key = w.flat_key();
    auto it = minimal_cache_.find(key);
    if (it != minimal_cache_.end()) return it->second;
    bool m = !scan_closure(w, true).descent.has_value();
    minimal_cache_.emplace(std::move(key), m);
    return m;
  }

  ReductionResult reduce_to_min(const ExtAffElt& w) {
    ExtAffElt current = w;
    std::vector<ReductionStep> prefix;
    while (true) {
      // deterministic closure exploration with move paths
      std::map<std::vector<std::int64_t>, std::vector<ReductionStep>> paths;
      std::set<std::pair<ShortLexKey, std::vector<std::int64_t>>> todo;
      std::map<std::vector<std::int64_t>, ExtAffElt> elems;
      std::int64_t len = length(current);
      auto ck = current.flat_key();
      paths[ck] = {};
      elems[ck] = current;
      todo.insert({shortlex_key(current), ck});
      std::optional<std::tuple<int, ShortLexKey, ExtAffElt, std::vector<ReductionStep>>> descent;
      while (!todo.empty()) {
        auto [skey, key] = *todo.begin();
        todo.erase(todo.begin());
        ExtAffElt x = elems.at(key);
        for (int i = 0; i < rd_->n_simple_affine(); ++i) {
          ExtAffElt y = move(x, i);
          std::int64_t ly = length(y);
          if (ly > len) continue;
          if (ly < len) {
            std::vector<ReductionStep> p = paths.at(key);
            p.push_back({i, -2});
            // pivot order: smallest generator index, then ShortLex-least source
            if (!descent || i < std::get<0>(*descent) ||
                (i == std::get<0>(*descent) && skey < std::get<1>(*descent))) {
              descent = {i, skey, y, std::move(p)};
            }
            continue;
          }
          auto yk = y.flat_key();
          if (paths.count(yk)) continue;
          std::vector<ReductionStep> p = paths.at(key);
          p.push_back({i, 0});
          paths.emplace(yk, std::move(p));
          elems.emplace(yk, y);
          todo.insert({shortlex_key(y), yk});
        }
      }
      if (descent) {
        std::vector<ReductionStep> p = std::move(std::get<3>(*descent));
        prefix.insert(prefix.end(), p.begin(), p.end());
        current = std::get<2>(*descent);
        continue;
      }
      // no descent anywhere in the closure: current is minimal
      ReductionResult res{current, prefix, current};
      res.class_label = min_closure(current).front();
      minimal_cache_[current.flat_key()] = true;
      return res;
    }
  }

  /// Closure of a minimal element under length-preserving moves: simple
  /// reflections s (-) theta(s) and conjugation by torsion Omega elements.
  /// The Omega moves keep minimal sets of one twisted class in one closure
  /// when the twist acts on the Omega cosets. ShortLex sorted.
  std::vector<ExtAffElt> min_closure(const ExtAffElt& w) {
    std::int64_t len = length(w);
    std::map<std::vector<std::int64_t>, ExtAffElt> seen;
    seen.emplace(w.flat_key(), w);
    std::vector<ExtAffElt> frontier{w};
    while (!frontier.empty()) {
      std::vector<ExtAffElt> next;
      for (const ExtAffElt& x : frontier) {
        std::vector<ExtAffElt> images;
        for (int i = 0; i < rd_->n_simple_affine(); ++i) {
          ExtAffElt y = move(x, i);
          std::int64_t ly = length(y);
          if (ly < len) throw Error("newton", "min_closure requires a minimal element");
          if (ly == len) images.push_back(std::move(y));
        }
        for (const ExtAffElt& tau : torsion_) {
          ExtAffElt y = mul(mul(tau, x), inv(tw_->apply(tau)));
          if (length(y) != len) throw Error("newton", "Omega conjugation changed length");
          images.push_back(std::move(y));
        }
        for (ExtAffElt& y : images) {
          auto [it, fresh] = seen.emplace(y.flat_key(), y);
          if (fresh) next.push_back(std::move(y));
        }
      }
      frontier = std::move(next);
    }
    std::vector<ExtAffElt> out;
    for (auto& [k, e] : seen) out.push_back(e);
    sort_shortlex(out);
    return out;
  }

  /// ShortLex-least member of the minimal closure of w's class.
  ExtAffElt class_label(const ExtAffElt& w) {
    auto key = w.flat_key();
    auto it = label_cache_.find(key);
    if (it != label_cache_.end()) return it->second;
    ExtAffElt label = reduce_to_min(w).class_label;
    label_cache_.emplace(std::move(key), label);
    return label;
  }

  /// Enumerate the fiber of pi through the seed: all minimal elements with
  /// the seed's invariants, grouped into closure classes.
  FiberReport fiber_min(const ExtAffElt& seed) {
    FiberReport rep;
    rep.nu = pi(seed);
    Rat straight_len = rd_->pair(rep.nu.nu_bar, rd_->two_rho);
    if (!straight_len.is_integer())
      throw Error("newton", "non-integral straight length for a realized stratum");
    std::int64_t bound = straight_len.num + n_max_;

    ReductionResult red = reduce_to_min(seed);
    std::set<IntVec> cosets;
    for (const ExtAffElt& m : min_closure(red.minimal_element)) cosets.insert(omega_coset(m));

    std::map<std::vector<std::int64_t>, ExtAffElt> all_minimal;
    std::vector<std::vector<ExtAffElt>> classes;
    std::set<IntVec> searched;
    while (true) {
      // close the coset set under theta
      for (bool grew = true; grew;) {
        grew = false;
        for (const IntVec& c : std::vector<IntVec>(cosets.begin(), cosets.end())) {
          IntVec tc = omega_coset(tw_->apply(omega_rep_from_coords(*rd_, c)));
          if (cosets.insert(tc).second) grew = true;
        }
      }
      std::vector<IntVec> fresh;
      for (const IntVec& c : cosets)
        if (!searched.count(c)) fresh.push_back(c);
      if (fresh.empty()) break;
      for (const IntVec& c : fresh) {
        searched.insert(c);
        ExtAffElt tau = omega_rep_from_coords(*rd_, c);
        for (const ExtAffElt& w : enumerate_coset_ball(tau, bound)) {
          if (all_minimal.count(w.flat_key())) continue;
          if (pi(w) != rep.nu) continue;
          if (!is_minimal(w)) continue;
          std::vector<ExtAffElt> cls = min_closure(w);
          classes.push_back(cls);
          for (const ExtAffElt& m : cls) {
            all_minimal.emplace(m.flat_key(), m);
            cosets.insert(omega_coset(m));  // may reveal new cosets to search
          }
        }
      }
    }

    for (std::vector<ExtAffElt>& cls : classes) {
      FiberClass fc;
      fc.label = cls.front();
      fc.minimal_elements = std::move(cls);
      fc.straight = Rat(length(fc.label)) == straight_len;
      rep.classes.push_back(std::move(fc));
    }
    std::sort(rep.classes.begin(), rep.classes.end(), [](const FiberClass& a, const FiberClass& b) {
      return shortlex_key(a.label) < shortlex_key(b.label);
    });
    rep.n_nu = static_cast<std::int64_t>(all_minimal.size());
    return rep;
  }

  /// Standard triples (x, K, u) covering the fiber of the seed: x runs over
  /// the straight class, K over finite-type subsets with x in ^K W and
  /// Ad(x) theta(K) = K, u over W_K; one triple per distinct minimal product.
  /// Cross-validates that every product lies in the fiber and that the
  /// product closures cover every fiber class (the triples pick
  /// representatives; conjugation moves reach the remaining minima).
  std::vector<StandardTriple> standard_triples(const ExtAffElt& seed) {
    FiberReport rep = fiber_min(seed);
    const FiberClass* straight = nullptr;
    for (const FiberClass& c : rep.classes) {
      if (!c.straight) continue;
      if (straight) throw Error("newton", "fiber has more than one straight class");
      straight = &c;
    }
    if (!straight) throw Error("newton", "fiber has no straight class");

    std::set<std::vector<std::int64_t>> fiber_set, covered;
    for (const FiberClass& c : rep.classes)
      for (const ExtAffElt& m : c.minimal_elements) fiber_set.insert(m.flat_key());

    int ns = rd_->n_simple_affine();
    std::vector<std::vector<int>> subsets;
    for (unsigned mask = 0; mask + 1 < (1u << ns) || (ns == 0 && mask == 0); ++mask) {
      std::vector<int> k;
      for (int i = 0; i < ns; ++i)
        if (mask & (1u << i)) k.push_back(i);
      subsets.push_back(std::move(k));
      if (ns == 0) break;
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });

    std::vector<StandardTriple> out;
    for (const ExtAffElt& x : straight->minimal_elements) {
      ExtAffElt xi = inv(x);
      for (const std::vector<int>& k : subsets) {
        bool ok = true;
        for (int i : k)
          if (is_descent(x, i, Side::Left)) { ok = false; break; }
        if (!ok) continue;
        // Ad(x) theta maps K into K, bijectively
        std::set<int> image;
        for (int i : k) {
          ExtAffElt y = mul(mul(x, tw_->apply(gens_[static_cast<std::size_t>(i)])), xi);
          int found = -1;
          for (int j : k)
            if (y == gens_[static_cast<std::size_t>(j)]) { found = j; break; }
          if (found < 0) { ok = false; break; }
          image.insert(found);
        }
        if (!ok || image.size() != k.size()) continue;
        for (const ExtAffElt& u : enumerate_parabolic(k)) {
          ExtAffElt prod = mul(u, x);
          auto pk = prod.flat_key();
          if (covered.count(pk)) continue;
          if (!is_minimal(prod)) continue;
          if (pi(prod) != rep.nu)
            throw Error("newton", "standard triple product leaves the stratum");
          if (!fiber_set.count(pk))
            throw Error("newton", "fiber enumeration missed a triple product");
          covered.insert(pk);
          out.push_back({x, k, u});
        }
      }
    }
    for (const FiberClass& c : rep.classes) {
      bool hit = false;
      for (const ExtAffElt& m : c.minimal_elements) hit |= covered.count(m.flat_key()) > 0;
      if (!hit) throw Error("newton", "standard triples do not cover the fiber");
    }
    return out;
  }

  /// Canonical length-decreasing rewrite site for a non-minimal element:
  /// a closure member w' and generator s with l(s w' theta(s)) < l(w').
  /// The default strategy picks the least (generator, source) pair, the
  /// reversed strategy the greatest; both are deterministic.
  std::optional<std::pair<ExtAffElt, int>> find_descent(const ExtAffElt& w, bool reversed) {
    std::int64_t len = length(w);
    std::map<std::vector<std::int64_t>, ExtAffElt> seen;
    seen.emplace(w.flat_key(), w);
    std::vector<ExtAffElt> frontier{w};
    std::optional<std::pair<ExtAffElt, int>> chosen;
    std::optional<std::pair<int, ShortLexKey>> chosen_rank;
    while (!frontier.empty()) {
      std::vector<ExtAffElt> next;
      for (const ExtAffElt& x : frontier) {
        for (int i = 0; i < rd_->n_simple_affine(); ++i) {
          ExtAffElt y = move(x, i);
          std::int64_t ly = length(y);
          if (ly < len) {
            std::pair<int, ShortLexKey> rank{i, shortlex_key(x)};
            bool better = !chosen_rank ||
                          (reversed ? *chosen_rank < rank : rank < *chosen_rank);
            if (better) {
              chosen_rank = rank;
              chosen = {x, i};
            }
            continue;
          }
          if (ly > len) continue;
          auto [it, fresh] = seen.emplace(y.flat_key(), y);
          if (fresh) next.push_back(y);
        }
      }
      frontier = std::move(next);
    }
    return chosen;
  }

  /// Breadth-first enumeration of the finite parabolic W_K, ShortLex sorted.
  std::vector<ExtAffElt> enumerate_parabolic(const std::vector<int>& k) const {
    if (static_cast<int>(k.size()) >= rd_->n_simple_affine() && rd_->n_simple_affine() > 0)
      throw Error("newton", "parabolic subset must be proper");
    std::map<std::vector<std::int64_t>, ExtAffElt> seen;
    ExtAffElt e = ExtAffElt::identity(*rd_);
    seen.emplace(e.flat_key(), e);
    std::vector<ExtAffElt> frontier{e};
    while (!frontier.empty()) {
      std::vector<ExtAffElt> next;
      for (const ExtAffElt& x : frontier) {
        for (int i : k) {
          ExtAffElt y = mul(gens_[static_cast<std::size_t>(i)], x);
          auto [it, fresh] = seen.emplace(y.flat_key(), y);
          if (fresh) next.push_back(y);
        }
      }
      frontier = std::move(next);
      if (seen.size() > 2000000) throw Error("newton", "parabolic subgroup too large to enumerate");
    }
    std::vector<ExtAffElt> out;
    for (auto& [kk, w] : seen) out.push_back(w);
    sort_shortlex(out);
    return out;
  }

 private:
  struct ClosureScanResult {
    std::vector<ExtAffElt> members;
    std::optional<std::pair<ExtAffElt, int>> descent;
  };

  ClosureScanResult scan_closure(const ExtAffElt& w, bool stop_on_descent) {
    ClosureScanResult res;
    std::int64_t len = length(w);
    std::map<std::vector<std::int64_t>, ExtAffElt> seen;
    seen.emplace(w.flat_key(), w);
    std::vector<ExtAffElt> frontier{w};
    while (!frontier.empty()) {
      std::vector<ExtAffElt> next;
      for (const ExtAffElt& x : frontier) {
        for (int i = 0; i < rd_->n_simple_affine(); ++i) {
          ExtAffElt y = move(x, i);
          std::int64_t ly = length(y);
          if (ly < len) {
            if (!res.descent) res.descent = {x, i};
            if (stop_on_descent) return res;
            continue;
          }
          if (ly > len) continue;
          auto [it, fresh] = seen.emplace(y.flat_key(), y);
          if (fresh) next.push_back(y);
        }
      }
      frontier = std::move(next);
    }
    for (auto& [k, e] : seen) res.members.push_back(e);
    return res;
  }

  const RootDatum* rd_;
  const Twist* tw_;
  std::vector<ExtAffElt> gens_;
  std::vector<ExtAffElt> torsion_;
  AbelianQuotient omega_theta_;
  std::int64_t n_max_ = 0;
  std::map<std::vector<std::int64_t>, bool> minimal_cache_;
  std::map<std::vector<std::int64_t>, ExtAffElt> label_cache_;
};

}  // namespace affweyl

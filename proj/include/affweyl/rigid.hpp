#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "affweyl/newton.hpp"

namespace affweyl {

/// Root subsystem centralizing a Newton vector.
struct LeviDescriptor {
  std::vector<int> roots;  // indices of alpha with <nu_bar, alpha> = 0
  bool full = false;
};

inline LeviDescriptor levi(const RootDatum& rd, const NewtonPair& nu) {
  LeviDescriptor l;
  for (std::size_t a = 0; a < rd.roots.size(); ++a) {
    if (rd.pair(nu.nu_bar, rd.roots[a]) == Rat(0)) l.roots.push_back(static_cast<int>(a));
  }
  l.full = l.roots.size() == rd.roots.size();
  return l;
}

/// A stratum label is rigid when its Newton vector is central on the roots.
inline bool is_rigid(const RootDatum& rd, const NewtonPair& nu) {
  for (int j = 0; j < rd.rank; ++j)
    if (rd.pair_simple(nu.nu_bar, j) != Rat(0)) return false;
  return true;
}

/// (K, tau): finite-type K stable under Ad(tau) o theta, tau of length zero.
struct StandardPair {
  std::vector<int> k;
  ExtAffElt tau;
};

namespace detail {

/// Permutation of the simple affine indices induced by Ad(tau) o theta.
inline std::vector<int> pair_index_perm(const Conjugation& conj, const ExtAffElt& tau) {
  const RootDatum& rd = conj.datum();
  ExtAffElt ti = inv(tau);
  std::vector<int> perm(static_cast<std::size_t>(rd.n_simple_affine()), -1);
  for (int i = 0; i < rd.n_simple_affine(); ++i) {
    ExtAffElt img = mul(mul(tau, conj.twist().apply(simple_affine(rd, i))), ti);
    for (int j = 0; j < rd.n_simple_affine(); ++j) {
      if (img == simple_affine(rd, j)) { perm[static_cast<std::size_t>(i)] = j; break; }
    }
    if (perm[static_cast<std::size_t>(i)] < 0)
      throw Error("rigid", "Ad(tau) theta does not permute the simple affine reflections");
  }
  return perm;
}

inline std::vector<std::vector<int>> proper_subsets(int ns) {
  std::vector<std::vector<int>> subsets;
  if (ns == 0) {
    subsets.push_back({});
    return subsets;
  }
  for (unsigned mask = 0; mask + 1 < (1u << ns); ++mask) {
    std::vector<int> k;
    for (int i = 0; i < ns; ++i)
      if (mask & (1u << i)) k.push_back(i);
    subsets.push_back(std::move(k));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return subsets;
}

}  // namespace detail

/// All standard pairs (K, tau) with tau drawn from the given list.
inline std::vector<StandardPair> standard_pairs(const Conjugation& conj,
                                                const std::vector<ExtAffElt>& tau_list) {
  const RootDatum& rd = conj.datum();
  std::vector<ExtAffElt> taus;
  std::set<std::vector<std::int64_t>> seen;
  for (const ExtAffElt& tau : tau_list) {
    if (length(tau) != 0) throw Error("rigid", "standard pair Omega part must have length zero");
    if (seen.insert(tau.flat_key()).second) taus.push_back(tau);
  }
  sort_shortlex(taus);
  std::vector<StandardPair> out;
  auto subsets = detail::proper_subsets(rd.n_simple_affine());
  for (const ExtAffElt& tau : taus) {
    std::vector<int> perm = detail::pair_index_perm(conj, tau);
    for (const std::vector<int>& k : subsets) {
      bool stable = true;
      std::set<int> img;
      for (int i : k) img.insert(perm[static_cast<std::size_t>(i)]);
      stable = img == std::set<int>(k.begin(), k.end());
      if (stable) out.push_back({k, tau});
    }
  }
  return out;
}

/// Standard pair covering a minimal element with central Newton point:
/// tau is the Omega representative of w's coset, K the Ad(tau) theta-closure
/// of the support of the W_a-part. A closure that exhausts the affine diagram
/// indicates an upstream bug and is reported as a hard failure.
inline StandardPair rigid_cover(Conjugation& conj, const ExtAffElt& w) {
  const RootDatum& rd = conj.datum();
  if (!conj.is_minimal(w)) throw Error("rigid", "rigid_cover requires a minimal element");
  if (!is_rigid(rd, conj.pi(w))) throw Error("rigid", "rigid_cover requires a central Newton point");
  NormalForm nf = reduced_word(w);
  ExtAffElt tau = nf.omega_rep;
  std::vector<int> perm = detail::pair_index_perm(conj, tau);
  std::set<int> k(nf.word.begin(), nf.word.end());
  for (bool grew = true; grew;) {
    grew = false;
    for (int i : std::vector<int>(k.begin(), k.end()))
      if (k.insert(perm[static_cast<std::size_t>(i)]).second) grew = true;
  }
  if (static_cast<int>(k.size()) >= rd.n_simple_affine() && rd.n_simple_affine() > 0)
    throw Error("rigid", "support closure is not of finite type");
  return {std::vector<int>(k.begin(), k.end()), tau};
}

/// All w in W_K with w tau of minimal length in its W_K-twisted conjugation
/// orbit { x (w tau) theta(x)^{-1} : x in W_K }, by exhaustive orbit search.
inline std::vector<ExtAffElt> wk_min(Conjugation& conj, const StandardPair& pair) {
  const RootDatum& rd = conj.datum();
  std::vector<int> perm = detail::pair_index_perm(conj, pair.tau);
  for (int i : pair.k) {
    std::set<int> img;
    for (int j : pair.k) img.insert(perm[static_cast<std::size_t>(j)]);
    if (!img.count(perm[static_cast<std::size_t>(i)]) ||
        img != std::set<int>(pair.k.begin(), pair.k.end()))
      throw Error("rigid", "not a standard pair");
  }
  std::vector<ExtAffElt> group = conj.enumerate_parabolic(pair.k);
  std::set<std::vector<std::int64_t>> assigned;
  std::vector<ExtAffElt> out;
  for (const ExtAffElt& w : group) {
    if (assigned.count(w.flat_key())) continue;
    // orbit of w under x w s_{perm(i)} moves generated by x = s_i, i in K
    std::map<std::vector<std::int64_t>, ExtAffElt> orbit;
    orbit.emplace(w.flat_key(), w);
    std::vector<ExtAffElt> frontier{w};
    while (!frontier.empty()) {
      std::vector<ExtAffElt> next;
      for (const ExtAffElt& x : frontier) {
        for (int i : pair.k) {
          ExtAffElt y = mul(mul(simple_affine(rd, i), x),
                            simple_affine(rd, perm[static_cast<std::size_t>(i)]));
          auto [it, fresh] = orbit.emplace(y.flat_key(), y);
          if (fresh) next.push_back(y);
        }
      }
      frontier = std::move(next);
    }
    std::int64_t min_len = -1;
    for (const auto& [key, x] : orbit) {
      std::int64_t l = length(x);
      if (min_len < 0 || l < min_len) min_len = l;
    }
    for (const auto& [key, x] : orbit) {
      assigned.insert(key);
      if (length(x) == min_len) out.push_back(x);
    }
  }
  sort_shortlex(out);
  return out;
}

/// Minimal-length double coset representatives within a ball: elements of the
/// listed Omega cosets with no left descent in K and no right descent in K',
/// up to the length bound.
inline std::vector<ExtAffElt> double_coset_reps(const Conjugation& conj,
                                                const std::vector<int>& k_left,
                                                const std::vector<int>& k_right,
                                                std::int64_t bound,
                                                const std::vector<ExtAffElt>& tau_list) {
  const RootDatum& rd = conj.datum();
  if (bound < 0) throw Error("rigid", "negative ball radius");
  auto check_proper = [&](const std::vector<int>& k) {
    for (int i : k)
      if (i < 0 || i >= rd.n_simple_affine())
        throw Error("rigid", "simple reflection index out of range");
    if (static_cast<int>(k.size()) >= rd.n_simple_affine() && rd.n_simple_affine() > 0)
      throw Error("rigid", "descent set must generate a finite parabolic");
  };
  check_proper(k_left);
  check_proper(k_right);
  std::set<std::vector<std::int64_t>> seen;
  std::vector<ExtAffElt> out;
  for (const ExtAffElt& tau : tau_list) {
    if (length(tau) != 0) throw Error("rigid", "coset base point must have length zero");
    if (!seen.insert(tau.flat_key()).second) continue;
    for (const ExtAffElt& w : enumerate_coset_ball(tau, bound)) {
      bool ok = true;
      for (int i : k_left)
        if (is_descent(w, i, Side::Left)) { ok = false; break; }
      if (!ok) continue;
      for (int i : k_right)
        if (is_descent(w, i, Side::Right)) { ok = false; break; }
      if (ok) out.push_back(w);
    }
  }
  sort_shortlex(out);
  return out;
}

}  // namespace affweyl

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "affweyl/root_datum.hpp"

namespace affweyl {

/// Element of the finite Weyl group W0, stored as its action on Lambda
/// (matrix and inverse) plus the induced permutation of the root list.
class FinWeylElt {
 public:
  FinWeylElt() = default;

  static FinWeylElt identity(const RootDatum& rd) {
    FinWeylElt u;
    u.m_ = IntMat::identity(rd.dim);
    u.minv_ = u.m_;
    u.perm_.resize(rd.roots.size());
    u.perm_inv_.resize(rd.roots.size());
    for (std::size_t k = 0; k < rd.roots.size(); ++k) {
      u.perm_[k] = static_cast<int>(k);
      u.perm_inv_[k] = static_cast<int>(k);
    }
    return u;
  }

  /// Reflection in the given root.
  static FinWeylElt reflection(const RootDatum& rd, int root_idx) {
    FinWeylElt u;
    const IntVec& alpha = rd.roots[static_cast<std::size_t>(root_idx)];
    const IntVec& alpha_v = rd.coroots[static_cast<std::size_t>(root_idx)];
    u.m_ = IntMat::identity(rd.dim);
    for (int i = 0; i < rd.dim; ++i) {
      // <e_i, alpha>
      std::int64_t p = 0;
      for (int j = 0; j < rd.rank; ++j) p += rd.pairing(i, j) * alpha[static_cast<std::size_t>(j)];
      for (int k = 0; k < rd.dim; ++k) u.m_(k, i) -= p * alpha_v[static_cast<std::size_t>(k)];
    }
    u.minv_ = u.m_;  // reflections are involutions
    u.perm_.resize(rd.roots.size());
    for (std::size_t k = 0; k < rd.roots.size(); ++k) {
      IntVec b = rd.roots[k];
      std::int64_t p = 0;
      for (int j = 0; j < rd.rank; ++j) {
        std::int64_t col = 0;
        for (int l = 0; l < rd.rank; ++l) col += alpha_v[static_cast<std::size_t>(l)] * rd.pairing(l, j);
        p += col * b[static_cast<std::size_t>(j)];
      }
      for (int j = 0; j < rd.rank; ++j) b[static_cast<std::size_t>(j)] -= p * alpha[static_cast<std::size_t>(j)];
      int idx = rd.root_index(b);
      if (idx < 0) throw Error("weyl", "reflection image is not a root");
      u.perm_[k] = idx;
    }
    u.perm_inv_ = u.perm_;  // involution
    return u;
  }

  /// Build from explicit actions; used by diagram twists.
  static FinWeylElt from_actions(IntMat m, IntMat minv, std::vector<int> perm) {
    FinWeylElt u;
    u.m_ = std::move(m);
    u.minv_ = std::move(minv);
    u.perm_ = std::move(perm);
    u.perm_inv_.assign(u.perm_.size(), 0);
    for (std::size_t k = 0; k < u.perm_.size(); ++k)
      u.perm_inv_[static_cast<std::size_t>(u.perm_[k])] = static_cast<int>(k);
    return u;
  }

  FinWeylElt compose(const FinWeylElt& o) const {
    FinWeylElt u;
    u.m_ = m_ * o.m_;
    u.minv_ = o.minv_ * minv_;
    u.perm_.resize(perm_.size());
    u.perm_inv_.resize(perm_.size());
    for (std::size_t k = 0; k < perm_.size(); ++k) {
      u.perm_[k] = perm_[static_cast<std::size_t>(o.perm_[k])];
      u.perm_inv_[k] = o.perm_inv_[static_cast<std::size_t>(perm_inv_[k])];
    }
    return u;
  }

  FinWeylElt inverse() const {
    FinWeylElt u;
    u.m_ = minv_;
    u.minv_ = m_;
    u.perm_ = perm_inv_;
    u.perm_inv_ = perm_;
    return u;
  }

  bool is_identity() const {
    for (int i = 0; i < m_.rows(); ++i)
      for (int j = 0; j < m_.cols(); ++j)
        if (m_(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  IntVec apply(const IntVec& v) const { return m_ * v; }
  RatVec apply(const RatVec& v) const { return m_ * v; }
  IntVec apply_inv(const IntVec& v) const { return minv_ * v; }
  int apply_root(int idx) const { return perm_[static_cast<std::size_t>(idx)]; }
  int apply_inv_root(int idx) const { return perm_inv_[static_cast<std::size_t>(idx)]; }

  const IntMat& matrix() const { return m_; }
  const IntMat& matrix_inv() const { return minv_; }

  friend bool operator==(const FinWeylElt& a, const FinWeylElt& b) { return a.m_ == b.m_; }
  friend bool operator!=(const FinWeylElt& a, const FinWeylElt& b) { return !(a == b); }

 private:
  IntMat m_, minv_;
  std::vector<int> perm_, perm_inv_;
};

/// Element t^lambda u of the extended affine Weyl group Lambda x| W0.
/// Immutable value; all arithmetic produces fresh elements.
struct ExtAffElt {
  const RootDatum* rd = nullptr;
  IntVec lambda;
  FinWeylElt u;

  static ExtAffElt identity(const RootDatum& datum) {
    return {&datum, IntVec(static_cast<std::size_t>(datum.dim), 0), FinWeylElt::identity(datum)};
  }

  static ExtAffElt translation(const RootDatum& datum, IntVec l) {
    return {&datum, std::move(l), FinWeylElt::identity(datum)};
  }

  friend bool operator==(const ExtAffElt& a, const ExtAffElt& b) {
    return a.rd == b.rd && a.lambda == b.lambda && a.u == b.u;
  }
  friend bool operator!=(const ExtAffElt& a, const ExtAffElt& b) { return !(a == b); }

  /// Flat integer key; used for set membership during enumerations.
  std::vector<std::int64_t> flat_key() const {
    std::vector<std::int64_t> k = lambda;
    const auto& d = u.matrix().data();
    k.insert(k.end(), d.begin(), d.end());
    return k;
  }
};

inline void require_same_datum(const ExtAffElt& a, const ExtAffElt& b) {
  if (a.rd != b.rd) throw Error("weyl", "elements belong to different root data");
}

/// (t^l u)(t^m v) = t^{l + u(m)} (u v)
inline ExtAffElt mul(const ExtAffElt& a, const ExtAffElt& b) {
  require_same_datum(a, b);
  return {a.rd, a.lambda + a.u.apply(b.lambda), a.u.compose(b.u)};
}

inline ExtAffElt inv(const ExtAffElt& a) {
  FinWeylElt ui = a.u.inverse();
  return {a.rd, -ui.apply(a.lambda), ui};
}

/// Action on affine roots: (t^l u)(alpha, k) = (u(alpha), k - <l, u(alpha)>).
inline AffineRoot apply(const ExtAffElt& w, const AffineRoot& a) {
  int img = w.u.apply_root(a.root);
  return {img, a.level - w.rd->pair(w.lambda, w.rd->roots[static_cast<std::size_t>(img)])};
}

/// The simple affine root a_i: (alpha_i, 0) for i >= 1, (-beta, 1) for i = 0.
inline AffineRoot simple_affine_root(const RootDatum& rd, int i) {
  if (i == 0) return {rd.neg_of[static_cast<std::size_t>(rd.highest_root)], 1};
  return {i - 1, 0};
}

/// The simple affine reflection s_i; s_0 = t^{beta^vee} s_beta.
inline ExtAffElt simple_affine(const RootDatum& rd, int i) {
  if (i < 0 || i >= rd.n_simple_affine())
    throw Error("weyl", "simple reflection index out of range");
  if (i == 0) {
    return {&rd, rd.coroots[static_cast<std::size_t>(rd.highest_root)],
            FinWeylElt::reflection(rd, rd.highest_root)};
  }
  return {&rd, IntVec(static_cast<std::size_t>(rd.dim), 0), FinWeylElt::reflection(rd, i - 1)};
}

inline std::vector<ExtAffElt> affine_generators(const RootDatum& rd) {
  std::vector<ExtAffElt> g;
  for (int i = 0; i < rd.n_simple_affine(); ++i) g.push_back(simple_affine(rd, i));
  return g;
}

/// Iwahori-Matsumoto length of t^lambda u.
inline std::int64_t length(const ExtAffElt& w) {
  const RootDatum& rd = *w.rd;
  std::int64_t len = 0;
  for (int a = 0; a < rd.n_pos; ++a) {
    std::int64_t p = rd.pair(w.lambda, rd.roots[static_cast<std::size_t>(a)]);
    bool inv_pos = rd.is_positive_root(w.u.apply_inv_root(a));
    if (inv_pos) {
      len += p < 0 ? -p : p;
    } else {
      std::int64_t q = p - 1;
      len += q < 0 ? -q : q;
    }
  }
  return len;
}

enum class Side { Left, Right };

/// i is a left descent iff w^{-1}(a_i) < 0, i.e. l(s_i w) < l(w);
/// mirrored on the right.
inline bool is_descent(const ExtAffElt& w, int i, Side side) {
  const RootDatum& rd = *w.rd;
  AffineRoot a = simple_affine_root(rd, i);
  if (side == Side::Left) {
    // w^{-1}(alpha, k) = (u^{-1} alpha, k + <lambda, alpha>)
    int img = w.u.apply_inv_root(a.root);
    std::int64_t lvl = a.level + rd.pair(w.lambda, rd.roots[static_cast<std::size_t>(a.root)]);
    return !rd.affine_positive({img, lvl});
  }
  return !rd.affine_positive(apply(w, a));
}

inline std::set<int> descents(const ExtAffElt& w, Side side) {
  std::set<int> ds;
  for (int i = 0; i < w.rd->n_simple_affine(); ++i)
    if (is_descent(w, i, side)) ds.insert(i);
  return ds;
}

/// Normal form w = s_{i_1} ... s_{i_k} * omega_rep with the lexicographically
/// least reduced word (greedy smallest left descent).
struct NormalForm {
  ExtAffElt omega_rep;
  std::vector<int> word;
};

inline NormalForm reduced_word(const ExtAffElt& w) {
  NormalForm nf{w, {}};
  ExtAffElt x = w;
  std::int64_t len = length(x);
  while (len > 0) {
    int chosen = -1;
    for (int i = 0; i < w.rd->n_simple_affine(); ++i) {
      if (is_descent(x, i, Side::Left)) { chosen = i; break; }
    }
    if (chosen < 0) throw Error("weyl", "positive-length element without a left descent");
    nf.word.push_back(chosen);
    x = mul(simple_affine(*w.rd, chosen), x);
    --len;
  }
  nf.omega_rep = x;
  return nf;
}

/// Image of w in Lambda / Q^vee; constant on W_a-cosets.
inline IntVec omega_coset(const ExtAffElt& w) { return w.rd->omega.project(w.lambda); }

/// Canonical length-zero representative of the W_a-coset with the given
/// Omega coordinates.
inline ExtAffElt omega_rep_from_coords(const RootDatum& rd, const IntVec& coords) {
  ExtAffElt t = ExtAffElt::translation(rd, rd.omega.lift(coords));
  return reduced_word(t).omega_rep;
}

/// Sorting key realizing the ShortLex order: length, then Omega label
/// (quotient coordinates), then the canonical reduced word.
struct ShortLexKey {
  std::int64_t len;
  IntVec omega;
  std::vector<int> word;

  friend bool operator<(const ShortLexKey& a, const ShortLexKey& b) {
    if (a.len != b.len) return a.len < b.len;
    if (a.omega != b.omega) return a.omega < b.omega;
    return a.word < b.word;
  }
  friend bool operator==(const ShortLexKey& a, const ShortLexKey& b) {
    return a.len == b.len && a.omega == b.omega && a.word == b.word;
  }
};

inline ShortLexKey shortlex_key(const ExtAffElt& w) {
  NormalForm nf = reduced_word(w);
  return {static_cast<std::int64_t>(nf.word.size()), omega_coset(w), nf.word};
}

inline bool shortlex_less(const ExtAffElt& a, const ExtAffElt& b) {
  return shortlex_key(a) < shortlex_key(b);
}

inline void sort_shortlex(std::vector<ExtAffElt>& v) {
  std::vector<std::pair<ShortLexKey, std::size_t>> keyed;
  keyed.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) keyed.emplace_back(shortlex_key(v[i]), i);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first < b.first;
  });
  std::vector<ExtAffElt> out;
  out.reserve(v.size());
  for (const auto& [k, i] : keyed) out.push_back(v[i]);
  v = std::move(out);
}

/// Names for Omega elements, keyed by quotient coordinates. Unnamed classes
/// get the synthetic label "w" + coordinates.
struct OmegaLabels {
  std::map<IntVec, std::string> name_of;
  std::map<std::string, IntVec> coords_of;

  void add(const std::string& name, const IntVec& coords) {
    name_of[coords] = name;
    coords_of[name] = coords;
  }

  static std::string synthetic(const IntVec& coords) {
    std::string s = "w";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) s += "x";
      s += std::to_string(coords[i]);
    }
    return s;
  }

  std::string name(const IntVec& coords) const {
    auto it = name_of.find(coords);
    return it != name_of.end() ? it->second : synthetic(coords);
  }

  std::optional<IntVec> lookup(const std::string& name) const {
    auto it = coords_of.find(name);
    if (it != coords_of.end()) return it->second;
    return std::nullopt;
  }
};

/// Labels for every torsion class of Omega, with config names layered over
/// the synthetic fallbacks.
inline OmegaLabels default_labels(const RootDatum& rd) {
  OmegaLabels labels;
  for (const IntVec& c : rd.omega.torsion_elements()) {
    bool trivial = true;
    for (std::int64_t v : c) trivial &= v == 0;
    if (!trivial) labels.add(OmegaLabels::synthetic(c), c);
  }
  return labels;
}

inline std::string element_string(const ExtAffElt& w, const OmegaLabels& labels) {
  NormalForm nf = reduced_word(w);
  std::string s;
  for (int i : nf.word) {
    if (!s.empty()) s += " ";
    s += "s" + std::to_string(i);
  }
  IntVec oc = omega_coset(nf.omega_rep);
  bool trivial = true;
  for (std::int64_t v : oc) trivial &= v == 0;
  if (!trivial) {
    if (!s.empty()) s += " ";
    s += labels.name(oc);
  }
  if (s.empty()) s = "e";
  return s;
}

/// Parse a whitespace-separated token string: generators "s0".."sN",
/// declared Omega labels, and "e" for the identity.
inline ExtAffElt from_word(const RootDatum& rd, const std::string& tokens,
                           const OmegaLabels& labels) {
  ExtAffElt w = ExtAffElt::identity(rd);
  std::istringstream in(tokens);
  std::string tok;
  while (in >> tok) {
    if (tok == "e") continue;
    if (tok.size() >= 2 && tok[0] == 's' &&
        tok.find_first_not_of("0123456789", 1) == std::string::npos) {
      int i = std::stoi(tok.substr(1));
      if (i >= rd.n_simple_affine())
        throw Error("weyl", "unknown token '" + tok + "'");
      w = mul(w, simple_affine(rd, i));
      continue;
    }
    if (auto coords = labels.lookup(tok)) {
      w = mul(w, omega_rep_from_coords(rd, *coords));
      continue;
    }
    throw Error("weyl", "unknown token '" + tok + "'");
  }
  return w;
}

/// Exactly { w in W_a tau : l(w) <= bound }, ShortLex sorted.
/// BFS by left multiplication; every element is reached along a chain of
/// strictly increasing lengths.
inline std::vector<ExtAffElt> enumerate_coset_ball(const ExtAffElt& tau, std::int64_t bound) {
  if (length(tau) != 0) throw Error("weyl", "coset ball base point must have length zero");
  if (bound < 0) throw Error("weyl", "negative ball radius");
  const RootDatum& rd = *tau.rd;
  std::vector<ExtAffElt> gens = affine_generators(rd);
  std::map<std::vector<std::int64_t>, ExtAffElt> seen;
  seen.emplace(tau.flat_key(), tau);
  std::vector<ExtAffElt> frontier{tau};
  for (std::int64_t len = 1; len <= bound && !frontier.empty(); ++len) {
    std::vector<ExtAffElt> next;
    for (const ExtAffElt& x : frontier) {
      for (const ExtAffElt& s : gens) {
        ExtAffElt y = mul(s, x);
        if (length(y) != len) continue;
        auto [it, fresh] = seen.emplace(y.flat_key(), y);
        if (fresh) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  std::vector<ExtAffElt> out;
  out.reserve(seen.size());
  for (auto& [k, w] : seen) out.push_back(w);
  sort_shortlex(out);
  return out;
}

/// Unique dominant representative of the W0-orbit of v, with a witness
/// u such that u(v) = dominant_rep.
inline std::pair<RatVec, FinWeylElt> dominant_rep(const RootDatum& rd, const RatVec& v) {
  RatVec cur = v;
  FinWeylElt u = FinWeylElt::identity(rd);
  while (true) {
    int neg = -1;
    for (int i = 0; i < rd.rank; ++i) {
      if (rd.pair_simple(cur, i) < Rat(0)) { neg = i; break; }
    }
    if (neg < 0) break;
    FinWeylElt s = FinWeylElt::reflection(rd, neg);
    cur = s.apply(cur);
    u = s.compose(u);
  }
  return {cur, u};
}

struct TwistSpec {
  std::vector<int> diagram_perm;       // image of each simple root index
  std::optional<IntVec> omega_coords;  // Omega part, as quotient coordinates
  int check_depth = 3;                 // length-preservation sample depth
};

/// Length-preserving automorphism theta = Ad(tau0) o delta of the extended
/// affine Weyl group, with delta a diagram automorphism.
class Twist {
 public:
  const RootDatum* rd = nullptr;
  std::vector<int> sigma;      // simple-root permutation of delta
  IntMat delta, delta_inv;     // action of delta on Lambda
  std::vector<int> root_perm;  // action of delta on the root list
  ExtAffElt tau0;              // length-zero inner part
  int order = 1;               // order of theta as an automorphism
  std::vector<int> affine_perm;  // theta's permutation of simple affine indices

  ExtAffElt apply_delta(const ExtAffElt& w) const {
    FinWeylElt conj = FinWeylElt::from_actions(
        delta * w.u.matrix() * delta_inv, delta * w.u.matrix_inv() * delta_inv,
        permute_roots(w.u));
    return {w.rd, delta * w.lambda, conj};
  }

  ExtAffElt apply(const ExtAffElt& w) const {
    return mul(mul(tau0, apply_delta(w)), inv(tau0));
  }

  int apply_affine_index(int i) const { return affine_perm[static_cast<std::size_t>(i)]; }

  bool is_identity_twist() const {
    if (!delta.rows()) return length(tau0) == 0 && tau0.u.is_identity() && is_zero_vec(tau0.lambda);
    return delta == IntMat::identity(delta.rows()) && tau0.u.is_identity() && is_zero_vec(tau0.lambda);
  }

 private:
  static bool is_zero_vec(const IntVec& v) {
    for (std::int64_t x : v) if (x != 0) return false;
    return true;
  }

  std::vector<int> permute_roots(const FinWeylElt& u) const {
    std::vector<int> inv_perm(root_perm.size());
    for (std::size_t k = 0; k < root_perm.size(); ++k)
      inv_perm[static_cast<std::size_t>(root_perm[k])] = static_cast<int>(k);
    std::vector<int> out(root_perm.size());
    for (std::size_t k = 0; k < root_perm.size(); ++k)
      out[k] = root_perm[static_cast<std::size_t>(u.apply_root(inv_perm[k]))];
    return out;
  }
};

inline ExtAffElt twisted(const Twist& tw, const ExtAffElt& w) { return tw.apply(w); }

/// Validate a diagram permutation + optional Omega part and assemble theta.
/// Checks: the permutation is a diagram automorphism, delta preserves Lambda
/// and Q^vee, theta has finite order, and theta preserves lengths on the
/// simple affine generators and on a sample ball.
inline Twist build_twist(const RootDatum& rd, const TwistSpec& spec) {
  Twist tw;
  tw.rd = &rd;
  const int r = rd.rank;

  std::vector<int> sigma = spec.diagram_perm;
  if (sigma.empty()) {
    sigma.resize(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) sigma[static_cast<std::size_t>(i)] = i;
  }
  if (static_cast<int>(sigma.size()) != r)
    throw Error("root_datum", "diagram permutation has wrong size");
  std::vector<bool> hit(static_cast<std::size_t>(r), false);
  for (int v : sigma) {
    if (v < 0 || v >= r || hit[static_cast<std::size_t>(v)])
      throw Error("root_datum", "diagram permutation is not a permutation");
    hit[static_cast<std::size_t>(v)] = true;
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (rd.cartan(i, j) != rd.cartan(sigma[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(j)]))
        throw Error("root_datum", "permutation is not a diagram automorphism");
  tw.sigma = sigma;

  // delta on Lambda: conjugate the coweight-coordinate permutation into the
  // lattice basis and insist on integrality
  IntMat bt(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) bt(i, j) = rd.pairing(j, i);
  IntMat d(rd.dim, rd.dim);
  for (int col = 0; col < r; ++col) {
    // coweight coordinates of delta(b_col)
    RatVec cw(static_cast<std::size_t>(r), Rat(0));
    for (int j = 0; j < r; ++j)
      cw[static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])] = Rat(rd.pairing(col, j));
    RatVec x = solve_rational(bt, cw);
    for (int i = 0; i < r; ++i) {
      if (!x[static_cast<std::size_t>(i)].is_integer())
        throw Error("root_datum", "twist does not preserve the lattice");
      d(i, col) = x[static_cast<std::size_t>(i)].num;
    }
  }
  tw.delta = d;
  // finite order on Lambda; inverse is the previous power
  IntMat p = d, prev = IntMat::identity(rd.dim);
  int delta_order = 1;
  while (p != IntMat::identity(rd.dim)) {
    prev = p;
    p = p * d;
    ++delta_order;
    if (delta_order > 64) throw Error("root_datum", "twist has unexpectedly large order");
  }
  tw.delta_inv = delta_order == 1 ? IntMat::identity(rd.dim) : prev;

  // delta on roots: permute simple-root coordinates
  tw.root_perm.resize(rd.roots.size());
  for (std::size_t k = 0; k < rd.roots.size(); ++k) {
    IntVec img(static_cast<std::size_t>(r), 0);
    for (int j = 0; j < r; ++j)
      img[static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])] = rd.roots[k][static_cast<std::size_t>(j)];
    int idx = rd.root_index(img);
    if (idx < 0) throw Error("root_datum", "twist does not permute the roots");
    tw.root_perm[k] = idx;
  }
  // Q^vee is carried to Q^vee
  for (int i = 0; i < r; ++i)
    if (d * rd.coroots[static_cast<std::size_t>(i)] != rd.coroots[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])])
      throw Error("root_datum", "twist does not preserve the coroot lattice");

  tw.tau0 = spec.omega_coords ? omega_rep_from_coords(rd, *spec.omega_coords)
                              : ExtAffElt::identity(rd);
  if (length(tw.tau0) != 0)
    throw Error("root_datum", "twist Omega part must have length zero");

  // order of theta: least k with delta^k = 1 and tau0 delta(tau0) ... = e
  ExtAffElt acc = ExtAffElt::identity(rd);
  ExtAffElt cur = tw.tau0;
  IntMat dp = IntMat::identity(rd.dim);
  int k = 0;
  while (true) {
    acc = mul(acc, cur);
    cur = tw.apply_delta(cur);
    dp = dp * d;
    ++k;
    if (dp == IntMat::identity(rd.dim) && acc == ExtAffElt::identity(rd)) break;
    if (k > 4096) throw Error("root_datum", "twist does not have finite order");
  }
  tw.order = k;

  // theta must permute the simple affine reflections
  tw.affine_perm.assign(static_cast<std::size_t>(rd.n_simple_affine()), -1);
  for (int i = 0; i < rd.n_simple_affine(); ++i) {
    ExtAffElt img = tw.apply(simple_affine(rd, i));
    if (length(img) != 1)
      throw Error("root_datum", "twist does not preserve generator lengths");
    int found = -1;
    for (int j = 0; j < rd.n_simple_affine(); ++j)
      if (img == simple_affine(rd, j)) { found = j; break; }
    if (found < 0)
      throw Error("root_datum", "twist does not permute the simple affine reflections");
    tw.affine_perm[static_cast<std::size_t>(i)] = found;
  }

  // sampled length preservation on a ball around the identity
  if (rd.n_simple_affine() > 0) {
    for (const ExtAffElt& w : enumerate_coset_ball(ExtAffElt::identity(rd), spec.check_depth)) {
      if (length(tw.apply(w)) != length(w))
        throw Error("root_datum", "twist fails length preservation on sample ball");
    }
  }
  return tw;
}

}  // namespace affweyl

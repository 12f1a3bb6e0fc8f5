#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "affweyl/intmat.hpp"
#include "affweyl/rational.hpp"

namespace affweyl {

/// Error with a module-qualified message, surfaced verbatim by the CLI.
struct Error : std::runtime_error {
  Error(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what) {}
};

enum class LatticeKind { SimplyConnected, Adjoint, Explicit };

struct CartanSpec {
  std::string type;  // "A1".."A8", "B2".., "C2".., "D3".., "E6".."E8", "F4", "G2", "A0"
  LatticeKind lattice = LatticeKind::SimplyConnected;
  IntMat basis;  // Explicit only: rows are a lattice basis in coweight coordinates
};

namespace detail {

inline std::pair<char, int> parse_type(const std::string& t) {
  if (t.size() < 2 || t[0] < 'A' || t[0] > 'G')
    throw Error("root_datum", "unrecognized Cartan type '" + t + "'");
  int n = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9')
      throw Error("root_datum", "unrecognized Cartan type '" + t + "'");
    n = n * 10 + (t[i] - '0');
  }
  return {t[0], n};
}

/// Cartan matrix with the convention C[i][j] = <alpha_i^vee, alpha_j>.
inline IntMat cartan_matrix(const std::string& type) {
  auto [fam, n] = parse_type(type);
  auto chain = [](int r) {
    IntMat c(r, r);
    for (int i = 0; i < r; ++i) {
      c(i, i) = 2;
      if (i + 1 < r) { c(i, i + 1) = -1; c(i + 1, i) = -1; }
    }
    return c;
  };
  switch (fam) {
    case 'A': {
      if (n == 0) return IntMat(0, 0);
      return chain(n);
    }
    case 'B': {
      if (n < 2) throw Error("root_datum", "rank too small for type B");
      IntMat c = chain(n);
      c(n - 1, n - 2) = -2;
      return c;
    }
    case 'C': {
      if (n < 2) throw Error("root_datum", "rank too small for type C");
      IntMat c = chain(n);
      c(n - 2, n - 1) = -2;
      return c;
    }
    case 'D': {
      if (n < 3) throw Error("root_datum", "rank too small for type D");
      IntMat c = chain(n - 1);
      IntMat d(n, n);
      for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) d(i, j) = c(i, j);
      d(n - 1, n - 1) = 2;
      d(n - 3, n - 1) = -1;
      d(n - 1, n - 3) = -1;
      return d;
    }
    case 'E': {
      if (n < 6 || n > 8) throw Error("root_datum", "type E has ranks 6, 7, 8");
      // Bourbaki numbering: node 1 (index 0) - 3 - 4 - 5 - ... chain on
      // indices {0, 2, 3, ..., n-1}, with node 2 (index 1) attached to index 3.
      IntMat c(n, n);
      for (int i = 0; i < n; ++i) c(i, i) = 2;
      auto link = [&](int i, int j) { c(i, j) = -1; c(j, i) = -1; };
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      return c;
    }
    case 'F': {
      if (n != 4) throw Error("root_datum", "type F has rank 4");
      IntMat c = chain(4);
      c(1, 2) = -2;
      return c;
    }
    case 'G': {
      if (n != 2) throw Error("root_datum", "type G has rank 2");
      IntMat c(2, 2);
      c(0, 0) = 2; c(0, 1) = -1;
      c(1, 0) = -3; c(1, 1) = 2;
      return c;
    }
    default:
      throw Error("root_datum", "unrecognized Cartan type '" + type + "'");
  }
}

inline std::size_t expected_root_count(char fam, int n) {
  switch (fam) {
    case 'A': return static_cast<std::size_t>(n) * (n + 1);
    case 'B':
    case 'C': return 2 * static_cast<std::size_t>(n) * n;
    case 'D': return 2 * static_cast<std::size_t>(n) * (n - 1);
    case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
    case 'F': return 48;
    case 'G': return 12;
  }
  return 0;
}

inline std::int64_t finite_weyl_order(char fam, int n) {
  auto fact = [](int k) { std::int64_t f = 1; for (int i = 2; i <= k; ++i) f *= i; return f; };
  switch (fam) {
    case 'A': return fact(n + 1);
    case 'B':
    case 'C': return fact(n) << n;
    case 'D': return fact(n) << (n - 1);
    case 'E': return n == 6 ? 51840 : n == 7 ? 2903040 : 696729600;
    case 'F': return 1152;
    case 'G': return 12;
  }
  return 1;
}

}  // namespace detail

/// Affine root (alpha, k), the linear functional v -> <v, alpha> + k.
struct AffineRoot {
  int root = 0;          // index into RootDatum::roots
  std::int64_t level = 0;
};

/// A reduced root system together with a cocharacter lattice containing the
/// coroot lattice. Everything downstream lives inside one of these. Lattice
/// vectors are written in the basis of Lambda, roots in the simple-root basis.
class RootDatum {
 public:
  std::string cartan_type;
  int rank = 0;          // number of simple roots
  int dim = 0;           // rank of Lambda (equal to rank for these data)
  IntMat cartan;         // cartan(i, j) = <alpha_i^vee, alpha_j>
  IntMat pairing;        // pairing(i, j) = <b_i, alpha_j> for the Lambda-basis b_i
  std::vector<IntVec> roots;    // simple-root coordinates; positives first
  std::vector<IntVec> coroots;  // Lambda coordinates, index-parallel to roots
  int n_pos = 0;
  std::vector<int> neg_of;      // index of the negated root
  IntVec two_rho;               // sum of positive roots, simple-root coordinates
  int highest_root = -1;        // index into roots
  AbelianQuotient omega;        // Lambda / Q^vee
  std::int64_t w0_order = 1;

  bool is_positive_root(int idx) const { return idx < n_pos; }

  std::int64_t pair(const IntVec& lambda, const IntVec& root_coords) const {
    std::int64_t s = 0;
    for (int j = 0; j < rank; ++j) {
      if (root_coords[j] == 0) continue;
      std::int64_t col = 0;
      for (int i = 0; i < dim; ++i) col += lambda[i] * pairing(i, j);
      s += root_coords[j] * col;
    }
    return s;
  }

  Rat pair(const RatVec& v, const IntVec& root_coords) const {
    Rat s(0);
    for (int j = 0; j < rank; ++j) {
      if (root_coords[j] == 0) continue;
      Rat col(0);
      for (int i = 0; i < dim; ++i) col = col + v[i] * Rat(pairing(i, j));
      s = s + Rat(root_coords[j]) * col;
    }
    return s;
  }

  std::int64_t pair_simple(const IntVec& lambda, int j) const {
    std::int64_t s = 0;
    for (int i = 0; i < dim; ++i) s += lambda[i] * pairing(i, j);
    return s;
  }

  Rat pair_simple(const RatVec& v, int j) const {
    Rat s(0);
    for (int i = 0; i < dim; ++i) s = s + v[i] * Rat(pairing(i, j));
    return s;
  }

  int root_index(const IntVec& coords) const {
    auto it = root_lookup_.find(coords);
    return it == root_lookup_.end() ? -1 : it->second;
  }

  /// (alpha, k) is positive iff k > 0, or k = 0 and alpha is positive.
  bool affine_positive(const AffineRoot& a) const {
    if (a.level != 0) return a.level > 0;
    return is_positive_root(a.root);
  }

  int n_simple_affine() const { return rank == 0 ? 0 : rank + 1; }

  friend RootDatum build_root_datum(const CartanSpec& spec);

 private:
  std::map<IntVec, int> root_lookup_;
};

/// Construct and validate a root datum from a Cartan type and lattice choice.
inline RootDatum build_root_datum(const CartanSpec& spec) {
  auto [fam, n] = detail::parse_type(spec.type);
  RootDatum rd;
  rd.cartan_type = spec.type;
  rd.cartan = detail::cartan_matrix(spec.type);
  rd.rank = rd.cartan.rows();
  rd.dim = rd.rank;
  rd.w0_order = detail::finite_weyl_order(fam, n);

  const int r = rd.rank;

  // lattice basis expressed in coweight coordinates; its rows are exactly the
  // pairing matrix <b_i, alpha_j>
  IntMat basis_cw;
  switch (spec.lattice) {
    case LatticeKind::SimplyConnected: basis_cw = rd.cartan; break;
    case LatticeKind::Adjoint: basis_cw = IntMat::identity(r); break;
    case LatticeKind::Explicit: {
      if (spec.basis.rows() != r || spec.basis.cols() != r)
        throw Error("root_datum", "explicit lattice must be a " + std::to_string(r) + "x" +
                                      std::to_string(r) + " integer matrix");
      basis_cw = spec.basis;
      break;
    }
  }
  rd.pairing = basis_cw;

  // simple coroots in Lambda coordinates: solve B^T x = row_i(C)
  std::vector<IntVec> simple_coroots(r);
  IntMat bt(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) bt(i, j) = basis_cw(j, i);
  for (int i = 0; i < r; ++i) {
    RatVec rhs(r);
    for (int j = 0; j < r; ++j) rhs[j] = Rat(rd.cartan(i, j));
    RatVec x;
    try {
      x = solve_rational(bt, rhs);
    } catch (const std::domain_error&) {
      throw Error("root_datum", "explicit lattice matrix is singular");
    }
    IntVec xi(r);
    for (int j = 0; j < r; ++j) {
      if (!x[j].is_integer())
        throw Error("root_datum", "lattice does not contain Q^vee");
      xi[j] = x[j].num;
    }
    simple_coroots[i] = xi;
  }

  // generate all roots by closing the simple roots under simple reflections,
  // tracking coroots through the same reflections
  std::map<IntVec, int> seen;
  std::vector<IntVec> roots, coroots;
  for (int i = 0; i < r; ++i) {
    IntVec e(r, 0);
    e[i] = 1;
    seen[e] = static_cast<int>(roots.size());
    roots.push_back(e);
    coroots.push_back(simple_coroots[i]);
  }
  for (std::size_t head = 0; head < roots.size(); ++head) {
    for (int i = 0; i < r; ++i) {
      IntVec a = roots[head];
      std::int64_t p = 0;
      for (int j = 0; j < r; ++j) p += rd.cartan(i, j) * a[j];
      a[i] -= p;  // s_i(alpha)
      if (seen.count(a)) continue;
      IntVec cv = coroots[head];
      std::int64_t q = 0;
      for (int k = 0; k < r; ++k) q += cv[k] * basis_cw(k, i);  // <coroot, alpha_i>
      for (int k = 0; k < r; ++k) cv[k] -= q * simple_coroots[i][k];
      seen[a] = static_cast<int>(roots.size());
      roots.push_back(a);
      coroots.push_back(cv);
    }
  }
  if (roots.size() != detail::expected_root_count(fam, n))
    throw Error("root_datum", "root generation produced an inconsistent root list");

  // reducedness and sign coherence
  for (const IntVec& a : roots) {
    IntVec dbl(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) dbl[k] = 2 * a[k];
    if (seen.count(dbl)) throw Error("root_datum", "root system is not reduced");
    bool pos = false, neg = false;
    for (std::int64_t c : a) { pos |= c > 0; neg |= c < 0; }
    if (pos && neg) throw Error("root_datum", "root with mixed signs");
  }

  // order: the simple roots at indices 0..r-1, the remaining positives by
  // (height, lex), negatives mirrored; downstream code indexes simple root j
  // as root j
  std::vector<int> pos_idx;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    bool pos = true;
    for (std::int64_t c : roots[k]) pos &= c >= 0;
    if (pos) pos_idx.push_back(static_cast<int>(k));
  }
  auto height = [&](int k) {
    std::int64_t h = 0;
    for (std::int64_t c : roots[static_cast<std::size_t>(k)]) h += c;
    return h;
  };
  std::sort(pos_idx.begin(), pos_idx.end(), [&](int a, int b) {
    std::int64_t ha = height(a), hb = height(b);
    bool sa = ha == 1, sb = hb == 1;
    if (sa != sb) return sa;
    if (sa && sb) {
      // simple roots in generator order: e_j sorts by the position of its 1
      return roots[static_cast<std::size_t>(a)] > roots[static_cast<std::size_t>(b)];
    }
    if (ha != hb) return ha < hb;
    return roots[static_cast<std::size_t>(a)] < roots[static_cast<std::size_t>(b)];
  });
  rd.n_pos = static_cast<int>(pos_idx.size());
  rd.roots.clear();
  rd.coroots.clear();
  for (int k : pos_idx) {
    rd.roots.push_back(roots[static_cast<std::size_t>(k)]);
    rd.coroots.push_back(coroots[static_cast<std::size_t>(k)]);
  }
  for (int k : pos_idx) {
    rd.roots.push_back(-roots[static_cast<std::size_t>(k)]);
    rd.coroots.push_back(-coroots[static_cast<std::size_t>(k)]);
  }
  rd.neg_of.resize(rd.roots.size());
  for (int k = 0; k < rd.n_pos; ++k) {
    rd.neg_of[static_cast<std::size_t>(k)] = k + rd.n_pos;
    rd.neg_of[static_cast<std::size_t>(k + rd.n_pos)] = k;
  }
  rd.root_lookup_.clear();
  for (std::size_t k = 0; k < rd.roots.size(); ++k)
    rd.root_lookup_[rd.roots[k]] = static_cast<int>(k);

  rd.two_rho.assign(static_cast<std::size_t>(r), 0);
  for (int k = 0; k < rd.n_pos; ++k)
    for (int j = 0; j < r; ++j) rd.two_rho[static_cast<std::size_t>(j)] += rd.roots[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];

  if (r > 0) {
    rd.highest_root = pos_idx.empty() ? -1 : rd.n_pos - 1;  // maximal height
    // the highest root is the dominant long root; dominance check
    for (int i = 0; i < r; ++i) {
      std::int64_t p = 0;
      for (int j = 0; j < r; ++j)
        p += rd.cartan(i, j) * rd.roots[static_cast<std::size_t>(rd.highest_root)][static_cast<std::size_t>(j)];
      if (p < 0) throw Error("root_datum", "highest root is not dominant");
    }
  }

  std::vector<IntVec> rels(simple_coroots.begin(), simple_coroots.end());
  rd.omega = AbelianQuotient(rd.dim, rels);
  return rd;
}

}  // namespace affweyl

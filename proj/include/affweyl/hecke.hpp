#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "affweyl/newton.hpp"

namespace affweyl {

/// Integer-coefficient polynomial in the Hecke parameter q, coefficients
/// stored by ascending degree with trailing zeros pruned.
struct ParamPoly {
  std::vector<std::int64_t> c;

  ParamPoly() = default;
  ParamPoly(std::int64_t k) { if (k != 0) c.push_back(k); }

  static ParamPoly q() { ParamPoly p; p.c = {0, 1}; return p; }
  static ParamPoly q_minus_one() { ParamPoly p; p.c = {-1, 1}; return p; }

  bool is_zero() const { return c.empty(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
  }
  friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
  }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    ParamPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.c == b.c; }
  friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }

  std::int64_t eval_at_one() const {
    std::int64_t s = 0;
    for (std::int64_t x : c) s += x;
    return s;
  }

  /// Canonical ascending-degree rendering: "-1 + q", "q^2", "2q", "0".
  std::string str() const {
    if (c.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      std::int64_t v = c[k];
      if (s.empty()) {
        if (v < 0) { s += "-"; v = -v; }
      } else {
        s += v < 0 ? " - " : " + ";
        if (v < 0) v = -v;
      }
      if (k == 0) {
        s += std::to_string(v);
      } else {
        if (v != 1) s += std::to_string(v);
        s += "q";
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

  /// Inverse of str.
  static ParamPoly parse(const std::string& s) {
    ParamPoly p;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && s[i] == ' ') ++i; };
    skip_ws();
    if (s.substr(i) == "0") return p;
    bool first = true;
    while (i < s.size()) {
      skip_ws();
      std::int64_t sign = 1;
      if (!first) {
        if (s[i] == '+') sign = 1;
        else if (s[i] == '-') sign = -1;
        else throw std::invalid_argument("ParamPoly::parse: expected + or -");
        ++i;
        skip_ws();
      } else if (s[i] == '-') {
        sign = -1;
        ++i;
      }
      first = false;
      std::int64_t coeff = 1;
      bool have_digits = false;
      std::int64_t v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        have_digits = true;
        ++i;
      }
      if (have_digits) coeff = v;
      std::size_t deg = 0;
      if (i < s.size() && s[i] == 'q') {
        ++i;
        deg = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          std::size_t d = 0;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            d = d * 10 + static_cast<std::size_t>(s[i] - '0');
            ++i;
          }
          deg = d;
        }
      } else if (!have_digits) {
        throw std::invalid_argument("ParamPoly::parse: empty term");
      }
      if (p.c.size() <= deg) p.c.resize(deg + 1, 0);
      p.c[deg] += sign * coeff;
      skip_ws();
    }
    p.trim();
    return p;
  }
};

/// Finitely supported map from group elements to polynomials in q; the
/// T-basis presentation of the Iwahori-Hecke algebra. Zero coefficients are
/// pruned eagerly.
class HeckeElt {
 public:
  HeckeElt() = default;

  static HeckeElt basis(const ExtAffElt& w, ParamPoly coeff = ParamPoly(1)) {
    HeckeElt f;
    f.add(w, coeff);
    return f;
  }

  void add(const ExtAffElt& w, const ParamPoly& coeff) {
    if (coeff.is_zero()) return;
    auto key = w.flat_key();
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), std::make_pair(w, coeff));
    } else {
      it->second.second = it->second.second + coeff;
      if (it->second.second.is_zero()) terms_.erase(it);
    }
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const ParamPoly* coeff(const ExtAffElt& w) const {
    auto it = terms_.find(w.flat_key());
    return it == terms_.end() ? nullptr : &it->second.second;
  }

  /// Support/coefficient pairs sorted ShortLex.
  std::vector<std::pair<ExtAffElt, ParamPoly>> sorted_terms() const {
    std::vector<std::pair<ExtAffElt, ParamPoly>> out;
    out.reserve(terms_.size());
    for (const auto& [k, v] : terms_) out.push_back(v);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return shortlex_key(a.first) < shortlex_key(b.first);
    });
    return out;
  }

  friend HeckeElt operator+(const HeckeElt& a, const HeckeElt& b) {
    HeckeElt r = a;
    for (const auto& [k, v] : b.terms_) r.add(v.first, v.second);
    return r;
  }
  friend HeckeElt operator-(const HeckeElt& a, const HeckeElt& b) {
    HeckeElt r = a;
    for (const auto& [k, v] : b.terms_) r.add(v.first, ParamPoly(0) - v.second);
    return r;
  }
  friend bool operator==(const HeckeElt& a, const HeckeElt& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (const auto& [k, v] : a.terms_) {
      auto it = b.terms_.find(k);
      if (it == b.terms_.end() || it->second.second != v.second) return false;
    }
    return true;
  }
  friend bool operator!=(const HeckeElt& a, const HeckeElt& b) { return !(a == b); }

  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [k, v] : terms_) f(v.first, v.second);
  }

 private:
  std::map<std::vector<std::int64_t>, std::pair<ExtAffElt, ParamPoly>> terms_;
};

/// A cocenter vector is a Hecke element whose support consists of class
/// labels (ShortLex-least minimal elements); cocenter_reduce guarantees this.
using CocenterVector = HeckeElt;

namespace detail {

/// Right multiplication f * T_s by the quadratic relation:
/// T_x T_s = T_{xs} when lengths add, else (q-1) T_x + q T_{xs}.
inline HeckeElt mul_gen_right(const HeckeElt& f, const ExtAffElt& s) {
  HeckeElt out;
  f.for_each([&](const ExtAffElt& x, const ParamPoly& c) {
    ExtAffElt xs = mul(x, s);
    if (length(xs) > length(x)) {
      out.add(xs, c);
    } else {
      out.add(x, c * ParamPoly::q_minus_one());
      out.add(xs, c * ParamPoly::q());
    }
  });
  return out;
}

/// f * T_tau for a length-zero tau; lengths always add.
inline HeckeElt mul_omega_right(const HeckeElt& f, const ExtAffElt& tau) {
  HeckeElt out;
  f.for_each([&](const ExtAffElt& x, const ParamPoly& c) { out.add(mul(x, tau), c); });
  return out;
}

}  // namespace detail

/// Product in the Iwahori-Matsumoto presentation. The right factor is
/// expanded generator by generator along its canonical reduced word.
inline HeckeElt hecke_mul(const HeckeElt& f, const HeckeElt& g) {
  HeckeElt out;
  g.for_each([&](const ExtAffElt& v, const ParamPoly& cv) {
    NormalForm nf = reduced_word(v);
    HeckeElt acc;
    f.for_each([&](const ExtAffElt& x, const ParamPoly& cx) { acc.add(x, cx * cv); });
    for (int i : nf.word) acc = detail::mul_gen_right(acc, simple_affine(*v.rd, i));
    if (length(nf.omega_rep) != 0)
      throw Error("hecke", "normal form has a non-trivial remainder of positive length");
    bool omega_trivial = nf.omega_rep.u.is_identity();
    for (std::int64_t x : nf.omega_rep.lambda) omega_trivial &= x == 0;
    if (!omega_trivial) acc = detail::mul_omega_right(acc, nf.omega_rep);
    out = out + acc;
  });
  return out;
}

enum class PivotStrategy { Default, Reversed };

/// Rewrite a Hecke element into the span of minimal-class representatives of
/// the theta-twisted cocenter. Repeatedly picks a maximal-length non-minimal
/// support element w, slides it along length-preserving moves to a site w'
/// with a descent s, and applies
///   T_w = T_{w'} = (q-1) T_{s w'} + q T_{s w' theta(s)}.
/// Minimal terms are keyed by their class label.
inline CocenterVector cocenter_reduce(Conjugation& conj, const HeckeElt& f,
                                      PivotStrategy strategy = PivotStrategy::Default) {
  CocenterVector done;
  HeckeElt work = f;
  while (!work.empty()) {
    // pivot: a maximal-length non-minimal support element
    bool found = false;
    ExtAffElt pivot;
    ParamPoly coeff;
    std::int64_t best_len = -1;
    ShortLexKey best_key{};
    work.for_each([&](const ExtAffElt& w, const ParamPoly& c) {
      if (conj.is_minimal(w)) return;
      std::int64_t len = length(w);
      if (len < best_len) return;
      ShortLexKey k = shortlex_key(w);
      bool better = !found || len > best_len ||
                    (strategy == PivotStrategy::Default ? k < best_key : best_key < k);
      if (better) {
        found = true;
        pivot = w;
        coeff = c;
        best_len = len;
        best_key = k;
      }
    });
    if (!found) break;
    work.add(pivot, ParamPoly(0) - coeff);  // remove the pivot term
    auto site = conj.find_descent(pivot, strategy == PivotStrategy::Reversed);
    if (!site) throw Error("hecke", "non-minimal element without a descent site");
    const auto& [w_prime, s] = *site;
    ExtAffElt sw = mul(simple_affine(conj.datum(), s), w_prime);
    ExtAffElt swts = conj.move(w_prime, s);
    work.add(sw, coeff * ParamPoly::q_minus_one());
    work.add(swts, coeff * ParamPoly::q());
  }
  // all remaining support is minimal; key by class label
  work.for_each([&](const ExtAffElt& w, const ParamPoly& c) {
    done.add(conj.class_label(w), c);
  });
  return done;
}

/// Partition a cocenter vector by the Newton pair of its keys.
inline std::map<NewtonPair, CocenterVector> newton_grade(Conjugation& conj,
                                                         const CocenterVector& cv) {
  std::map<NewtonPair, CocenterVector> graded;
  cv.for_each([&](const ExtAffElt& w, const ParamPoly& c) {
    graded[conj.pi(w)].add(w, c);
  });
  return graded;
}

struct TraceCheckResult {
  bool ok = false;
  CocenterVector discrepancy;
};

/// The twisted trace relation: T_x T_y and T_y T_{theta(x)} agree in the
/// cocenter. Returns the reduced difference.
inline TraceCheckResult trace_check(Conjugation& conj, const ExtAffElt& x, const ExtAffElt& y) {
  HeckeElt lhs = hecke_mul(HeckeElt::basis(x), HeckeElt::basis(y));
  HeckeElt rhs = hecke_mul(HeckeElt::basis(y), HeckeElt::basis(conj.twist().apply(x)));
  CocenterVector d = cocenter_reduce(conj, lhs) - cocenter_reduce(conj, rhs);
  return {d.empty(), d};
}

}  // namespace affweyl

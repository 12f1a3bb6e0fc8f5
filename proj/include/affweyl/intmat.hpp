#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "affweyl/rational.hpp"

namespace affweyl {

using IntVec = std::vector<std::int64_t>;

inline IntVec operator+(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec operator-(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec operator-(const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline std::string str(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

/// Dense row-major integer matrix, sized for ranks <= 8.
class IntMat {
 public:
  IntMat() = default;
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::int64_t& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::int64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  friend bool operator==(const IntMat& x, const IntMat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const IntMat& x, const IntMat& y) { return !(x == y); }

  IntMat operator*(const IntMat& o) const {
    IntMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        std::int64_t v = (*this)(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }

  IntVec operator*(const IntVec& v) const {
    IntVec r(rows_, 0);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  RatVec operator*(const RatVec& v) const {
    RatVec r(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[i] = r[i] + Rat((*this)(i, j)) * v[j];
    return r;
  }

  const std::vector<std::int64_t>& data() const { return a_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> a_;
};

/// Solve M x = b over the rationals by fraction-free elimination.
/// Requires M square and invertible; throws otherwise.
inline RatVec solve_rational(const IntMat& m, const RatVec& b) {
  int n = m.rows();
  if (m.cols() != n || static_cast<int>(b.size()) != n)
    throw std::invalid_argument("solve_rational: shape mismatch");
  std::vector<RatVec> aug(n, RatVec(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = Rat(m(i, j));
    aug[i][n] = b[i];
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (aug[i][col].num != 0) { piv = i; break; }
    if (piv < 0) throw std::domain_error("solve_rational: singular matrix");
    std::swap(aug[col], aug[piv]);
    for (int i = 0; i < n; ++i) {
      if (i == col || aug[i][col].num == 0) continue;
      Rat f = aug[i][col] / aug[col][col];
      for (int j = col; j <= n; ++j) aug[i][j] = aug[i][j] - f * aug[col][j];
    }
  }
  RatVec x(n);
  for (int i = 0; i < n; ++i) x[i] = aug[i][n] / aug[i][i];
  return x;
}

struct SmithForm {
  IntMat u;      // unimodular, rows x rows
  IntMat u_inv;  // inverse of u
  IntMat s;      // u * m * v, diagonal with divisibility chain
  IntMat v;      // unimodular, cols x cols
};

/// Smith normal form over the integers: S = U M V with U, V unimodular and
/// S diagonal, s_1 | s_2 | ... Entry signs are normalized to s_i >= 0.
inline SmithForm smith_normal_form(const IntMat& m) {
  int rows = m.rows(), cols = m.cols();
  SmithForm f{IntMat::identity(rows), IntMat::identity(rows), m, IntMat::identity(cols)};
  IntMat& s = f.s;

  auto swap_rows = [&](int i, int j) {
    for (int c = 0; c < cols; ++c) std::swap(s(i, c), s(j, c));
    for (int c = 0; c < rows; ++c) std::swap(f.u(i, c), f.u(j, c));
    for (int r = 0; r < rows; ++r) std::swap(f.u_inv(r, i), f.u_inv(r, j));
  };
  auto swap_cols = [&](int i, int j) {
    for (int r = 0; r < rows; ++r) std::swap(s(r, i), s(r, j));
    for (int r = 0; r < cols; ++r) std::swap(f.v(r, i), f.v(r, j));
  };
  // row[i] += k * row[j]; u_inv gets the inverse column operation
  auto add_row = [&](int i, int j, std::int64_t k) {
    for (int c = 0; c < cols; ++c) s(i, c) += k * s(j, c);
    for (int c = 0; c < rows; ++c) f.u(i, c) += k * f.u(j, c);
    for (int r = 0; r < rows; ++r) f.u_inv(r, j) -= k * f.u_inv(r, i);
  };
  auto add_col = [&](int i, int j, std::int64_t k) {
    for (int r = 0; r < rows; ++r) s(r, i) += k * s(r, j);
    for (int r = 0; r < cols; ++r) f.v(r, i) += k * f.v(r, j);
  };
  auto negate_row = [&](int i) {
    for (int c = 0; c < cols; ++c) s(i, c) = -s(i, c);
    for (int c = 0; c < rows; ++c) f.u(i, c) = -f.u(i, c);
    for (int r = 0; r < rows; ++r) f.u_inv(r, i) = -f.u_inv(r, i);
  };

  int n = std::min(rows, cols);
  auto diagonalize = [&]() {
    for (int t = 0; t < n; ++t) {
      while (true) {
        // nonzero pivot of least magnitude in the trailing block
        int pi = -1, pj = -1;
        std::int64_t best = 0;
        for (int i = t; i < rows; ++i)
          for (int j = t; j < cols; ++j) {
            std::int64_t v = s(i, j) < 0 ? -s(i, j) : s(i, j);
            if (v != 0 && (best == 0 || v < best)) { best = v; pi = i; pj = j; }
          }
        if (pi < 0) return;  // trailing block is zero
        if (pi != t) swap_rows(t, pi);
        if (pj != t) swap_cols(t, pj);
        if (s(t, t) < 0) negate_row(t);
        bool clean = true;
        for (int i = t + 1; i < rows; ++i) {
          std::int64_t q = s(i, t) / s(t, t);
          if (q != 0) add_row(i, t, -q);
          if (s(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < cols; ++j) {
          std::int64_t q = s(t, j) / s(t, t);
          if (q != 0) add_col(j, t, -q);
          if (s(t, j) != 0) clean = false;
        }
        if (clean) break;
      }
    }
  };
  diagonalize();
  // enforce the divisibility chain: fold column t+1 into column t, then
  // rediagonalize the 2x2 block, replacing (a, b) by (gcd, lcm); the diagonal
  // decreases lexicographically, so this terminates
  while (true) {
    int bad = -1;
    for (int t = 0; t + 1 < n; ++t) {
      std::int64_t a = s(t, t), b = s(t + 1, t + 1);
      if (a != 0 && b % a != 0) { bad = t; break; }
    }
    if (bad < 0) break;
    int t = bad;
    add_col(t, t + 1, 1);
    while (s(t + 1, t) != 0 || s(t, t + 1) != 0) {
      if (s(t, t) == 0 || (s(t + 1, t + 1) != 0 &&
          std::abs(s(t + 1, t + 1)) < std::abs(s(t, t)))) {
        swap_rows(t, t + 1);
        swap_cols(t, t + 1);
      }
      if (s(t + 1, t) != 0) {
        std::int64_t q = s(t + 1, t) / s(t, t);
        add_row(t + 1, t, -q);
        if (s(t + 1, t) != 0) swap_rows(t, t + 1);
      } else {
        std::int64_t q = s(t, t + 1) / s(t, t);
        add_col(t + 1, t, -q);
        if (s(t, t + 1) != 0) swap_cols(t, t + 1);
      }
    }
    if (s(t, t) < 0) negate_row(t);
    if (s(t + 1, t + 1) < 0) negate_row(t + 1);
  }
  return f;
}

/// Finitely generated abelian quotient Z^dim / <columns of rel>, presented by
/// Smith normal form. Coordinates keep one slot per nontrivial cyclic factor
/// (modulus > 1) and one per free factor (modulus 0).
class AbelianQuotient {
 public:
  AbelianQuotient() = default;

  AbelianQuotient(int dim, const std::vector<IntVec>& relations) : dim_(dim) {
    IntMat rel(dim, static_cast<int>(relations.size()));
    for (int j = 0; j < rel.cols(); ++j)
      for (int i = 0; i < dim; ++i) rel(i, j) = relations[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    SmithForm f = smith_normal_form(rel);
    u_ = f.u;
    u_inv_ = f.u_inv;
    int n = std::min(rel.rows(), rel.cols());
    for (int i = 0; i < dim; ++i) {
      std::int64_t d = i < n ? f.s(i, i) : 0;
      if (d == 1) continue;  // trivial factor
      slots_.push_back(i);
      moduli_.push_back(d);
    }
  }

  int dim() const { return dim_; }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }

  bool is_trivial() const { return moduli_.empty(); }
  bool is_finite() const {
    for (std::int64_t m : moduli_) if (m == 0) return false;
    return true;
  }

  std::int64_t order() const {
    std::int64_t n = 1;
    for (std::int64_t m : moduli_) {
      if (m == 0) throw std::domain_error("AbelianQuotient: infinite group has no order");
      n *= m;
    }
    return n;
  }

  IntVec project(const IntVec& lambda) const {
    if (static_cast<int>(lambda.size()) != dim_)
      throw std::invalid_argument("AbelianQuotient: dimension mismatch");
    IntVec y = u_ * lambda;
    IntVec c(slots_.size());
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      std::int64_t v = y[static_cast<std::size_t>(slots_[k])];
      std::int64_t m = moduli_[k];
      c[k] = m == 0 ? v : ((v % m) + m) % m;
    }
    return c;
  }

  /// A lattice vector projecting to the given coordinates.
  IntVec lift(const IntVec& coords) const {
    if (coords.size() != slots_.size())
      throw std::invalid_argument("AbelianQuotient: coordinate count mismatch");
    IntVec y(dim_, 0);
    for (std::size_t k = 0; k < slots_.size(); ++k) y[static_cast<std::size_t>(slots_[k])] = coords[k];
    return u_inv_ * y;
  }

  /// All coordinate tuples of the torsion subgroup (free slots pinned to 0).
  std::vector<IntVec> torsion_elements() const {
    std::vector<IntVec> out;
    IntVec cur(slots_.size(), 0);
    enumerate(0, cur, out);
    return out;
  }

 private:
  void enumerate(std::size_t k, IntVec& cur, std::vector<IntVec>& out) const {
    if (k == slots_.size()) { out.push_back(cur); return; }
    std::int64_t m = moduli_[k];
    if (m == 0) { cur[k] = 0; enumerate(k + 1, cur, out); return; }
    for (std::int64_t v = 0; v < m; ++v) { cur[k] = v; enumerate(k + 1, cur, out); }
  }

  int dim_ = 0;
  IntMat u_, u_inv_;
  std::vector<int> slots_;
  std::vector<std::int64_t> moduli_;
};

}  // namespace affweyl

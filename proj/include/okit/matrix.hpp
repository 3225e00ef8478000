#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "okit/rational.hpp"

namespace okit {

/// Sparse exact-rational matrix, stored by columns (row index sorted).
class RatMatrix {
 public:
  using Entry = std::pair<int, Rat>;

  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {
    assert(rows >= 0 && cols >= 0);
  }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.col_[i].emplace_back(i, 1);
    return m;
  }

  static RatMatrix from_dense(const std::vector<RatVec>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    RatMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (!is_zero(rows[i][j])) m.col_[j].emplace_back(i, rows[i][j]);
    return m;
  }

  static RatMatrix from_columns(int rows, const std::vector<RatVec>& cols) {
    RatMatrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols_; ++j) {
      assert(static_cast<int>(cols[j].size()) == rows);
      for (int i = 0; i < rows; ++i)
        if (!is_zero(cols[j][i])) m.col_[j].emplace_back(i, cols[j][i]);
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const std::vector<Entry>& column(int j) const { return col_[j]; }

  Rat get(int i, int j) const {
    for (const auto& [r, v] : col_[j])
      if (r == i) return v;
    return Rat(0);
  }

  void set(int i, int j, const Rat& v) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    auto& c = col_[j];
    auto it = std::lower_bound(c.begin(), c.end(), i,
                               [](const Entry& e, int r) { return e.first < r; });
    if (it != c.end() && it->first == i) {
      if (is_zero(v))
        c.erase(it);
      else
        it->second = v;
    } else if (!is_zero(v)) {
      c.insert(it, {i, v});
    }
  }

  RatVec column_vec(int j) const {
    RatVec v(rows_, Rat(0));
    for (const auto& [r, x] : col_[j]) v[r] = x;
    return v;
  }

  void set_column(int j, const RatVec& v) {
    col_[j].clear();
    for (int i = 0; i < rows_; ++i)
      if (!is_zero(v[i])) col_[j].emplace_back(i, v[i]);
  }

  bool is_zero_matrix() const {
    for (const auto& c : col_)
      if (!c.empty()) return false;
    return true;
  }

  int nnz() const {
    int n = 0;
    for (const auto& c : col_) n += static_cast<int>(c.size());
    return n;
  }

  RatVec apply(const RatVec& x) const {
    assert(static_cast<int>(x.size()) == cols_);
    RatVec y(rows_, Rat(0));
    for (int j = 0; j < cols_; ++j) {
      if (is_zero(x[j])) continue;
      for (const auto& [r, v] : col_[j]) y[r] += v * x[j];
    }
    return y;
  }

  RatMatrix operator*(const RatMatrix& o) const {
    assert(cols_ == o.rows_);
    RatMatrix out(rows_, o.cols_);
    RatVec acc(rows_, Rat(0));
    std::vector<int> touched;
    for (int j = 0; j < o.cols_; ++j) {
      touched.clear();
      for (const auto& [k, v] : o.col_[j]) {
        for (const auto& [r, w] : col_[k]) {
          if (is_zero(acc[r])) touched.push_back(r);
          acc[r] += w * v;
        }
      }
      std::sort(touched.begin(), touched.end());
      for (int r : touched) {
        if (!is_zero(acc[r])) out.col_[j].emplace_back(r, acc[r]);
        acc[r] = 0;
      }
    }
    return out;
  }

  RatMatrix operator+(const RatMatrix& o) const { return axpy(o, Rat(1)); }
  RatMatrix operator-(const RatMatrix& o) const { return axpy(o, Rat(-1)); }

  RatMatrix operator*(const Rat& s) const {
    RatMatrix out(rows_, cols_);
    if (is_zero(s)) return out;
    for (int j = 0; j < cols_; ++j)
      for (const auto& [r, v] : col_[j]) out.col_[j].emplace_back(r, v * s);
    return out;
  }

  RatMatrix transpose() const {
    RatMatrix out(cols_, rows_);
    for (int j = 0; j < cols_; ++j)
      for (const auto& [r, v] : col_[j]) out.col_[r].emplace_back(j, v);
    return out;
  }

  /// Horizontal concatenation [this | o].
  RatMatrix hcat(const RatMatrix& o) const {
    assert(rows_ == o.rows_);
    RatMatrix out(rows_, cols_ + o.cols_);
    for (int j = 0; j < cols_; ++j) out.col_[j] = col_[j];
    for (int j = 0; j < o.cols_; ++j) out.col_[cols_ + j] = o.col_[j];
    return out;
  }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && col_ == o.col_;
  }

  std::vector<RatVec> to_dense_rows() const {
    std::vector<RatVec> d(rows_, RatVec(cols_, Rat(0)));
    for (int j = 0; j < cols_; ++j)
      for (const auto& [r, v] : col_[j]) d[r][j] = v;
    return d;
  }

 private:
  RatMatrix axpy(const RatMatrix& o, const Rat& s) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    RatMatrix out(rows_, cols_);
    for (int j = 0; j < cols_; ++j) {
      auto a = col_[j].begin(), ae = col_[j].end();
      auto b = o.col_[j].begin(), be = o.col_[j].end();
      while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
          out.col_[j].push_back(*a++);
        } else if (a == ae || b->first < a->first) {
          Rat v = b->second * s;
          if (!is_zero(v)) out.col_[j].emplace_back(b->first, v);
          ++b;
        } else {
          Rat v = a->second + b->second * s;
          if (!is_zero(v)) out.col_[j].emplace_back(a->first, v);
          ++a;
          ++b;
        }
      }
    }
    return out;
  }

  int rows_, cols_;
  std::vector<std::vector<Entry>> col_;
};

/// Row-reduce a dense matrix in place; returns pivot columns.
inline std::vector<int> rref_inplace(std::vector<RatVec>& a) {
  std::vector<int> pivots;
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(a[i][c])) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    Rat inv = Rat(1) / a[r][c];
    for (int j = c; j < cols; ++j) a[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(a[i][c])) continue;
      Rat f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(const RatMatrix& m) {
  auto d = m.to_dense_rows();
  return static_cast<int>(rref_inplace(d).size());
}

/// Basis of the null space, returned as matrix columns.
inline RatMatrix kernel(const RatMatrix& m) {
  auto d = m.to_dense_rows();
  auto pivots = rref_inplace(d);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    RatVec v(m.cols(), Rat(0));
    v[c] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -d[i][c];
    basis.push_back(std::move(v));
  }
  return RatMatrix::from_columns(m.cols(), basis);
}

/// Solve m x = b; nullopt when inconsistent.
inline std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b) {
  assert(static_cast<int>(b.size()) == m.rows());
  auto d = m.to_dense_rows();
  for (int i = 0; i < m.rows(); ++i) d[i].push_back(b[i]);
  auto pivots = rref_inplace(d);
  RatVec x(m.cols(), Rat(0));
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return std::nullopt;  // pivot in RHS column
    x[pivots[i]] = d[i][m.cols()];
  }
  return x;
}

/// Solve m X = b columnwise; nullopt when any column is inconsistent.
inline std::optional<RatMatrix> solve_matrix(const RatMatrix& m, const RatMatrix& b) {
  assert(b.rows() == m.rows());
  auto d = m.to_dense_rows();
  auto bd = b.to_dense_rows();
  for (int i = 0; i < m.rows(); ++i)
    d[i].insert(d[i].end(), bd[i].begin(), bd[i].end());
  auto pivots = rref_inplace(d);
  RatMatrix x(m.cols(), b.cols());
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= m.cols()) return std::nullopt;
    for (int j = 0; j < b.cols(); ++j)
      x.set(pivots[i], j, d[i][m.cols() + j]);
  }
  return x;
}

/// Basis of linearly independent vectors of a common ambient dimension,
/// stored as the columns of `basis`.
struct SubspaceBasis {
  int ambient = 0;
  RatMatrix basis;  // ambient x dim

  SubspaceBasis() = default;
  explicit SubspaceBasis(int ambient_dim)
      : ambient(ambient_dim), basis(ambient_dim, 0) {}
  SubspaceBasis(int ambient_dim, RatMatrix b)
      : ambient(ambient_dim), basis(std::move(b)) {
    assert(basis.rows() == ambient);
  }

  int dim() const { return basis.cols(); }
  bool contains(const RatVec& v) const { return solve(basis, v).has_value(); }
};

/// Incrementally maintained reduced basis; add() reports dependency
/// coefficients in terms of the previously accepted vectors.
class IncrementalBasis {
 public:
  explicit IncrementalBasis(int ambient) : ambient_(ambient) {}

  int dim() const { return static_cast<int>(accepted_.size()); }
  int ambient() const { return ambient_; }

  /// Returns nullopt if v was independent (and is now part of the basis);
  /// otherwise the coefficients expressing v over the accepted vectors.
  std::optional<RatVec> add(const RatVec& v) {
    assert(static_cast<int>(v.size()) == ambient_);
    RatVec w = v;
    RatVec coeff(accepted_.size(), Rat(0));
    for (size_t k = 0; k < reduced_.size(); ++k) {
      const Rat& x = w[pivot_[k]];
      if (is_zero(x)) continue;
      Rat f = x;  // reduced_ rows are pivot-normalized
      for (int j = 0; j < ambient_; ++j) w[j] -= f * reduced_[k][j];
      for (size_t j = 0; j < accepted_.size(); ++j) coeff[j] += f * combo_[k][j];
    }
    int p = -1;
    for (int j = 0; j < ambient_; ++j)
      if (!is_zero(w[j])) {
        p = j;
        break;
      }
    if (p < 0) return coeff;
    Rat inv = Rat(1) / w[p];
    for (int j = 0; j < ambient_; ++j) w[j] *= inv;
    RatVec cmb(accepted_.size() + 1, Rat(0));
    for (size_t j = 0; j < accepted_.size(); ++j) cmb[j] = -coeff[j] * inv;
    cmb.back() = inv;
    for (auto& c : combo_) c.push_back(Rat(0));
    accepted_.push_back(v);
    reduced_.push_back(std::move(w));
    combo_.push_back(std::move(cmb));
    pivot_.push_back(p);
    return std::nullopt;
  }

  bool contains(const RatVec& v) const {
    RatVec w = v;
    for (size_t k = 0; k < reduced_.size(); ++k) {
      const Rat& x = w[pivot_[k]];
      if (is_zero(x)) continue;
      Rat f = x;
      for (int j = 0; j < ambient_; ++j) w[j] -= f * reduced_[k][j];
    }
    for (const auto& x : w)
      if (!is_zero(x)) return false;
    return true;
  }

  const std::vector<RatVec>& vectors() const { return accepted_; }

  SubspaceBasis to_subspace() const {
    return SubspaceBasis(ambient_, RatMatrix::from_columns(ambient_, accepted_));
  }

 private:
  int ambient_;
  std::vector<RatVec> accepted_;  // original vectors
  std::vector<RatVec> reduced_;   // row-reduced shadow, pivot-normalized
  std::vector<RatVec> combo_;     // reduced_[k] = sum combo_[k][j] * accepted_[j]
  std::vector<int> pivot_;
};

}  // namespace okit

#ifndef YBL_MATRIX_HPP
#define YBL_MATRIX_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "ybl/ratfunc.hpp"

namespace ybl {

/*
  Dense matrix over the rational-function field. det and solve go through
  Bareiss fraction-free elimination on a denominator-cleared polynomial
  matrix, which keeps intermediate entries divisible and avoids the
  coefficient blowup of naive elimination over the field.
*/
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(RegistryPtr reg, int rows, int cols)
      : reg_(std::move(reg)), rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), RatFunc(reg_)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("FieldMatrix: negative shape");
  }

  static FieldMatrix identity(const RegistryPtr& reg, int n) {
    FieldMatrix m(reg, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = RatFunc::constant(reg, Rat(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const RegistryPtr& registry() const { return reg_; }

  RatFunc& at(int r, int c) {
    bounds(r, c);
    return a_[static_cast<size_t>(r) * cols_ + c];
  }
  const RatFunc& at(int r, int c) const {
    bounds(r, c);
    return a_[static_cast<size_t>(r) * cols_ + c];
  }

  bool is_zero() const {
    for (auto& e : a_)
      if (!e.is_zero()) return false;
    return true;
  }

  FieldMatrix operator-() const {
    FieldMatrix r = *this;
    for (auto& e : r.a_) e = -e;
    return r;
  }

  friend FieldMatrix operator+(const FieldMatrix& x, const FieldMatrix& y) {
    x.same_shape(y);
    FieldMatrix r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
    return r;
  }
  friend FieldMatrix operator-(const FieldMatrix& x, const FieldMatrix& y) {
    x.same_shape(y);
    FieldMatrix r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
    return r;
  }

  friend FieldMatrix operator*(const FieldMatrix& x, const FieldMatrix& y) {
    check_same_registry(x.reg_, y.reg_);
    if (x.cols_ != y.rows_) throw std::invalid_argument("FieldMatrix: shape mismatch in mul");
    FieldMatrix r(x.reg_, x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const RatFunc& xik = x.at(i, k);
        if (xik.is_zero()) continue;
        for (int j = 0; j < y.cols_; ++j) {
          const RatFunc& ykj = y.at(k, j);
          if (ykj.is_zero()) continue;
          r.at(i, j) += xik * ykj;
        }
      }
    return r;
  }

  friend FieldMatrix operator*(const RatFunc& c, const FieldMatrix& x) {
    FieldMatrix r = x;
    for (auto& e : r.a_) e *= c;
    return r;
  }

  FieldMatrix& operator+=(const FieldMatrix& o) { return *this = *this + o; }
  FieldMatrix& operator-=(const FieldMatrix& o) { return *this = *this - o; }

  bool operator==(const FieldMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const FieldMatrix& o) const { return !(*this == o); }

  FieldMatrix transpose() const {
    FieldMatrix r(reg_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  friend FieldMatrix commutator(const FieldMatrix& a, const FieldMatrix& b) {
    return a * b - b * a;
  }

  RatFunc det() const {
    if (rows_ != cols_) throw std::invalid_argument("FieldMatrix::det: not square");
    if (rows_ == 0) return RatFunc::constant(reg_, Rat(1));
    auto [mat, denom] = cleared();
    MultiPoly d = bareiss_det(mat);
    return RatFunc(std::move(d), std::move(denom));
  }

  // Solves A X = B for square invertible A.
  FieldMatrix solve(const FieldMatrix& b) const {
    if (rows_ != cols_) throw std::invalid_argument("FieldMatrix::solve: not square");
    check_same_registry(reg_, b.reg_);
    if (b.rows_ != rows_) throw std::invalid_argument("FieldMatrix::solve: rhs shape");
    const int n = rows_, m = b.cols_;
    // Gaussian elimination over the field with partial pivoting on
    // structurally simplest nonzero entries.
    std::vector<std::vector<RatFunc>> w(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      w[i].reserve(static_cast<size_t>(n + m));
      for (int j = 0; j < n; ++j) w[i].push_back(at(i, j));
      for (int j = 0; j < m; ++j) w[i].push_back(b.at(i, j));
    }
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (!w[r][c].is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) throw std::domain_error("FieldMatrix::solve: singular matrix");
      std::swap(w[c], w[piv]);
      RatFunc inv = w[c][c].inverse();
      for (int j = c; j < n + m; ++j) w[c][j] *= inv;
      for (int r = 0; r < n; ++r) {
        if (r == c || w[r][c].is_zero()) continue;
        RatFunc f = w[r][c];
        for (int j = c; j < n + m; ++j) w[r][j] -= f * w[c][j];
      }
    }
    FieldMatrix x(reg_, n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) x.at(i, j) = w[i][n + j];
    return x;
  }

  FieldMatrix inverse() const { return solve(identity(reg_, rows_)); }

  int rank() const {
    std::vector<std::vector<RatFunc>> w(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) w[i].push_back(at(i, j));
    int rank = 0;
    for (int c = 0; c < cols_ && rank < rows_; ++c) {
      int piv = -1;
      for (int r = rank; r < rows_; ++r)
        if (!w[r][c].is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(w[rank], w[piv]);
      RatFunc inv = w[rank][c].inverse();
      for (int j = c; j < cols_; ++j) w[rank][j] *= inv;
      for (int r = 0; r < rows_; ++r) {
        if (r == rank || w[r][c].is_zero()) continue;
        RatFunc f = w[r][c];
        for (int j = c; j < cols_; ++j) w[r][j] -= f * w[rank][j];
      }
      ++rank;
    }
    return rank;
  }

  // Entrywise operations used all over the higher modules.
  FieldMatrix map(const std::function<RatFunc(const RatFunc&)>& f) const {
    FieldMatrix r(reg_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(i, j) = f(at(i, j));
    return r;
  }

 private:
  void bounds(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw std::out_of_range("FieldMatrix: index out of range");
  }
  void same_shape(const FieldMatrix& o) const {
    check_same_registry(reg_, o.reg_);
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("FieldMatrix: shape mismatch");
  }

  // Clears denominators row by row; returns polynomial matrix and the
  // product of the row multipliers.
  std::pair<std::vector<std::vector<MultiPoly>>, MultiPoly> cleared() const {
    std::vector<std::vector<MultiPoly>> mat(static_cast<size_t>(rows_));
    MultiPoly denom = MultiPoly::constant(reg_, Rat(1));
    for (int i = 0; i < rows_; ++i) {
      MultiPoly rowden = MultiPoly::constant(reg_, Rat(1));
      for (int j = 0; j < cols_; ++j) rowden = poly_lcm(rowden, at(i, j).den());
      for (int j = 0; j < cols_; ++j)
        mat[i].push_back(at(i, j).num() * divexact(rowden, at(i, j).den()));
      denom *= rowden;
    }
    return {std::move(mat), std::move(denom)};
  }

  static MultiPoly bareiss_det(std::vector<std::vector<MultiPoly>>& m) {
    const int n = static_cast<int>(m.size());
    const RegistryPtr reg = m[0][0].registry();
    MultiPoly prev = MultiPoly::constant(reg, Rat(1));
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
      if (m[k][k].is_zero()) {
        int piv = -1;
        for (int r = k + 1; r < n; ++r)
          if (!m[r][k].is_zero()) {
            piv = r;
            break;
          }
        if (piv < 0) return MultiPoly(reg);  // det = 0
        std::swap(m[k], m[piv]);
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j)
          m[i][j] = divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      prev = m[k][k];
    }
    MultiPoly d = m[n - 1][n - 1];
    if (sign < 0) d = -d;
    return d;
  }

  RegistryPtr reg_;
  int rows_ = 0, cols_ = 0;
  std::vector<RatFunc> a_;
};

}  // namespace ybl

#endif

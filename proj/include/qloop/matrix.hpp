#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qloop/coeffs.hpp"

namespace qloop {

using Vec = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * size_t(cols)) {}
  static Matrix identity(int n);
  static Matrix diag(const Vec& d);
  static Matrix unit(int n, int i, int j, const Scalar& v = Scalar(1));

  int rows() const { return r_; }
  int cols() const { return c_; }
  const Scalar& operator()(int i, int j) const { return a_[size_t(i) * size_t(c_) + size_t(j)]; }
  Scalar& operator()(int i, int j) { return a_[size_t(i) * size_t(c_) + size_t(j)]; }
  const Vec& data() const { return a_; }

  bool is_zero() const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Scalar& s) const;
  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
  Matrix& operator-=(const Matrix& o) { return *this = *this - o; }
  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  Vec apply(const Vec& v) const;
  Matrix transpose() const;
  Scalar trace() const;
  Scalar supertrace(const std::vector<int>& parity) const;
  Matrix subs(int v, const Scalar& value) const;
  // Index of the first nonzero entry, or -1.
  long first_nonzero() const;
  std::string str() const;

 private:
  int r_ = 0, c_ = 0;
  Vec a_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& m);  // throws if singular

// Reduced row echelon space for incremental rank and membership checks.
class RowSpace {
 public:
  explicit RowSpace(size_t dim) : dim_(dim) {}
  // Reduces v against the basis; returns the residue.
  Vec reduce(Vec v) const;
  // Adds v; returns true if it increased the rank.
  bool add(const Vec& v);
  bool contains(const Vec& v) const;
  size_t rank() const { return rows_.size(); }
  size_t dim() const { return dim_; }

 private:
  size_t dim_;
  std::map<size_t, Vec> rows_;  // pivot -> row with 1 at pivot, zeros at other pivots
};

size_t rank_of(const std::vector<Vec>& vs);
// Basis of {x : A x = 0}.
std::vector<Vec> nullspace(const Matrix& a);
// Some solution of A x = b, if consistent.
std::optional<Vec> solve(const Matrix& a, const Vec& b);
// Determinant by fraction-aware elimination.
Scalar det(const Matrix& a);
// det(z I - A) by the division-free Berkowitz algorithm.
ZPoly charpoly(const Matrix& a);

}  // namespace qloop

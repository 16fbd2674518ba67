#include "qloop/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace qloop {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diag(const Vec& d) {
  Matrix m(int(d.size()), int(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(int(i), int(i)) = d[i];
  return m;
}

Matrix Matrix::unit(int n, int i, int j, const Scalar& v) {
  Matrix m(n, n);
  m(i, j) = v;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
  Matrix m = *this;
  for (size_t k = 0; k < a_.size(); ++k)
    if (!o.a_[k].is_zero()) m.a_[k] += o.a_[k];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
  Matrix m = *this;
  for (size_t k = 0; k < a_.size(); ++k)
    if (!o.a_[k].is_zero()) m.a_[k] -= o.a_[k];
  return m;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.a_) x = -x;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix shape mismatch");
  Matrix m(r_, o.c_);
  std::vector<std::vector<int>> nz(size_t(o.r_));
  for (int k = 0; k < o.r_; ++k)
    for (int j = 0; j < o.c_; ++j)
      if (!o(k, j).is_zero()) nz[size_t(k)].push_back(j);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Scalar& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (int j : nz[size_t(k)]) m(i, j) += x * o(k, j);
    }
  return m;
}

Matrix Matrix::operator*(const Scalar& s) const {
  if (s.is_zero()) return Matrix(r_, c_);
  Matrix m = *this;
  if (s.is_one()) return m;
  for (auto& x : m.a_)
    if (!x.is_zero()) x *= s;
  return m;
}

Vec Matrix::apply(const Vec& v) const {
  Vec r(static_cast<size_t>(r_));
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (!(*this)(i, j).is_zero() && !v[size_t(j)].is_zero()) r[size_t(i)] += (*this)(i, j) * v[size_t(j)];
  return r;
}

Matrix Matrix::transpose() const {
  Matrix m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Scalar Matrix::trace() const {
  Scalar t;
  for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
  return t;
}

Scalar Matrix::supertrace(const std::vector<int>& parity) const {
  Scalar t;
  for (int i = 0; i < std::min(r_, c_); ++i) t += parity[size_t(i)] ? -(*this)(i, i) : (*this)(i, i);
  return t;
}

Matrix Matrix::subs(int v, const Scalar& value) const {
  Matrix m = *this;
  for (auto& x : m.a_) x = x.subs(v, value);
  return m;
}

long Matrix::first_nonzero() const {
  for (size_t k = 0; k < a_.size(); ++k)
    if (!a_[k].is_zero()) return long(k);
  return -1;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < r_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
  }
  os << "]";
  return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Scalar& x = a(i, j);
      if (x.is_zero()) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) m(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return m;
}

// ---------------------------------------------------------------- RowSpace

Vec RowSpace::reduce(Vec v) const {
  for (const auto& [p, row] : rows_) {
    if (v[p].is_zero()) continue;
    Scalar f = v[p];
    for (size_t k = 0; k < dim_; ++k)
      if (!row[k].is_zero()) v[k] -= f * row[k];
  }
  return v;
}

bool RowSpace::add(const Vec& v0) {
  Vec v = reduce(v0);
  size_t p = 0;
  while (p < dim_ && v[p].is_zero()) ++p;
  if (p == dim_) return false;
  Scalar ip = v[p].inv();
  for (auto& x : v)
    if (!x.is_zero()) x *= ip;
  // Keep the basis fully reduced so that reduce() is a single pass.
  for (auto& [q, row] : rows_) {
    if (row[p].is_zero()) continue;
    Scalar f = row[p];
    for (size_t k = 0; k < dim_; ++k)
      if (!v[k].is_zero()) row[k] -= f * v[k];
  }
  rows_.emplace(p, std::move(v));
  return true;
}

bool RowSpace::contains(const Vec& v) const {
  Vec r = reduce(v);
  for (const auto& x : r)
    if (!x.is_zero()) return false;
  return true;
}

size_t rank_of(const std::vector<Vec>& vs) {
  if (vs.empty()) return 0;
  RowSpace rs(vs[0].size());
  for (const auto& v : vs) rs.add(v);
  return rs.rank();
}

namespace {

// Row-reduce [A | extra columns]; returns pivot columns.
std::vector<int> rref(Matrix& m, int ncols) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < ncols && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Scalar ip = m(r, c).inv();
    for (int j = 0; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) *= ip;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (int j = 0; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

std::vector<Vec> nullspace(const Matrix& a) {
  Matrix m = a;
  std::vector<int> piv = rref(m, a.cols());
  std::vector<bool> is_piv(size_t(a.cols()), false);
  for (int c : piv) is_piv[size_t(c)] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_piv[size_t(f)]) continue;
    Vec v(size_t(a.cols()));
    v[size_t(f)] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[size_t(piv[r])] = -m(int(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  Matrix m(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    m(i, a.cols()) = b[size_t(i)];
  }
  std::vector<int> piv = rref(m, a.cols());
  for (int i = int(piv.size()); i < a.rows(); ++i)
    if (!m(i, a.cols()).is_zero()) return std::nullopt;
  Vec x(size_t(a.cols()));
  for (size_t r = 0; r < piv.size(); ++r) x[size_t(piv[r])] = m(int(r), a.cols());
  return x;
}

Matrix inverse(const Matrix& a) {
  int n = a.rows();
  Matrix m(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n + i) = 1;
  }
  std::vector<int> piv = rref(m, n);
  if (int(piv.size()) != n) throw std::domain_error("singular matrix");
  Matrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = m(i, n + j);
  return r;
}

Scalar det(const Matrix& a) {
  Matrix m = a;
  int n = m.rows();
  Scalar d(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return Scalar();
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    Scalar ip = m(c, c).inv();
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Scalar f = m(i, c) * ip;
      for (int j = c; j < n; ++j)
        if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

ZPoly charpoly(const Matrix& a) {
  // Berkowitz: the characteristic polynomial of the leading r x r block is
  // obtained from that of the (r-1) x (r-1) block by a Toeplitz product.
  int n = a.rows();
  std::vector<Scalar> c{Scalar(1)};  // coefficients, highest power first
  for (int r = 0; r < n; ++r) {
    // Partition the (r+1) x (r+1) leading block as [[A, R], [C, a_rr]].
    std::vector<Scalar> t;  // t_0 = 1, t_1 = -a_rr, t_{k+2} = -C A^k R
    t.push_back(Scalar(1));
    t.push_back(-a(r, r));
    Vec v(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) v[size_t(i)] = a(i, r);
    for (int k = 0; k < r; ++k) {
      Scalar s;
      for (int j = 0; j < r; ++j)
        if (!a(r, j).is_zero() && !v[size_t(j)].is_zero()) s += a(r, j) * v[size_t(j)];
      t.push_back(-s);
      Vec nv(static_cast<size_t>(r));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          if (!a(i, j).is_zero() && !v[size_t(j)].is_zero()) nv[size_t(i)] += a(i, j) * v[size_t(j)];
      v = std::move(nv);
    }
    std::vector<Scalar> nc(c.size() + 1);
    for (size_t i = 0; i < nc.size(); ++i)
      for (size_t j = 0; j <= i && j < c.size(); ++j)
        if (i - j < t.size()) nc[i] += t[i - j] * c[j];
    c = std::move(nc);
  }
  std::vector<Scalar> lowfirst(c.rbegin(), c.rend());
  return ZPoly(lowfirst);
}

}  // namespace qloop

#include "daff/exact/linalg.hpp"

#include <sstream>
#include <utility>

#include "daff/error.hpp"

namespace daff::exact {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": " << a << " vs " << b;
    throw DimMismatch(os.str());
  }
}

}  // namespace

Vec Vec::unit(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

Vec Vec::concat(const Vec& a, const Vec& b) {
  std::vector<Scalar> d(a.data_);
  d.insert(d.end(), b.data_.begin(), b.data_.end());
  return Vec(std::move(d));
}

bool Vec::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

Vec Vec::slice(std::size_t start, std::size_t len) const {
  if (start + len > size()) throw DimMismatch("slice out of range");
  return Vec(std::vector<Scalar>(data_.begin() + start, data_.begin() + start + len));
}

Vec& Vec::operator+=(const Vec& o) {
  require_same(size(), o.size(), "vector sum");
  for (std::size_t i = 0; i < size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  require_same(size(), o.size(), "vector difference");
  for (std::size_t i = 0; i < size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Vec& Vec::operator*=(const Scalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Scalar dot(const Vec& a, const Vec& b) {
  require_same(a.size(), b.size(), "dot product");
  Scalar r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

std::string to_string(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + "]";
}

Mat::Mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require_same(r.size(), cols_, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_same(rows[i].size(), cols, "matrix row");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols, std::size_t rows) {
  Mat m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require_same(cols[j].size(), rows, "matrix column");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Mat Mat::diag(const Vec& d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vec Mat::row(std::size_t i) const {
  return Vec(std::vector<Scalar>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_));
}

Vec Mat::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimMismatch("block out of range");
  Mat b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimMismatch("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Mat& Mat::operator+=(const Mat& o) {
  require_same(rows_, o.rows_, "matrix sum rows");
  require_same(cols_, o.cols_, "matrix sum cols");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  require_same(rows_, o.rows_, "matrix difference rows");
  require_same(cols_, o.cols_, "matrix difference cols");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Mat& Mat::operator*=(const Scalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
  require_same(a.cols_, b.rows_, "matrix product");
  Mat c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vec operator*(const Mat& a, const Vec& v) {
  require_same(a.cols_, v.size(), "matrix-vector product");
  Vec r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
  return r;
}

Vec operator*(const Vec& row, const Mat& m) { return m.transpose() * row; }

std::string to_string(const Mat& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ", ";
    s += to_string(m.row(i));
  }
  return s + "]";
}

Echelon rref(const Mat& m) {
  Echelon e{m, {}};
  Mat& r = e.reduced;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < r.cols() && lead < r.rows(); ++c) {
    std::size_t p = lead;
    while (p < r.rows() && sgn(r(p, c)) == 0) ++p;
    if (p == r.rows()) continue;
    if (p != lead)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(p, j), r(lead, j));
    Scalar inv = 1 / r(lead, c);
    for (std::size_t j = 0; j < r.cols(); ++j) r(lead, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == lead || sgn(r(i, c)) == 0) continue;
      Scalar f = r(i, c);
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) -= f * r(lead, j);
    }
    e.pivots.push_back(c);
    ++lead;
  }
  return e;
}

std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

Scalar det(const Mat& m) {
  require_same(m.rows(), m.cols(), "determinant of non-square matrix");
  Mat a = m;
  const std::size_t n = a.rows();
  Scalar d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      d = -d;
    }
    d *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Scalar f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return d;
}

Mat mat_inverse(const Mat& m) {
  require_same(m.rows(), m.cols(), "inverse of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Mat();
  Mat aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Mat::identity(n));
  Echelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
    throw SingularMatrix("determinant is zero");
  return e.reduced.block(0, n, n, n);
}

Mat nullspace(const Mat& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return Mat::from_cols(basis, m.cols());
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  require_same(m.rows(), b.size(), "linear system");
  Mat aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[i];
  Echelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

bool Bilinear::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

Mat Bilinear::fix_left(const Vec& y) const {
  require_same(y.size(), n1_, "bilinear left argument");
  Mat r(n3_, n2_);
  for (std::size_t u = 0; u < n3_; ++u)
    for (std::size_t i = 0; i < n1_; ++i)
      for (std::size_t b = 0; b < n2_; ++b) r(u, b) += (*this)(u, i, b) * y[i];
  return r;
}

Mat Bilinear::fix_right(const Vec& z) const {
  require_same(z.size(), n2_, "bilinear right argument");
  Mat r(n3_, n1_);
  for (std::size_t u = 0; u < n3_; ++u)
    for (std::size_t i = 0; i < n1_; ++i)
      for (std::size_t b = 0; b < n2_; ++b) r(u, i) += (*this)(u, i, b) * z[b];
  return r;
}

Vec bilinear_apply(const Bilinear& g, const Vec& u, const Vec& w) {
  return g.fix_left(u) * w;
}

}  // namespace daff::exact

#include "daff/exact/poly_matrix.hpp"

#include <unordered_map>

#include "daff/error.hpp"

namespace daff::exact {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DimMismatch(what);
}

std::size_t nvars_hint(const std::vector<Poly>& s) { return s.empty() ? 0 : s.front().nvars(); }

}  // namespace

PolyVec PolyVec::from_constant(const Vec& v, std::size_t nvars) {
  PolyVec r(v.size(), nvars);
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Poly::constant(nvars, v[i]);
  return r;
}

bool PolyVec::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

Vec PolyVec::eval(const Vec& x) const {
  Vec r(size());
  for (std::size_t i = 0; i < size(); ++i) r[i] = data_[i].eval(x);
  return r;
}

PolyVec PolyVec::subs(const std::vector<Poly>& s) const {
  PolyVec r(size(), nvars_hint(s));
  for (std::size_t i = 0; i < size(); ++i) r[i] = poly_compose(data_[i], s);
  return r;
}

PolyVec& PolyVec::operator+=(const PolyVec& o) {
  require_same(size(), o.size(), "polynomial vector sum");
  for (std::size_t i = 0; i < size(); ++i) data_[i] += o.data_[i];
  return *this;
}

PolyVec operator-(const PolyVec& a, const PolyVec& b) { return a + (-b); }

PolyVec operator-(const PolyVec& a) {
  PolyVec r = a;
  for (auto& p : r.data_) p = -p;
  return r;
}

PolyMat PolyMat::identity(std::size_t n, std::size_t nvars) {
  return from_constant(Mat::identity(n), nvars);
}

PolyMat PolyMat::from_constant(const Mat& m, std::size_t nvars) {
  PolyMat r(m.rows(), m.cols(), nvars);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Poly::constant(nvars, m(i, j));
  return r;
}

bool PolyMat::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

Mat PolyMat::eval(const Vec& x) const {
  Mat r(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j).eval(x);
  return r;
}

PolyMat PolyMat::subs(const std::vector<Poly>& s) const {
  PolyMat r(rows_, cols_, nvars_hint(s));
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = poly_compose(data_[k], s);
  return r;
}

PolyMat& PolyMat::operator+=(const PolyMat& o) {
  require_same(rows_, o.rows_, "polynomial matrix sum");
  require_same(cols_, o.cols_, "polynomial matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

PolyMat operator-(const PolyMat& a, const PolyMat& b) { return a + (-b); }

PolyMat operator-(const PolyMat& a) {
  PolyMat r = a;
  for (auto& p : r.data_) p = -p;
  return r;
}

PolyMat operator*(const PolyMat& a, const PolyMat& b) {
  require_same(a.cols_, b.rows_, "polynomial matrix product");
  std::size_t nv = a.nvars_;
  PolyMat c(a.rows_, b.cols_, nv);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Poly& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
    }
  return c;
}

PolyVec operator*(const PolyMat& a, const PolyVec& v) {
  require_same(a.cols_, v.size(), "polynomial matrix-vector product");
  std::size_t nv = a.nvars_;
  PolyVec r(a.rows_, nv);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (!a(i, j).is_zero() && !v[j].is_zero()) r[i] += a(i, j) * v[j];
  return r;
}

PolyBilinear PolyBilinear::from_constant(const Bilinear& g, std::size_t nvars) {
  PolyBilinear r(g.n3(), g.n1(), g.n2(), nvars);
  for (std::size_t u = 0; u < g.n3(); ++u)
    for (std::size_t i = 0; i < g.n1(); ++i)
      for (std::size_t b = 0; b < g.n2(); ++b) r(u, i, b) = Poly::constant(nvars, g(u, i, b));
  return r;
}

bool PolyBilinear::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

Bilinear PolyBilinear::eval(const Vec& x) const {
  Bilinear r(n3_, n1_, n2_);
  for (std::size_t u = 0; u < n3_; ++u)
    for (std::size_t i = 0; i < n1_; ++i)
      for (std::size_t b = 0; b < n2_; ++b) r(u, i, b) = (*this)(u, i, b).eval(x);
  return r;
}

PolyBilinear PolyBilinear::subs(const std::vector<Poly>& s) const {
  PolyBilinear r(n3_, n1_, n2_, nvars_hint(s));
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = poly_compose(data_[k], s);
  return r;
}

PolyMat PolyBilinear::fix_left(const PolyVec& y) const {
  require_same(y.size(), n1_, "bilinear left argument");
  std::size_t nv = nvars_;
  PolyMat r(n3_, n2_, nv);
  for (std::size_t u = 0; u < n3_; ++u)
    for (std::size_t i = 0; i < n1_; ++i)
      for (std::size_t b = 0; b < n2_; ++b)
        if (!(*this)(u, i, b).is_zero()) r(u, b) += (*this)(u, i, b) * y[i];
  return r;
}

PolyMat PolyBilinear::fix_right(const PolyVec& z) const {
  require_same(z.size(), n2_, "bilinear right argument");
  std::size_t nv = nvars_;
  PolyMat r(n3_, n1_, nv);
  for (std::size_t u = 0; u < n3_; ++u)
    for (std::size_t i = 0; i < n1_; ++i)
      for (std::size_t b = 0; b < n2_; ++b)
        if (!(*this)(u, i, b).is_zero()) r(u, i) += (*this)(u, i, b) * z[b];
  return r;
}

PolyBilinear PolyBilinear::pull(const PolyMat& a, const PolyMat& b) const {
  require_same(a.rows(), n1_, "bilinear pullback left");
  require_same(b.rows(), n2_, "bilinear pullback right");
  std::size_t nv = nvars_;
  // First contract the right slot, then the left one.
  PolyBilinear half(n3_, n1_, b.cols(), nv);
  for (std::size_t u = 0; u < n3_; ++u)
    for (std::size_t i = 0; i < n1_; ++i)
      for (std::size_t bp = 0; bp < n2_; ++bp) {
        const Poly& g = (*this)(u, i, bp);
        if (g.is_zero()) continue;
        for (std::size_t bb = 0; bb < b.cols(); ++bb)
          if (!b(bp, bb).is_zero()) half(u, i, bb) += g * b(bp, bb);
      }
  PolyBilinear r(n3_, a.cols(), b.cols(), nv);
  for (std::size_t u = 0; u < n3_; ++u)
    for (std::size_t ip = 0; ip < n1_; ++ip)
      for (std::size_t ii = 0; ii < a.cols(); ++ii) {
        if (a(ip, ii).is_zero()) continue;
        for (std::size_t bb = 0; bb < b.cols(); ++bb)
          if (!half(u, ip, bb).is_zero()) r(u, ii, bb) += a(ip, ii) * half(u, ip, bb);
      }
  return r;
}

PolyBilinear operator*(const PolyMat& s, const PolyBilinear& g) {
  require_same(s.cols(), g.n3_, "core map times bilinear");
  std::size_t nv = g.nvars_;
  PolyBilinear r(s.rows(), g.n1_, g.n2_, nv);
  for (std::size_t u = 0; u < s.rows(); ++u)
    for (std::size_t w = 0; w < g.n3_; ++w) {
      if (s(u, w).is_zero()) continue;
      for (std::size_t i = 0; i < g.n1_; ++i)
        for (std::size_t b = 0; b < g.n2_; ++b)
          if (!g(w, i, b).is_zero()) r(u, i, b) += s(u, w) * g(w, i, b);
    }
  return r;
}

PolyBilinear& PolyBilinear::operator+=(const PolyBilinear& o) {
  require_same(n3_, o.n3_, "bilinear sum");
  require_same(n1_, o.n1_, "bilinear sum");
  require_same(n2_, o.n2_, "bilinear sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

PolyBilinear operator-(const PolyBilinear& a) {
  PolyBilinear r = a;
  for (auto& p : r.data_) p = -p;
  return r;
}

Poly det(const PolyMat& m) {
  require_same(m.rows(), m.cols(), "determinant of non-square polynomial matrix");
  const std::size_t n = m.rows();
  std::size_t nv = m.nvars();
  if (n == 0) return Poly::constant(nv, 1);
  if (n > 20) throw DimMismatch("polynomial determinant too large");
  // Laplace expansion along rows, memoized on the set of used columns.
  std::unordered_map<unsigned long, Poly> memo;
  auto rec = [&](auto&& self, std::size_t row, unsigned long used) -> Poly {
    if (row == n) return Poly::constant(nv, 1);
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    Poly acc(nv);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (1ul << c)) continue;
      if (!m(row, c).is_zero()) {
        Poly t = m(row, c) * self(self, row + 1, used | (1ul << c));
        if (sign > 0) acc += t; else acc -= t;
      }
      sign = -sign;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return rec(rec, 0, 0);
}

PolyMat poly_inverse(const PolyMat& m) {
  require_same(m.rows(), m.cols(), "inverse of non-square polynomial matrix");
  const std::size_t n = m.rows();
  std::size_t nv = m.nvars();
  Poly d = det(m);
  if (!d.is_constant() || d.is_zero())
    throw SingularMatrix("polynomial determinant is not a nonzero constant");
  Scalar inv = 1 / d.constant_term();
  PolyMat r(n, n, nv);
  if (n == 1) {
    r(0, 0) = Poly::constant(nv, inv);
    return r;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyMat minor(n - 1, n - 1, nv);
      for (std::size_t a = 0, ra = 0; a < n; ++a) {
        if (a == j) continue;
        for (std::size_t b = 0, cb = 0; b < n; ++b) {
          if (b == i) continue;
          minor(ra, cb++) = m(a, b);
        }
        ++ra;
      }
      Scalar sign = ((i + j) % 2) ? Scalar(-inv) : inv;
      r(i, j) = sign * det(minor);
    }
  return r;
}

}  // namespace daff::exact

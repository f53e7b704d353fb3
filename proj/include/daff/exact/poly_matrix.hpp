#pragma once

#include <cstddef>
#include <vector>

#include "daff/exact/linalg.hpp"
#include "daff/exact/poly.hpp"

namespace daff::exact {

class PolyVec {
 public:
  PolyVec() = default;
  PolyVec(std::size_t n, std::size_t nvars) : nvars_(nvars), data_(n, Poly(nvars)) {}
  static PolyVec from_constant(const Vec& v, std::size_t nvars);

  std::size_t size() const { return data_.size(); }
  std::size_t nvars() const { return nvars_; }
  const Poly& operator[](std::size_t i) const { return data_[i]; }
  Poly& operator[](std::size_t i) { return data_[i]; }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  bool is_zero() const;
  Vec eval(const Vec& x) const;
  PolyVec subs(const std::vector<Poly>& s) const;

  PolyVec& operator+=(const PolyVec& o);
  friend PolyVec operator+(PolyVec a, const PolyVec& b) { return a += b; }
  friend PolyVec operator-(const PolyVec& a, const PolyVec& b);
  friend PolyVec operator-(const PolyVec& a);
  friend bool operator==(const PolyVec& a, const PolyVec& b) { return a.data_ == b.data_; }

 private:
  std::size_t nvars_ = 0;
  std::vector<Poly> data_;
};

class PolyMat {
 public:
  PolyMat() = default;
  PolyMat(std::size_t rows, std::size_t cols, std::size_t nvars)
      : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, Poly(nvars)) {}
  static PolyMat identity(std::size_t n, std::size_t nvars);
  static PolyMat from_constant(const Mat& m, std::size_t nvars);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  bool is_zero() const;
  Mat eval(const Vec& x) const;
  PolyMat subs(const std::vector<Poly>& s) const;

  PolyMat& operator+=(const PolyMat& o);
  friend PolyMat operator+(PolyMat a, const PolyMat& b) { return a += b; }
  friend PolyMat operator-(const PolyMat& a, const PolyMat& b);
  friend PolyMat operator-(const PolyMat& a);
  friend PolyMat operator*(const PolyMat& a, const PolyMat& b);
  friend PolyVec operator*(const PolyMat& a, const PolyVec& v);
  friend bool operator==(const PolyMat& a, const PolyMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, nvars_ = 0;
  std::vector<Poly> data_;
};

// Entries indexed (u, i, b) as for Bilinear.
class PolyBilinear {
 public:
  PolyBilinear() = default;
  PolyBilinear(std::size_t n3, std::size_t n1, std::size_t n2, std::size_t nvars)
      : n3_(n3), n1_(n1), n2_(n2), nvars_(nvars), data_(n3 * n1 * n2, Poly(nvars)) {}
  static PolyBilinear from_constant(const Bilinear& g, std::size_t nvars);

  std::size_t n3() const { return n3_; }
  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t nvars() const { return nvars_; }
  const Poly& operator()(std::size_t u, std::size_t i, std::size_t b) const {
    return data_[(u * n1_ + i) * n2_ + b];
  }
  Poly& operator()(std::size_t u, std::size_t i, std::size_t b) {
    return data_[(u * n1_ + i) * n2_ + b];
  }

  bool is_zero() const;
  Bilinear eval(const Vec& x) const;
  PolyBilinear subs(const std::vector<Poly>& s) const;

  // Gamma(y, .) for a polynomial vector y: an n3 x n2 matrix.
  PolyMat fix_left(const PolyVec& y) const;
  // Gamma(., z): an n3 x n1 matrix.
  PolyMat fix_right(const PolyVec& z) const;
  // (u, i, b) -> sum_{i', b'} G(u, i', b') A(i', i) B(b', b)
  PolyBilinear pull(const PolyMat& a, const PolyMat& b) const;
  // (u, i, b) -> sum_w S(u, w) G(w, i, b)
  friend PolyBilinear operator*(const PolyMat& s, const PolyBilinear& g);
  PolyBilinear& operator+=(const PolyBilinear& o);
  friend PolyBilinear operator+(PolyBilinear a, const PolyBilinear& b) { return a += b; }
  friend PolyBilinear operator-(const PolyBilinear& a);
  friend bool operator==(const PolyBilinear& a, const PolyBilinear& b) {
    return a.n3_ == b.n3_ && a.n1_ == b.n1_ && a.n2_ == b.n2_ && a.data_ == b.data_;
  }

 private:
  std::size_t n3_ = 0, n1_ = 0, n2_ = 0, nvars_ = 0;
  std::vector<Poly> data_;
};

Poly det(const PolyMat& m);
// Inverse over the polynomial ring; requires det(m) to be a nonzero constant.
PolyMat poly_inverse(const PolyMat& m);

}  // namespace daff::exact

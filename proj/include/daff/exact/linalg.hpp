#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "daff/exact/scalar.hpp"

namespace daff::exact {

class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n) : data_(n) {}
  Vec(std::initializer_list<Scalar> xs) : data_(xs) {}
  explicit Vec(std::vector<Scalar> xs) : data_(std::move(xs)) {}

  static Vec unit(std::size_t n, std::size_t i);
  static Vec concat(const Vec& a, const Vec& b);

  std::size_t size() const { return data_.size(); }
  const Scalar& operator[](std::size_t i) const { return data_[i]; }
  Scalar& operator[](std::size_t i) { return data_[i]; }
  const std::vector<Scalar>& data() const { return data_; }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  bool is_zero() const;
  Vec slice(std::size_t start, std::size_t len) const;

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(const Scalar& s);

  friend bool operator==(const Vec& a, const Vec& b) { return a.data_ == b.data_; }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(const Scalar& s, Vec a) { return a *= s; }
  friend Vec operator-(Vec a) { return a *= Scalar(-1); }

 private:
  std::vector<Scalar> data_;
};

Scalar dot(const Vec& a, const Vec& b);
std::string to_string(const Vec& v);

// Dense row-major matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Mat(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Mat identity(std::size_t n);
  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Mat from_cols(const std::vector<Vec>& cols, std::size_t rows);
  static Mat diag(const Vec& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  Mat transpose() const;
  bool is_zero() const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(const Scalar& s);

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const Scalar& s, Mat a) { return a *= s; }
  friend Mat operator-(Mat a) { return a *= Scalar(-1); }
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Vec operator*(const Mat& a, const Vec& v);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Vec operator*(const Vec& row, const Mat& m);  // row vector times matrix
std::string to_string(const Mat& m);

struct Echelon {
  Mat reduced;                       // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

Echelon rref(const Mat& m);
std::size_t rank(const Mat& m);
Scalar det(const Mat& m);
Mat mat_inverse(const Mat& m);
// Columns form a basis of {x : m x = 0}.
Mat nullspace(const Mat& m);
// Some x with m x = b, if one exists.
std::optional<Vec> solve(const Mat& m, const Vec& b);

// Bilinear map V1 x V2 -> V3, entries indexed (u, i, b).
class Bilinear {
 public:
  Bilinear() = default;
  Bilinear(std::size_t n3, std::size_t n1, std::size_t n2)
      : n3_(n3), n1_(n1), n2_(n2), data_(n3 * n1 * n2) {}

  std::size_t n3() const { return n3_; }
  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }

  const Scalar& operator()(std::size_t u, std::size_t i, std::size_t b) const {
    return data_[(u * n1_ + i) * n2_ + b];
  }
  Scalar& operator()(std::size_t u, std::size_t i, std::size_t b) {
    return data_[(u * n1_ + i) * n2_ + b];
  }

  bool is_zero() const;
  // Gamma(y, .) as an n3 x n2 matrix.
  Mat fix_left(const Vec& y) const;
  // Gamma(., z) as an n3 x n1 matrix.
  Mat fix_right(const Vec& z) const;

  friend bool operator==(const Bilinear& a, const Bilinear& b) {
    return a.n3_ == b.n3_ && a.n1_ == b.n1_ && a.n2_ == b.n2_ && a.data_ == b.data_;
  }

 private:
  std::size_t n3_ = 0, n1_ = 0, n2_ = 0;
  std::vector<Scalar> data_;
};

Vec bilinear_apply(const Bilinear& g, const Vec& u, const Vec& w);

}  // namespace daff::exact

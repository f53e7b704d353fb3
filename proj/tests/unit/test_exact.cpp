#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "daff/error.hpp"
#include "daff/exact/base_map.hpp"
#include "daff/exact/linalg.hpp"
#include "daff/exact/poly.hpp"
#include "daff/exact/poly_matrix.hpp"
#include "daff/verify/random.hpp"

using namespace daff::exact;
using daff::verify::Rng;

namespace {

// Leibniz determinant, independent of the elimination code.
Scalar leibniz_det(const Mat& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Scalar t = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) t *= m(i, perm[i]);
    total += t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Cramer's rule inverse.
Mat cramer_inverse(const Mat& m) {
  const std::size_t n = m.rows();
  Scalar d = leibniz_det(m);
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat minor(n - 1, n - 1);
      for (std::size_t a = 0, r = 0; a < n; ++a) {
        if (a == j) continue;
        for (std::size_t b = 0, c = 0; b < n; ++b) {
          if (b == i) continue;
          minor(r, c++) = m(a, b);
        }
        ++r;
      }
      inv(i, j) = ((i + j) % 2 ? -1 : 1) * leibniz_det(minor) / d;
    }
  return inv;
}

}  // namespace

TEST_SUITE("exact") {

TEST_CASE("scalar literals are canonical") {
  CHECK(to_string(parse_scalar("6/4")) == "3/2");
  CHECK(to_string(parse_scalar("-10/5")) == "-2");
  CHECK(to_string(parse_scalar("0/7")) == "0");
  CHECK_THROWS(parse_scalar("3/-4"));
  CHECK_THROWS(parse_scalar("1/0"));
  CHECK_THROWS(parse_scalar("abc"));
  Scalar a = parse_scalar("7/3"), b = parse_scalar("-5/11");
  CHECK((a + b) - b == a);
  CHECK(((a * b) / b) == a);
}

TEST_CASE("mat_inverse trivial cases") {
  CHECK(mat_inverse(Mat::identity(3)) == Mat::identity(3));
  Mat d{{2, 0}, {0, Scalar(1, 2)}};
  Mat expected{{Scalar(1, 2), 0}, {0, 2}};
  CHECK(mat_inverse(d) == expected);
  CHECK_THROWS_AS(mat_inverse(Mat{{1, 2}, {2, 4}}), daff::SingularMatrix);
}

TEST_CASE("mat_inverse agrees with Cramer's rule on random 4x4") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Mat m = rng.invertible(4);
    Mat inv = mat_inverse(m);
    CHECK(inv == cramer_inverse(m));
    CHECK(m * inv == Mat::identity(4));
    CHECK(inv * m == Mat::identity(4));
    CHECK(det(m) == leibniz_det(m));
  }
}

TEST_CASE("nullspace and solve") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Mat m = rng.mat(2, 4);
    Mat n = nullspace(m);
    CHECK(n.cols() + rank(m) == 4);
    CHECK((m * n).is_zero());
    Vec x = rng.vec(4);
    auto s = solve(m, m * x);
    REQUIRE(s.has_value());
    CHECK(m * *s == m * x);
  }
  CHECK_FALSE(solve(Mat{{1, 1}, {1, 1}}, Vec{1, 2}).has_value());
}

TEST_CASE("bilinear_apply") {
  Bilinear zero(2, 2, 2);
  CHECK(bilinear_apply(zero, Vec{1, 2}, Vec{3, 4}).is_zero());
  Bilinear one(1, 1, 1);
  one(0, 0, 0) = 1;
  CHECK(bilinear_apply(one, Vec{2}, Vec{3}) == Vec{6});
  CHECK_THROWS_AS(bilinear_apply(one, Vec{1, 2}, Vec{3}), daff::DimMismatch);

  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Bilinear g(2, 2, 2);
    for (std::size_t u = 0; u < 2; ++u)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t b = 0; b < 2; ++b) g(u, i, b) = rng.scalar();
    Vec y = rng.vec(2), z = rng.vec(2);
    Vec naive(2);
    for (std::size_t u = 0; u < 2; ++u)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t b = 0; b < 2; ++b) naive[u] += g(u, i, b) * y[i] * z[b];
    CHECK(bilinear_apply(g, y, z) == naive);
  }
}

TEST_CASE("poly_compose trivial cases") {
  Poly x1 = Poly::variable(1, 0);
  CHECK(poly_compose(x1, std::map<std::size_t, Poly>{{0, x1}}) == x1);
  Poly one = Poly::constant(1, 1);
  Poly sq = x1 * x1;
  Poly expected = sq + 2 * x1 + one;
  CHECK(poly_compose(sq, std::map<std::size_t, Poly>{{0, x1 + one}}) == expected);
  CHECK(to_string(expected) == "x1^2 + 2*x1 + 1");
  Poly x2 = Poly::variable(2, 1);
  CHECK_THROWS_AS(poly_compose(x2, std::map<std::size_t, Poly>{{0, Poly::variable(2, 0)}}),
                  daff::MissingSubstitute);
}

TEST_CASE("poly_compose agrees with evaluation") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    Poly f = rng.poly(3, 3, 8);
    Mat p = rng.invertible(3);
    Vec q = rng.vec(3);
    BaseMap b(p, q);
    Poly g = b.pullback(f);
    for (int k = 0; k < 10; ++k) {
      Vec x = rng.vec(3);
      CHECK(g.eval(x) == f.eval(b.apply(x)));
    }
  }
}

TEST_CASE("base map algebra") {
  Rng rng(23);
  BaseMap a(rng.invertible(2), rng.vec(2)), b(rng.invertible(2), rng.vec(2));
  Vec x = rng.vec(2);
  CHECK(a.then(b).apply(x) == b.apply(a.apply(x)));
  CHECK(a.then(a.inverse()) == BaseMap::identity(2));
  CHECK_THROWS_AS(BaseMap(Mat{{1, 1}, {1, 1}}, Vec{0, 0}), daff::SingularMatrix);
}

TEST_CASE("polynomial matrix inverse") {
  Rng rng(29);
  // L(x) U(x) with unitriangular factors has determinant 1.
  const std::size_t m = 2;
  PolyMat l = PolyMat::identity(3, m), u = PolyMat::identity(3, m);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (j < i) l(i, j) = rng.poly(m, 2, 2);
      if (j > i) u(i, j) = rng.poly(m, 2, 2);
    }
  PolyMat a = l * u;
  CHECK(det(a) == Poly::constant(m, 1));
  PolyMat inv = poly_inverse(a);
  CHECK(a * inv == PolyMat::identity(3, m));
  Vec x = rng.vec(m);
  CHECK(inv.eval(x) == mat_inverse(a.eval(x)));
}

}  // TEST_SUITE

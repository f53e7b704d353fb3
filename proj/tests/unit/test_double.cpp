#include <doctest.h>

#include "daff/double/double_affine.hpp"
#include "daff/double/level_set.hpp"
#include "daff/error.hpp"
#include "daff/verify/generators.hpp"

using namespace daff::dbl;
using daff::exact::dot;
using daff::verify::Rng;
namespace gen = daff::verify;

namespace {

const DecomposedDouble kOne{1, 1, 1};

// Interchange-law configuration: x1, x2 share y = a; y1, y2 share y = a';
// x1, y1 share z = b; x2, y2 share z = b'.
bool interchange_holds(Rng& rng, const DoubleAffine& a) {
  const auto& d = a.d();
  Vec ya = gen::level_point(rng, a.l1()), yb = gen::level_point(rng, a.l1());
  Vec za = gen::level_point(rng, a.l2()), zb = gen::level_point(rng, a.l2());
  DoublePoint x1(d, ya, za, rng.vec(d.n3)), x2(d, ya, zb, rng.vec(d.n3));
  DoublePoint y1(d, yb, za, rng.vec(d.n3)), y2(d, yb, zb, rng.vec(d.n3));
  Scalar lambda = rng.scalar(), mu = rng.scalar();
  DoublePoint lhs = aff2(aff1(x1, x2, lambda), aff1(y1, y2, lambda), mu);
  DoublePoint rhs = aff1(aff2(x1, y1, mu), aff2(x2, y2, mu), lambda);
  return lhs == rhs && a.contains(lhs);
}

LevelRow row(const DecomposedDouble& d) {
  return LevelRow{0, Vec(d.n1), Vec(d.n2), Mat(d.n1, d.n2), Vec(d.n3), 0};
}

}  // namespace

TEST_SUITE("double") {

TEST_CASE("contains") {
  DoubleAffine a(kOne, Vec{1}, Vec{1});
  CHECK(a.contains(DoublePoint(kOne, Vec{1}, Vec{1}, Vec{42})));
  CHECK_FALSE(a.contains(DoublePoint(kOne, Vec{0}, Vec{1}, Vec{0})));
  CHECK_THROWS_AS(a.contains(DoublePoint::zero({2, 1, 1})), daff::DimMismatch);

  Rng rng(101);
  for (int k = 0; k < 20; ++k) {
    DoubleAffine b = gen::random_double_affine(rng, 3, false);
    DoublePoint p = rng.coin() ? gen::random_point_in(rng, b) : gen::random_point(rng, b.d());
    Mat l1 = Mat::from_rows({b.l1()}, b.d().n1), l2 = Mat::from_rows({b.l2()}, b.d().n2);
    bool direct = (l1 * p.y())[0] == 1 && (l2 * p.z())[0] == 1;
    CHECK(b.contains(p) == direct);
  }
}

TEST_CASE("aff1 and aff2") {
  DoublePoint p(kOne, Vec{1}, Vec{1}, Vec{0}), q(kOne, Vec{1}, Vec{3}, Vec{2});
  CHECK(aff1(p, q, Scalar(1, 2)) == DoublePoint(kOne, Vec{1}, Vec{2}, Vec{1}));
  CHECK(aff1(p, p, 7) == p);
  CHECK(aff2(p, p, 7) == p);
  CHECK_THROWS_AS(aff2(p, q, 1), daff::FiberMismatch);
  CHECK_THROWS_AS(aff1(p, DoublePoint(kOne, Vec{2}, Vec{1}, Vec{0}), 1), daff::FiberMismatch);
}

TEST_CASE("interchange law on random instances") {
  Rng rng(103);
  for (int k = 0; k < 30; ++k) {
    DoubleAffine a = gen::random_double_affine(rng, 3, false);
    for (int t = 0; t < 5; ++t) {
      CHECK(interchange_holds(rng, a));
      CHECK(interchange_holds(rng, flip(a)));
    }
  }
}

TEST_CASE("aff1 and aff2 agree on a common fiber") {
  Rng rng(107);
  for (int k = 0; k < 20; ++k) {
    DoubleAffine a = gen::random_double_affine(rng, 3, false);
    DoublePoint p = gen::random_point_in(rng, a);
    DoublePoint q(a.d(), p.y(), p.z(), rng.vec(a.d().n3));
    Scalar lambda = rng.scalar();
    CHECK(aff1(p, q, lambda) == aff2(p, q, lambda));
    // Same statement after a change of trivialization with nonzero Gamma.
    DoubleMorphism f = gen::random_morphism(rng, a.d());
    DoublePoint fp = f.apply(p), fq = f.apply(q);
    CHECK(aff1(fp, fq, lambda) == aff2(fp, fq, lambda));
    CHECK(f.apply(aff1(p, q, lambda)) == aff1(fp, fq, lambda));
  }
}

TEST_CASE("double morphisms preserve both affine structures") {
  Rng rng(109);
  for (int k = 0; k < 20; ++k) {
    DecomposedDouble d = gen::random_dims(rng, 3);
    DoubleMorphism f = gen::random_morphism(rng, d), g = gen::random_morphism(rng, d),
                   h = gen::random_morphism(rng, d);
    DoublePoint p = gen::random_point(rng, d);
    DoublePoint q1(d, p.y(), rng.vec(d.n2), rng.vec(d.n3));
    DoublePoint q2(d, rng.vec(d.n1), p.z(), rng.vec(d.n3));
    Scalar lambda = rng.scalar();
    CHECK(f.apply(aff1(p, q1, lambda)) == aff1(f.apply(p), f.apply(q1), lambda));
    CHECK(f.apply(aff2(p, q2, lambda)) == aff2(f.apply(p), f.apply(q2), lambda));
    CHECK(f.then(g).apply(p) == g.apply(f.apply(p)));
    CHECK(f.then(g).then(h) == f.then(g.then(h)));
    CHECK(DoubleMorphism::identity(d).then(f) == f);
    CHECK(DoubleMorphism::identity(d).is_pure());
    CHECK_FALSE(f.is_pure());
  }
}

TEST_CASE("definition conditions for level sets") {
  Rng rng(113);
  for (int k = 0; k < 20; ++k) {
    DoubleAffine a = gen::random_double_affine(rng, 3, false);
    const auto& d = a.d();
    // (i) pi1 is affine with respect to aff2.
    DoublePoint p = gen::random_point_in(rng, a);
    DoublePoint q(d, gen::level_point(rng, a.l1()), p.z(), rng.vec(d.n3));
    Scalar lambda = rng.scalar();
    CHECK(aff2(p, q, lambda).y() == lambda * p.y() + (1 - lambda) * q.y());
    // (ii) every pair in A1 x A2 has a preimage.
    DoublePoint r(d, gen::level_point(rng, a.l1()), gen::level_point(rng, a.l2()), Vec(d.n3));
    CHECK(a.contains(r));
    // (iii) results stay in A.
    DoublePoint s(d, p.y(), gen::level_point(rng, a.l2()), rng.vec(d.n3));
    CHECK(a.contains(aff1(p, s, lambda)));
  }
}

TEST_CASE("model and hull") {
  DoubleAffine a({2, 1, 1}, Vec{1, 0}, Vec{1});
  ModelVV m = model_vv(a);
  CHECK(m.side1 == Mat{{0}, {1}});
  CHECK(m.dims == DecomposedDouble{1, 0, 1});

  Rng rng(127);
  for (int k = 0; k < 20; ++k) {
    DoubleAffine b = gen::random_double_affine(rng, {2, 2, 1}, false);
    ModelVV mv = model_vv(b);
    CHECK(mv.dims == DecomposedDouble{1, 1, 1});
    DoublePoint p = rng.coin() ? mv.embed(gen::random_point(rng, mv.dims))
                               : gen::random_point(rng, b.d());
    // Brute force: solve l1 . y = 0 through the null space of [l1].
    Mat ker1 = daff::exact::nullspace(Mat::from_rows({b.l1()}, 2));
    Mat ker2 = daff::exact::nullspace(Mat::from_rows({b.l2()}, 2));
    bool in1 = daff::exact::solve(ker1, p.y()).has_value();
    bool in2 = daff::exact::solve(ker2, p.z()).has_value();
    CHECK(mv.contains(p) == (in1 && in2));
    Hull h = hull(b);
    CHECK(h.d == b.d());
    CHECK(h.l1 == b.l1());
    CHECK(mv.core == Mat::identity(h.d.n3));
  }
}

TEST_CASE("decomposed duals") {
  DecomposedDouble d{2, 3, 4};
  CHECK(vertical_dual(d) == DecomposedDouble{2, 4, 3});
  CHECK(horizontal_dual(d) == DecomposedDouble{4, 3, 2});
  CHECK(vertical_dual(vertical_dual(d)) == d);
  CHECK(horizontal_dual(horizontal_dual(d)) == d);

  // Dual basis against basis gives the Kronecker delta.
  Vec y{1, 2};
  for (std::size_t k = 0; k < 7; ++k)
    for (std::size_t j = 0; j < 7; ++j) {
      Vec u = Vec::unit(7, k), w = Vec::unit(7, j);
      DoublePoint phi(vertical_dual(d), y, u.slice(3, 4), u.slice(0, 3));
      DoublePoint x(d, y, w.slice(0, 3), w.slice(3, 4));
      CHECK(vertical_eval(phi, x) == (k == j ? 1 : 0));
    }

  // The double dual over the same leg recovers D through evaluation.
  Rng rng(131);
  for (int k = 0; k < 10; ++k) {
    DecomposedDouble e = gen::random_dims(rng, 3);
    DoublePoint x = gen::random_point(rng, e);
    DoublePoint ev = represent_vertical(vertical_dual(e), x.y(), [&](const DoublePoint& phi) {
      return vertical_eval(phi, x);
    });
    CHECK(ev.owner() == e);
    CHECK(ev == x);
    DoublePoint evh = represent_horizontal(horizontal_dual(e), x.z(), [&](const DoublePoint& psi) {
      return horizontal_eval(psi, x);
    });
    CHECK(evh == x);
  }
}

TEST_CASE("special duals") {
  DoubleAffine a(kOne, Vec{1}, Vec{1}, Vec{1});
  DoubleAffine v = special_dual_vertical(a);
  CHECK(v.l1() == Vec{1});
  CHECK(v.l2() == Vec{1});
  CHECK(v.sigma() == Vec{1});
  CHECK_THROWS_AS(special_dual_vertical(DoubleAffine(kOne, Vec{1}, Vec{1})), daff::NotSpecial);

  Rng rng(137);
  for (int k = 0; k < 20; ++k) {
    DoubleAffine b = gen::random_double_affine(rng, 3, true);
    const auto& d = b.d();
    DoubleAffine bv = special_dual_vertical(b);
    // Phi lies in the dual iff l1(y) = 1 and Phi takes the value 1 on the
    // core section lifted over y.
    DoublePoint phi = rng.coin() ? gen::random_point_in(rng, bv)
                                 : gen::random_point(rng, bv.d());
    DoublePoint x(d, phi.y(), rng.vec(d.n2), rng.vec(d.n3));
    DoublePoint x_shift(d, phi.y(), x.z(), x.c() + b.sigma());
    bool direct = dot(b.l1(), phi.y()) == 1 &&
                  vertical_eval(phi, x_shift) - vertical_eval(phi, x) == 1;
    CHECK(bv.contains(phi) == direct);
    // Core of the dual is Aff(A2, R) with distinguished element 1 on A2.
    CHECK(bv.d().n3 == d.n2);
    CHECK(dot(bv.sigma(), gen::level_point(rng, b.l2())) == 1);
    // Data cycle of the proof: H -> (l3, l2; l1), then V -> (l3, l1; l2),
    // then H -> (l2, l1; l3).
    DoubleAffine h = special_dual_horizontal(b);
    CHECK(h.l1() == b.sigma());
    CHECK(h.l2() == b.l2());
    CHECK(h.sigma() == b.l1());
    DoubleAffine hv = special_dual_vertical(h);
    CHECK(hv.l1() == b.sigma());
    CHECK(hv.l2() == b.l1());
    CHECK(hv.sigma() == b.l2());
    DoubleAffine hvh = special_dual_horizontal(hv);
    CHECK(hvh.l1() == b.l2());
    CHECK(hvh.l2() == b.l1());
    CHECK(hvh.sigma() == b.sigma());
  }
}

TEST_CASE("pairing between the two duals") {
  DoublePoint phi(vertical_dual(kOne), Vec{1}, Vec{1}, Vec{2});
  DoublePoint psi(horizontal_dual(kOne), Vec{1}, Vec{1}, Vec{3});
  CHECK(pairing(phi, psi, kOne) == -1);
  for (long c : {0, 5}) {
    DoublePoint x(kOne, Vec{1}, Vec{1}, Vec{c});
    CHECK(vertical_eval(phi, x) - horizontal_eval(psi, x) == -1);
  }
  DoublePoint other(horizontal_dual(kOne), Vec{2}, Vec{1}, Vec{3});
  CHECK_THROWS_AS(pairing(phi, other, kOne), daff::BaseMismatch);

  Rng rng(139);
  for (int k = 0; k < 20; ++k) {
    DoubleAffine a = gen::random_double_affine(rng, 3, true);
    const auto& d = a.d();
    DoubleAffine av = special_dual_vertical(a), ah = special_dual_horizontal(a);
    // Phi over (d1, phi0), Psi over (phi0, d2) with d_j in A_j.
    DoublePoint p = gen::random_point_in(rng, av);
    DoublePoint q(ah.d(), p.z(), gen::level_point(rng, a.l2()), rng.vec(d.n1));
    Scalar base = pairing(p, q, a);
    for (int t = 0; t < 3; ++t) {
      DoublePoint x(d, p.y(), q.z(), rng.vec(d.n3));
      CHECK(vertical_eval(p, x) - horizontal_eval(q, x) == base);
    }
    DoublePoint shifted(av.d(), p.y(), p.z(), p.c() + a.l2());
    DoublePoint lowered(ah.d(), q.y(), q.z(), q.c() - a.l1());
    CHECK(pairing(shifted, q, a) == base + 1);
    CHECK(pairing(p, lowered, a) == base + 1);

    // Dual-basis covector against the zero section gives zeta(d2).
    std::size_t b = rng.index(d.n2);
    DoublePoint e(av.d(), rng.vec(d.n1), p.z(), Vec::unit(d.n2, b));
    DoublePoint zero(ah.d(), p.z(), rng.vec(d.n2), Vec(d.n1));
    CHECK(pairing(e, zero, a) == zero.z()[b]);

    // Non-degenerate on bases of the fibers over a fixed element of V3*.
    const std::size_t nv = d.n1 + d.n2;
    Mat gram(nv, nv);
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t j = 0; j < nv; ++j) {
        Vec u = Vec::unit(nv, i), w = Vec::unit(nv, j);
        DoublePoint pi(av.d(), u.slice(0, d.n1), p.z(), u.slice(d.n1, d.n2));
        DoublePoint pj(ah.d(), p.z(), w.slice(0, d.n2), w.slice(d.n2, d.n1));
        gram(i, j) = pairing(pi, pj, d);
      }
    CHECK(daff::exact::rank(gram) == nv);
  }
}

TEST_CASE("flip and adjoint") {
  Rng rng(149);
  for (int k = 0; k < 10; ++k) {
    DoubleAffine a = gen::random_double_affine(rng, 3, true);
    CHECK(flip(flip(a)) == a);
    CHECK(adjoint(adjoint(a)) == a);
    CHECK(adjoint(a).sigma() == -a.sigma());
    CHECK(flip(a).sigma() == a.sigma());
  }
  CHECK_THROWS_AS(adjoint(DoubleAffine(kOne, Vec{1}, Vec{1})), daff::NotSpecial);
}

TEST_CASE("hvh isomorphism") {
  Rng rng(151);
  for (int k = 0; k < 15; ++k) {
    DoubleAffine a = gen::random_double_affine(rng, 3, true);
    const auto& d = a.d();
    HvhResult r = hvh_iso(a);
    CHECK(r.hvh.l1() == a.l2());
    CHECK(r.hvh.l2() == a.l1());
    CHECK(r.hvh.sigma() == a.sigma());
    CHECK(r.target.sigma() == -a.sigma());
    CHECK(r.iso.is_pure());
    CHECK(r.iso.gamma.is_zero());
    CHECK(r.iso.a == Mat::identity(d.n2));
    CHECK(r.iso.b == Mat::identity(d.n1));
    CHECK(r.iso.sigma == -Mat::identity(d.n3));
    CHECK(r.iso.sigma * r.hvh.sigma() == r.target.sigma());
    CHECK(maps_onto(r.iso, r.hvh, r.target));
  }
  DoubleAffine two = gen::random_double_affine(rng, {2, 2, 2}, true);
  CHECK(hvh_iso(two).iso.sigma == -Mat::identity(2));
  CHECK_THROWS_AS(hvh_iso(DoubleAffine(kOne, Vec{1}, Vec{1})), daff::NotSpecial);
}

TEST_CASE("classify_level_set on the two examples") {
  LevelRow xy = row(kOne);
  xy.gyz(0, 0) = 1;
  xy.value = 1;
  Classification c = classify_level_set(kOne, {xy});
  CHECK(c.verdict == Verdict::NotSubbundle);
  REQUIRE(c.y.has_value());
  CHECK(*c.y == Vec{0});

  LevelRow sum = row(kOne);
  sum.gy = Vec{1};
  sum.gz = Vec{1};
  sum.sigma = Vec{1};
  sum.value = 1;
  CHECK(classify_level_set(kOne, {sum}).verdict == Verdict::Subbundle);

  DecomposedDouble d{1, 1, 2};
  LevelRow core = row(d);
  core.sigma = Vec{1, 0};
  core.value = 1;
  CHECK(classify_level_set(d, {core}).verdict == Verdict::Subbundle);
}

TEST_CASE("classify_level_set further cases") {
  // y = z couples the sides: not a product.
  LevelRow diag = row(kOne);
  diag.gy = Vec{1};
  diag.gz = Vec{-1};
  Classification c = classify_level_set(kOne, {diag});
  CHECK(c.verdict == Verdict::NotSubbundle);
  REQUIRE((c.y && c.z));
  CHECK_FALSE(*c.y == *c.z);

  // y z = 0: union of two lines.
  LevelRow cross = row(kOne);
  cross.gyz(0, 0) = 1;
  CHECK(classify_level_set(kOne, {cross}).verdict == Verdict::NotSubbundle);

  // y = 1 is an affine side constraint: subbundle.
  LevelRow side = row(kOne);
  side.gy = Vec{1};
  side.value = 1;
  CHECK(classify_level_set(kOne, {side}).verdict == Verdict::Subbundle);

  // c = y z alone is a graph over V1 x V2; adding y z = 1 brings back the
  // obstruction after eliminating c.
  LevelRow graph = row(kOne);
  graph.gyz(0, 0) = 1;
  graph.sigma = Vec{-1};
  CHECK(classify_level_set(kOne, {graph}).verdict == Verdict::Subbundle);
  LevelRow xy = row(kOne);
  xy.gyz(0, 0) = 1;
  xy.value = 1;
  CHECK(classify_level_set(kOne, {graph, xy}).verdict == Verdict::NotSubbundle);

  CHECK_THROWS_AS(classify_level_set(kOne, {row(kOne)}), daff::MalformedConstraint);
  CHECK_THROWS_AS(classify_level_set(kOne, {}), daff::MalformedConstraint);
}

}  // TEST_SUITE

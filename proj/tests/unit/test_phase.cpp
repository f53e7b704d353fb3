#include <doctest.h>

#include "daff/double/double_affine.hpp"
#include "daff/error.hpp"
#include "daff/exact/poly_matrix.hpp"
#include "daff/phase/duality.hpp"
#include "daff/verify/phase_generators.hpp"

using namespace daff;
using namespace daff::phase;
using verify::Rng;

namespace {

NormalForm random_form(Rng& rng) { return NormalForm::of(rng.uniform(1, 2), rng.uniform(0, 2)); }

}  // namespace

TEST_SUITE("phase") {

TEST_CASE("chi actions and lifts") {
  const auto e = NormalForm::of(1, 1);
  CotangentPoint w{Vec{Scalar(7)}, Vec{Scalar(1), Scalar(5), Scalar(0)}, Vec{Scalar(4)},
                   Vec{Scalar(9), Scalar(8), Scalar(2)}};
  CHECK(chi(e, 0, 0, w) == w);
  auto moved = chi(e, 3, -2, w);
  CHECK(moved.y[0] == 4);
  CHECK(moved.pi[2] == 0);
  CHECK(moved.y[1] == 5);
  CHECK(moved.pi[0] == 9);

  Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    auto f = random_form(rng);
    auto u = verify::random_cotangent(rng, f);
    Scalar s = rng.scalar(), t = rng.scalar(), s2 = rng.scalar(), t2 = rng.scalar();
    CHECK(chi(f, s, t, chi(f, s2, t2, u)) == chi(f, s + s2, t + t2, u));
    ReducedCovector r(f, kChi, u);
    CHECK(ReducedCovector(f, kChi, chi(f, s, t, u)) == r);
    CHECK(lifts(ReducedCovector(f, kChi, chi(f, s, t, u))) == lifts(r));
    CHECK(lifts(r).first == u.y[f.alpha]);
    CHECK(lifts(r).second == u.pi[f.v]);
    // Homotheties descend to the orbit space.
    for (int which : {1, 2}) {
      Scalar h = rng.scalar();
      CHECK(ReducedCovector(f, kChi, homothety(which, h, chi(f, s, t, u))) ==
            ReducedCovector(f, kChi, homothety(which, h, u)));
      CHECK(homothety(1, h, homothety(2, s, u)) == homothety(2, s, homothety(1, h, u)));
    }
  }
  CotangentPoint zero{Vec(1), Vec(3), Vec(1), Vec(3)};
  zero.y[1] = 6;
  CHECK(lifts(ReducedCovector(e, kChi, zero)) == std::pair<Scalar, Scalar>(0, 0));
  auto b = verify::random_bbl_point(rng, e);
  CHECK(lifts(ReducedCovector(e, kChi, b)) == std::pair<Scalar, Scalar>(1, 1));
}

TEST_CASE("constructed spaces") {
  const auto e = NormalForm::of(2, 1);
  const Vec omega{Scalar(1), Scalar(-2)};
  auto hull = build(SpaceKind::AffCtg, e);
  auto pp = build(SpaceKind::PhaseP, e, omega);
  auto bbl = build(SpaceKind::Bbl, e);
  auto cc = build(SpaceKind::ContactC, e);
  CHECK(hull.mask == kChi);
  CHECK(hull.constraints.empty());
  CHECK(hull.d == dbl::DecomposedDouble{2, 2, 2});
  CHECK(bbl.d == dbl::DecomposedDouble{3, 3, 2});
  CHECK(cc.mask == kChi2);
  CHECK(cc.d == dbl::DecomposedDouble{2, 2, 3});
  CHECK(*cc.core_section == Vec{Scalar(0), Scalar(0), Scalar(1)});
  CHECK(*pp.core_section == omega);
  CHECK(dbl::hull(pp.affine()).d == hull.d);
  CHECK_THROWS_AS(hull.affine(), ConstraintViolated);
  CHECK_THROWS_AS(build(SpaceKind::PhaseP, e, Vec(2)), ZeroForm);

  Rng rng(42);
  for (int k = 0; k < 30; ++k) {
    auto f = random_form(rng);
    auto b = verify::random_bbl_point(rng, f);
    Scalar s = rng.scalar(), t = rng.scalar();
    auto b2 = chi(f, s, t, b);
    auto phase = build(SpaceKind::PhaseP, f);
    auto bb = build(SpaceKind::Bbl, f);
    auto contact = build(SpaceKind::ContactC, f);
    REQUIRE(bb.contains(bb.reduce(b)));
    REQUIRE(bb.contains(bb.reduce(b2)));
    // One chi orbit in Bbl gives one point of the phase bundle.
    CHECK(phase.reduce(b) == phase.reduce(b2));
    CHECK(phase.contains(phase.reduce(b)));
    CHECK(contact.reduce(b) == contact.reduce(chi(f, 0, t, b)));
    // Membership agrees with the level-set description.
    for (const auto* c : {&phase, &bb, &contact}) {
      auto any = c->reduce(rng.coin() ? b : verify::random_cotangent(rng, f));
      CHECK(c->affine().contains(c->to_double(any)) == c->contains(any));
      CHECK(c->from_double(any.rep().x, c->to_double(any)) == any);
    }
    // The injection from T* of the model of A-bar hits {l1 = 0 = l2}.
    const std::size_t ni = f.inner().size();
    auto w = iota(f, rng.vec(f.m), rng.vec(ni), rng.vec(f.m), rng.vec(ni));
    CHECK(lifts(w) == std::pair<Scalar, Scalar>(0, 0));
  }
}

TEST_CASE("tau on hand examples") {
  auto e = NormalForm::of(1, 1);
  CotangentPoint w{Vec{Scalar(0)}, Vec{Scalar(2), Scalar(3), Scalar(1)}, Vec{Scalar(0)},
                   Vec{Scalar(1), Scalar(5), Scalar(99)}};
  auto t = tau(ReducedCovector(e, kChi2, w));
  CHECK(t.mask() == kChi1);
  CHECK(t.rep().y == Vec{Scalar(0), Scalar(3), Scalar(1)});
  CHECK(t.rep().pi == Vec{Scalar(1), Scalar(5), Scalar(-17)});

  auto e0 = NormalForm::of(1, 0);
  Scalar a(7, 3);
  CotangentPoint w0{Vec{Scalar(1)}, Vec{a, Scalar(1)}, Vec{Scalar(2)}, Vec{Scalar(1), Scalar(0)}};
  auto t0 = tau(ReducedCovector(e0, kChi2, w0));
  CHECK(t0.rep().pi == Vec{Scalar(1), Scalar(-a)});
  CHECK(t0.rep().y == Vec{Scalar(0), Scalar(1)});

  w.pi[0] = 2;
  CHECK_THROWS_AS(tau(ReducedCovector(e, kChi2, w)), ConstraintViolated);
  w.pi[0] = 1;
  CHECK_THROWS_AS(tau(ReducedCovector(e, kChi, w)), ConstraintViolated);
}

TEST_CASE("tau does not depend on the adapted basis") {
  Rng rng(43);
  for (int k = 0; k < 30; ++k) {
    auto f = random_form(rng);
    Mat a = verify::random_adapted(rng, f);
    REQUIRE(is_adapted(f, a));
    ReducedCovector c(f, kChi2, verify::random_bbl_point(rng, f));
    auto c2 = change_basis(a, c);
    REQUIRE(build(SpaceKind::ContactC, f).contains(c2));
    CHECK(tau(c2) == change_basis(a, tau(c)));
  }
  // The completed momentum in primed coordinates, as a polynomial identity in
  // y_0..y_n and pi_1..pi_n.
  for (std::size_t n = 0; n <= 2; ++n) {
    auto f = NormalForm::of(1, n);
    Mat a = verify::random_adapted(rng, f);
    const std::size_t nv = 2 * n + 1;
    using exact::Poly;
    exact::PolyVec y(n + 2, nv), pi(n + 2, nv);
    for (std::size_t i = 0; i <= n; ++i) y[i] = Poly::variable(nv, i);
    y[n + 1] = Poly::constant(nv, 1);
    pi[0] = Poly::constant(nv, 1);
    for (std::size_t i = 1; i <= n; ++i) pi[i] = Poly::variable(nv, n + i);
    Poly last = -y[0];
    for (std::size_t i = 1; i <= n; ++i) last -= y[i] * pi[i];
    pi[n + 1] = last;
    auto pi2 = exact::PolyMat::from_constant(a, nv) * pi;
    auto y2 = exact::PolyMat::from_constant(exact::mat_inverse(a).transpose(), nv) * y;
    Poly rhs = -y2[0];
    for (std::size_t j = 1; j <= n; ++j) rhs -= y2[j] * pi2[j];
    CHECK(pi2[n + 1] == rhs);
    CHECK(y2[n + 1] == Poly::constant(nv, 1));
    CHECK(pi2[0] == Poly::constant(nv, 1));
  }
}

TEST_CASE("beta and kappa") {
  Rng rng(44);
  for (int k = 0; k < 30; ++k) {
    auto f = random_form(rng);
    auto fd = f.dual();
    auto b = verify::random_bbl_point(rng, f);
    auto bb = beta(b);
    CHECK(bb.x == b.x);
    CHECK(beta(bb) == b);
    CHECK(bb.y[fd.alpha] == 1);
    CHECK(bb.pi[fd.v] == 1);
    CHECK(build(SpaceKind::Bbl, fd).contains(ReducedCovector(fd, kNoMask, bb)));
    Scalar s = rng.scalar();
    CHECK(beta(chi(f, s, 0, b)) == chi(fd, 0, s, bb));
    CHECK(beta(chi(f, 0, s, b)) == chi(fd, s, 0, bb));

    auto cc = build(SpaceKind::ContactC, f);
    auto ccd = build(SpaceKind::ContactC, fd);
    auto c = cc.reduce(b);
    auto kc = kappa(c);
    REQUIRE(ccd.contains(kc));
    // Identity on both side bases.
    CHECK(cc.project1(c) == ccd.project2(kc));
    CHECK(cc.project2(c) == ccd.project1(kc));
    // Induces the map of phase bundles.
    CHECK(kc.project(kChi) == beta(c.project(kChi)));
    // The model direction (0, r) goes to (0, -r).
    Scalar r = rng.nonzero_scalar();
    auto shifted = cc.reduce(chi(f, r, 0, b));
    auto diff = ccd.to_double(kappa(shifted)).c() - ccd.to_double(kc).c();
    CHECK(diff == Scalar(-r) * *ccd.core_section);
    // Affine along both fibrations.
    Scalar lam = rng.scalar();
    auto b2 = verify::random_bbl_point(rng, f);
    b2.x = b.x;
    b2.y = b.y;
    auto c2 = cc.reduce(b2);
    auto mix = cc.from_double(b.x, dbl::aff1(cc.to_double(c), cc.to_double(c2), lam));
    CHECK(ccd.to_double(kappa(mix)) == dbl::aff2(ccd.to_double(kc), ccd.to_double(kappa(c2)), lam));
    auto b3 = verify::random_bbl_point(rng, f);
    b3.x = b.x;
    b3.pi = b.pi;
    auto c3 = cc.reduce(b3);
    auto mix2 = cc.from_double(b.x, dbl::aff2(cc.to_double(c), cc.to_double(c3), lam));
    CHECK(ccd.to_double(kappa(mix2)) == dbl::aff1(ccd.to_double(kc), ccd.to_double(kappa(c3)), lam));
  }
}

TEST_CASE("contact projection misses pairs with f(a) != 0") {
  Rng rng(45);
  auto f = NormalForm::of(1, 1);
  auto c = build(SpaceKind::ContactC, f).reduce(verify::random_bbl_point(rng, f));
  auto [y, pi] = contact_pair(c);
  CHECK(in_contact_image(y, pi));
  Vec a{Scalar(0), Scalar(0), Scalar(1)}, fn{Scalar(1), Scalar(0), Scalar(1)};
  CHECK_FALSE(in_contact_image(a, fn));
}

TEST_CASE("reduced tangent of the AV-bundle") {
  Rng rng(46);
  for (int k = 0; k < 20; ++k) {
    auto f = random_form(rng);
    const std::size_t nb = f.m + f.inner().size();
    TbarPoint v{rng.vec(nb), rng.vec(nb), rng.scalar(), rng.scalar()};
    Scalar t = rng.scalar();
    auto moved = tbar_act(t, v);
    CHECK(moved.s == v.s + t);
    CHECK(moved.ds == v.ds - t);
    CHECK(tbar_canonical(moved) == tbar_canonical(v));
    auto xz = tbar_x_z(f);
    CHECK(tbar_canonical(tbar_translate(moved, xz)) == tbar_canonical(tbar_translate(v, xz)));

    auto b = verify::random_bbl_point(rng, f);
    for (std::size_t a = 0; a < f.m; ++a) b.x[a] = v.base[a];
    auto inner = f.inner();
    for (std::size_t i = 0; i < inner.size(); ++i) b.y[inner[i]] = v.base[f.m + i];
    auto c = build(SpaceKind::ContactC, f).reduce(b);
    Scalar pv = contact_tbar_pairing(f, c, v);
    CHECK(contact_tbar_pairing(f, c, moved) == pv);
    CHECK(contact_tbar_pairing(f, c, tbar_translate(v, xz)) == pv + 1);
    // At the representative over the contact point's own fiber coordinate
    // the pairing is the plain covector-vector pairing, with pi_s = -1.
    auto at = tbar_act(Scalar(-b.y[f.v]) - v.s, v);
    Scalar direct = -at.ds;
    for (std::size_t a = 0; a < f.m; ++a) direct += b.p[a] * v.dbase[a];
    for (std::size_t i = 0; i < inner.size(); ++i) direct += b.pi[inner[i]] * v.dbase[f.m + i];
    CHECK(pv == direct);
    TbarPoint elsewhere = v;
    elsewhere.base[0] += 1;
    CHECK_THROWS_AS(contact_tbar_pairing(f, c, elsewhere), BaseMismatch);
  }
}

TEST_CASE("tangent side duals") {
  Rng rng(47);
  for (int k = 0; k < 10; ++k) {
    auto f = random_form(rng);
    Vec omega = rng.nonzero_vec(f.m);
    auto r = afftg_and_duals(f, omega, 5 + k, 5);
    CHECK(r.gram_is_signed_permutation);
    CHECK(r.pdot_is_special_dual);
    CHECK(r.iota_is_bijection);
    CHECK(r.adjoint_identity);
    CHECK(r.sdot.n3 == f.n + 1);
    CHECK(r.pdot.l2() == omega);
    CHECK(r.pdot.sigma() == Vec::unit(f.n + 1, 0));
    // The covector-vector pairing descends.
    auto hull = build(SpaceKind::AffCtg, f);
    auto w = verify::random_cotangent(rng, f);
    Vec ydot = rng.vec(f.fiber());
    ydot[f.alpha] = 0;
    Vec xdot = rng.vec(f.m);
    Scalar direct = exact::dot(w.p, xdot) + exact::dot(w.pi, ydot);
    auto cls = afftg_class(f, w.x, w.y, xdot, ydot);
    CHECK(dbl::vertical_eval(cls, hull.to_double(hull.reduce(w))) == direct);
    auto w2 = chi(f, rng.scalar(), rng.scalar(), w);
    CHECK(dbl::vertical_eval(afftg_class(f, w2.x, w2.y, xdot, ydot), hull.to_double(hull.reduce(w2))) == direct);
  }
  CHECK_THROWS_AS(afftg_and_duals(NormalForm::of(1, 1), Vec(1)), ZeroForm);
  CHECK_THROWS_AS(afftg_and_duals(NormalForm::of(0, 1), Vec()), ZeroForm);
  Vec bad = Vec::unit(3, 2);
  CHECK_THROWS_AS(afftg_class(NormalForm::of(1, 1), Vec(1), Vec(3), Vec(1), bad), ConstraintViolated);
}

}

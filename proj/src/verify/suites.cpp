#include "daff/verify/suites.hpp"

#include <functional>
#include <sstream>

#include "daff/error.hpp"
#include "daff/naffine/bbl.hpp"
#include "daff/phase/duality.hpp"
#include "daff/verify/generators.hpp"
#include "daff/verify/naffine_generators.hpp"
#include "daff/verify/phase_generators.hpp"

namespace daff::verify {

using dbl::DoubleAffine;
using dbl::DoublePoint;
using exact::to_string;

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

bool all_ok(const Checks& c) {
  for (const auto& r : c)
    if (!r.ok()) return false;
  return true;
}

namespace {

// A trial returns an empty string on success, otherwise a witness.
using Trial = std::function<std::string(Rng&)>;

CheckResult run_trials(const std::string& name, std::uint64_t seed, int trials, const Trial& f) {
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(s);
    std::string w;
    try {
      w = f(rng);
    } catch (const Error& e) {
      w = e.what();
    }
    if (!w.empty()) return {name, Status::Fail, "trial " + std::to_string(t) + ": " + w, s};
  }
  return {name, Status::Pass, std::nullopt, seed};
}

CheckResult single(const std::string& name, const std::function<std::string()>& f) {
  std::string w;
  try {
    w = f();
  } catch (const Error& e) {
    w = e.what();
  }
  if (w.empty()) return {name, Status::Pass, std::nullopt, 0};
  return {name, Status::Fail, w, 0};
}

std::string point_string(const DoublePoint& p) {
  return "(" + to_string(p.y()) + "; " + to_string(p.z()) + "; " + to_string(p.c()) + ")";
}

}  // namespace

Checks check_interchange(const DoubleAffine& a, std::uint64_t seed, int trials) {
  return {run_trials("interchange", seed, trials, [&](Rng& rng) -> std::string {
    const auto& d = a.d();
    const Vec ya = level_point(rng, a.l1()), yb = level_point(rng, a.l1());
    const Vec za = level_point(rng, a.l2()), zb = level_point(rng, a.l2());
    const DoublePoint x1(d, ya, za, rng.vec(d.n3)), x2(d, ya, zb, rng.vec(d.n3));
    const DoublePoint y1(d, yb, za, rng.vec(d.n3)), y2(d, yb, zb, rng.vec(d.n3));
    const Scalar lambda = rng.scalar(), mu = rng.scalar();
    const DoublePoint lhs = dbl::aff2(dbl::aff1(x1, x2, lambda), dbl::aff1(y1, y2, lambda), mu);
    const DoublePoint rhs = dbl::aff1(dbl::aff2(x1, y1, mu), dbl::aff2(x2, y2, mu), lambda);
    if (lhs == rhs && a.contains(lhs)) return "";
    return "lambda=" + to_string(lambda) + " mu=" + to_string(mu) + " lhs=" + point_string(lhs) +
           " rhs=" + point_string(rhs);
  })};
}

Checks check_common_fiber(const DoubleAffine& a, std::uint64_t seed, int trials) {
  return {run_trials("common-fiber", seed, trials, [&](Rng& rng) -> std::string {
    const DoublePoint p = random_point_in(rng, a);
    const DoublePoint q(a.d(), p.y(), p.z(), rng.vec(a.d().n3));
    const Scalar lambda = rng.scalar();
    // The same statement after a change of trivialization with nonzero Gamma.
    const dbl::DoubleMorphism f = random_morphism(rng, a.d());
    const DoublePoint fp = f.apply(p), fq = f.apply(q);
    if (!(dbl::aff1(p, q, lambda) == dbl::aff2(p, q, lambda)))
      return "aff1 != aff2 at p=" + point_string(p) + " q=" + point_string(q);
    if (!(dbl::aff1(fp, fq, lambda) == dbl::aff2(fp, fq, lambda)))
      return "aff1 != aff2 after a change of trivialization";
    return "";
  })};
}

Checks check_model_hull(const DoubleAffine& a, std::uint64_t seed, int trials) {
  Checks out;
  out.push_back(run_trials("model-membership", seed, trials, [&](Rng& rng) -> std::string {
    const dbl::ModelVV mv = dbl::model_vv(a);
    const DoublePoint p = rng.coin() ? mv.embed(random_point(rng, mv.dims)) : random_point(rng, a.d());
    const bool direct = sgn(exact::dot(a.l1(), p.y())) == 0 && sgn(exact::dot(a.l2(), p.z())) == 0;
    if (mv.contains(p) != direct) return "model membership wrong at " + point_string(p);
    if (!(mv.l1 == a.l1() && mv.l2 == a.l2())) return "model constraints differ from l1, l2";
    return "";
  }));
  out.push_back(run_trials("hull-membership", seed, trials, [&](Rng& rng) -> std::string {
    const dbl::Hull h = dbl::hull(a);
    if (!(h.d == a.d() && h.l1 == a.l1() && h.l2 == a.l2())) return "hull is not D with l1, l2";
    const DoublePoint p = rng.coin() ? random_point_in(rng, a) : random_point(rng, a.d());
    const bool direct = exact::dot(h.l1, p.y()) == 1 && exact::dot(h.l2, p.z()) == 1;
    if (a.contains(p) != direct) return "level membership wrong at " + point_string(p);
    return "";
  }));
  return out;
}

Checks check_atlas_hull(const atlas::Atlas& a) {
  Checks out;
  out.push_back(single("hull-restriction", [&]() -> std::string {
    for (const auto& [edge, t] : a.edges()) {
      const auto h = atlas::induce_hull(t);
      const std::string tag = edge.first + "->" + edge.second;
      if (auto d = atlas::first_difference(t, atlas::restrict_hull(h, 1, 1)))
        return tag + " at (1,1): " + d->coefficient + " expected " + d->expected + " got " + d->actual;
      if (auto d = atlas::first_difference(atlas::induce_model(t), atlas::restrict_hull(h, 0, 0)))
        return tag + " at (0,0): " + d->coefficient + " expected " + d->expected + " got " + d->actual;
    }
    return "";
  }));
  out.push_back(single("linearization-order", [&]() -> std::string {
    const auto r = atlas::check_atlas_model_hull(a);
    if (!r.order_mismatches.empty()) {
      const auto& [edge, d] = r.order_mismatches.front();
      return edge.first + "->" + edge.second + ": " + d.coefficient;
    }
    return "";
  }));
  return out;
}

namespace {

std::string cocycle_witness(const atlas::CocycleReport& r) {
  if (!r.failures.empty()) {
    const auto& f = r.failures.front();
    return f.a + "->" + f.b + "->" + f.c + ": " + f.difference.coefficient + " is " + f.difference.expected +
           " on " + f.a + "->" + f.c + " but " + f.difference.actual + " on the composite";
  }
  if (!r.singular_samples.empty()) {
    const auto& s = r.singular_samples.front();
    return s.a + "->" + s.b + ": " + s.block + " singular at " + to_string(s.point);
  }
  return "";
}

}  // namespace

Checks check_cocycle(const atlas::Atlas& a) {
  Checks out;
  out.push_back(single("cocycle", [&] { return cocycle_witness(atlas::cocycle_check(a)); }));
  out.push_back(single("cocycle-v1", [&] { return cocycle_witness(atlas::cocycle_check(a.map(atlas::induce_v1))); }));
  out.push_back(single("cocycle-v2", [&] { return cocycle_witness(atlas::cocycle_check(a.map(atlas::induce_v2))); }));
  out.push_back(single("v1v2-commute", [&]() -> std::string {
    for (const auto& [edge, t] : a.edges())
      if (auto d = atlas::first_difference(atlas::induce_v1(atlas::induce_v2(t)),
                                           atlas::induce_v2(atlas::induce_v1(t))))
        return edge.first + "->" + edge.second + ": " + d->coefficient;
    return "";
  }));
  return out;
}

Checks check_duality(const DoubleAffine& a, std::uint64_t seed, int trials) {
  if (!a.is_special()) return {{"duality", Status::Skip, "not special", seed}};
  const auto& d = a.d();
  const DoubleAffine av = dbl::special_dual_vertical(a), ah = dbl::special_dual_horizontal(a);
  Checks out;
  out.push_back(run_trials("pairing-interpolation", seed, trials, [&](Rng& rng) -> std::string {
    const DoublePoint p = random_point_in(rng, av);
    const DoublePoint q(ah.d(), p.z(), level_point(rng, a.l2()), rng.vec(d.n1));
    const Scalar base = dbl::pairing(p, q, a);
    // Three distinct interpolating core values.
    const Vec c0 = rng.vec(d.n3);
    for (int k = 0; k < 3; ++k) {
      Vec c = c0;
      if (d.n3 > 0) c[0] += k;
      const DoublePoint x(d, p.y(), q.z(), c);
      if (dbl::vertical_eval(p, x) - dbl::horizontal_eval(q, x) != base)
        return "value at c=" + to_string(c) + " differs from " + to_string(base);
    }
    return "";
  }));
  out.push_back(run_trials("pairing-shift", seed, trials, [&](Rng& rng) -> std::string {
    const DoublePoint p = random_point_in(rng, av);
    const DoublePoint q(ah.d(), p.z(), level_point(rng, a.l2()), rng.vec(d.n1));
    const Scalar base = dbl::pairing(p, q, a);
    const DoublePoint shifted(av.d(), p.y(), p.z(), p.c() + a.l2());
    const DoublePoint lowered(ah.d(), q.y(), q.z(), q.c() - a.l1());
    if (dbl::pairing(shifted, q, a) != base + 1) return "<Phi + l2, Psi> != <Phi, Psi> + 1";
    if (dbl::pairing(p, lowered, a) != base + 1) return "<Phi, Psi - l1> != <Phi, Psi> + 1";
    return "";
  }));
  out.push_back(run_trials("pairing-nondegenerate", seed, trials, [&](Rng& rng) -> std::string {
    const Vec gamma = level_point(rng, a.sigma());
    const std::size_t nv = d.n1 + d.n2;
    Mat gram(nv, nv);
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t j = 0; j < nv; ++j) {
        const Vec u = Vec::unit(nv, i), w = Vec::unit(nv, j);
        const DoublePoint pi(av.d(), u.slice(0, d.n1), gamma, u.slice(d.n1, d.n2));
        const DoublePoint pj(ah.d(), gamma, w.slice(0, d.n2), w.slice(d.n2, d.n1));
        gram(i, j) = dbl::pairing(pi, pj, d);
      }
    if (exact::rank(gram) != nv) return "degenerate Gram matrix over gamma=" + to_string(gamma);
    return "";
  }));
  return out;
}

Checks check_affine_duality(const affine::BispecialRep& a, std::uint64_t seed, int trials) {
  if (!a.is_special()) return {{"affine-duality", Status::Skip, "not special", seed}};
  Checks out;
  out.push_back(single("double-dual", [&]() -> std::string {
    const affine::BispecialRep dd = affine::special_dual(affine::special_dual(a));
    if (!affine::is_isomorphism(affine::double_dual_evaluation(a), a, dd))
      return "evaluation is not an isomorphism onto the double dual";
    return "";
  }));
  out.push_back(run_trials("dual-evaluation", seed, trials, [&](Rng& rng) -> std::string {
    // phi in the dual takes value 1 on v and is affine on A.
    const affine::BispecialRep dual = affine::special_dual(a);
    const Vec phi = level_point(rng, dual.alpha());
    const Vec x = level_point(rng, a.alpha());
    const Scalar shift = exact::dot(phi, x + a.special_vector()) - exact::dot(phi, x);
    if (shift != 1) return "phi(x + v) - phi(x) = " + to_string(shift);
    return "";
  }));
  return out;
}

Checks check_hvh(const DoubleAffine& a) {
  if (!a.is_special()) return {{"hvh", Status::Skip, "not special", 0}};
  return {single("hvh", [&]() -> std::string {
    const dbl::HvhResult r = dbl::hvh_iso(a);
    const auto& d = a.d();
    if (!(r.iso.a == Mat::identity(d.n2) && r.iso.b == Mat::identity(d.n1)))
      return "not the identity on the sides";
    if (!(r.iso.sigma == Scalar(-1) * Mat::identity(d.n3))) return "not minus the identity on the core";
    if (!r.iso.is_pure() || !r.iso.gamma.is_zero()) return "isomorphism has affine or bilinear parts";
    if (!(r.target == dbl::adjoint(dbl::flip(a)))) return "target is not the adjoint of the flip";
    if (!dbl::maps_onto(r.iso, r.hvh, r.target)) return "does not map onto the adjoint of the flip";
    return "";
  })};
}

Checks check_phase_tower(const phase::NormalForm& e, const std::optional<exact::Vec>& omega,
                         std::uint64_t seed, int trials) {
  using namespace phase;
  Checks out;
  out.push_back(run_trials("chi-invariance", seed, trials, [&](Rng& rng) -> std::string {
    const CotangentPoint w = random_cotangent(rng, e);
    const Scalar s = rng.scalar(), t = rng.scalar();
    const ReducedCovector r(e, kChi, w);
    if (!(lifts(ReducedCovector(e, kChi, chi(e, s, t, w))) == lifts(r))) return "lifts move along an orbit";
    if (!(lifts(r) == std::pair<Scalar, Scalar>(w.y[e.alpha], w.pi[e.v]))) return "lifts are not (y^alpha, pi_v)";
    return "";
  }));
  out.push_back(run_trials("orbit-consistency", seed, trials, [&](Rng& rng) -> std::string {
    const CotangentPoint b = random_bbl_point(rng, e);
    const CotangentPoint b2 = chi(e, rng.scalar(), rng.scalar(), b);
    const Constructed bb = build(SpaceKind::Bbl, e), pp = build(SpaceKind::PhaseP, e, omega);
    if (!bb.contains(bb.reduce(b2))) return "chi leaves the dual bundle";
    if (!(pp.reduce(b) == pp.reduce(b2))) return "one orbit gives two phase points";
    if (!pp.contains(pp.reduce(b))) return "orbit not in the phase bundle";
    const auto any = pp.reduce(rng.coin() ? b : random_cotangent(rng, e));
    if (pp.affine().contains(pp.to_double(any)) != pp.contains(any)) return "level-set membership disagrees";
    return "";
  }));
  out.push_back(run_trials("iota-image", seed, trials, [&](Rng& rng) -> std::string {
    const std::size_t ni = e.inner().size();
    const auto w = iota(e, rng.vec(e.m), rng.vec(ni), rng.vec(e.m), rng.vec(ni));
    if (!(lifts(w) == std::pair<Scalar, Scalar>(0, 0))) return "iota leaves {l1 = 0 = l2}";
    return "";
  }));
  if (e.m == 0) {
    out.push_back({"tangent-duals", Status::Skip, "no base directions for omega_M", seed});
    return out;
  }
  out.push_back(single("tangent-duals", [&]() -> std::string {
    const Vec w = omega ? *omega : Vec::unit(e.m, 0);
    const AfftgReport r = afftg_and_duals(e, w, seed, trials < 1 ? 1 : trials);
    if (!r.iota_is_bijection) return "iota is not a bijection onto {l1 = 0 = l2}";
    if (!r.gram_is_signed_permutation) return "pairing Gram matrix is degenerate";
    if (!r.pdot_is_special_dual) return "P-dot is not the special dual";
    if (!r.adjoint_identity) return "adjoint identity fails";
    return "";
  }));
  return out;
}

Checks check_tau_kappa(const phase::NormalForm& e, std::uint64_t seed, int trials) {
  using namespace phase;
  Checks out;
  out.push_back(run_trials("tau-basis-independence", seed, trials, [&](Rng& rng) -> std::string {
    const Mat a = random_adapted(rng, e);
    if (!is_adapted(e, a)) return "generator produced a non-adapted basis";
    const ReducedCovector c(e, kChi2, random_bbl_point(rng, e));
    const auto c2 = change_basis(a, c);
    if (!(tau(c2) == change_basis(a, tau(c)))) return "tau changes with the basis " + to_string(a);
    return "";
  }));
  out.push_back(run_trials("kappa-model-direction", seed, trials, [&](Rng& rng) -> std::string {
    const NormalForm fd = e.dual();
    const Constructed cc = build(SpaceKind::ContactC, e), ccd = build(SpaceKind::ContactC, fd);
    const CotangentPoint b = random_bbl_point(rng, e);
    const auto c = cc.reduce(b);
    const auto kc = kappa(c);
    if (!ccd.contains(kc)) return "kappa leaves the dual contact bundle";
    if (!(cc.project1(c) == ccd.project2(kc)) || !(cc.project2(c) == ccd.project1(kc)))
      return "kappa is not the identity on the side bases";
    const Scalar r = rng.nonzero_scalar();
    const Vec diff = ccd.to_double(kappa(cc.reduce(chi(e, r, 0, b)))).c() - ccd.to_double(kc).c();
    if (!(diff == Scalar(-r) * *ccd.core_section))
      return "(0, " + to_string(r) + ") maps to core difference " + to_string(diff);
    return "";
  }));
  return out;
}

Checks check_naffine(const naffine::NAffine& a, std::uint64_t seed, int trials) {
  Checks out;
  const auto& e = a.space();
  out.push_back(run_trials("core-action", seed, trials, [&](Rng& rng) -> std::string {
    const Vec v = rng.vec(e.total());
    const Vec c = e.n() == 1 ? kernel_point(rng, a.l()[0]) : rng.vec(naffine::core(e).dim);
    const Vec moved = naffine::core_act(e, c, v);
    for (std::size_t i = 0; i < e.n(); ++i) {
      if (exact::dot(a.functional(i), moved) != exact::dot(a.functional(i), v))
        return "core moves l_" + std::to_string(i + 1);
      if (!(naffine::side_projection(e, i, moved) == naffine::side_projection(e, i, v)))
        return "core moves side projection " + std::to_string(i + 1);
    }
    return "";
  }));
  out.push_back(run_trials("filtration-closure", seed, trials, [&](Rng& rng) -> std::string {
    const std::size_t m = rng.uniform(0, 2);
    const auto f = random_filtered(rng, e, m), g = random_filtered(rng, e, m);
    const auto h = naffine::compose(f, g);
    const auto r = naffine::filtration_check(e, h);
    if (!r.ok) return "composite row " + std::to_string(r.coordinate) + " has " + r.monomial;
    if (!naffine::linear_blocks_invertible(e, h, rng.vec(m))) return "composite linear block singular";
    return "";
  }));
  if (!a.is_special()) {
    out.push_back({"side-bases", Status::Skip, "not special", seed});
    return out;
  }
  out.push_back(single("side-bases", [&]() -> std::string {
    const auto r = naffine::side_bases(a, naffine::bbl_n(a), seed, trials < 1 ? 1 : trials);
    if (r.passed()) return "";
    std::string w;
    for (const auto& f : r.flags) w += (w.empty() ? "" : "; ") + f;
    return w;
  }));
  return out;
}

}  // namespace daff::verify

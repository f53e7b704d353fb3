#include "daff/phase/duality.hpp"

#include "daff/error.hpp"
#include "daff/verify/generators.hpp"

namespace daff::phase {

namespace {

void require_contact(const ReducedCovector& c) {
  const auto& e = c.form();
  if (c.mask() != kChi2) throw ConstraintViolated("contact point must be a chi_2 orbit");
  if (c.rep().y[e.alpha] != 1 || c.rep().pi[e.v] != 1)
    throw ConstraintViolated("contact point must satisfy y^alpha = 1 and pi_v = 1");
}

Scalar completed_pi_alpha(const NormalForm& e, const CotangentPoint& w) {
  Scalar r = 0;
  for (std::size_t i = 0; i < e.fiber(); ++i)
    if (i != e.alpha) r -= w.y[i] * w.pi[i];
  return r;
}

Vec abar_coordinates(const NormalForm& e, const CotangentPoint& w) {
  const auto inner = e.inner();
  Vec r(e.m + inner.size());
  for (std::size_t a = 0; a < e.m; ++a) r[a] = w.x[a];
  for (std::size_t k = 0; k < inner.size(); ++k) r[e.m + k] = w.y[inner[k]];
  return r;
}

}  // namespace

ReducedCovector tau(const ReducedCovector& c) {
  require_contact(c);
  CotangentPoint w = c.rep();
  w.pi[c.form().alpha] = completed_pi_alpha(c.form(), w);
  return {c.form(), kChi1, w};
}

ReducedCovector kappa(const ReducedCovector& c) { return beta(tau(c)); }

std::pair<Vec, Vec> contact_pair(const ReducedCovector& c) {
  require_contact(c);
  CotangentPoint w = c.rep();
  w.pi[c.form().alpha] = completed_pi_alpha(c.form(), w);
  return {w.y, w.pi};
}

bool in_contact_image(const Vec& y, const Vec& pi) { return exact::dot(y, pi) == 0; }

TbarPoint tbar_canonical(const TbarPoint& v) { return tbar_act(-v.s, v); }

TbarPoint tbar_act(const Scalar& t, const TbarPoint& v) {
  return {v.base, v.dbase, Scalar(v.s + t), Scalar(v.ds - t)};
}

std::pair<Vec, Scalar> tbar_x_z(const NormalForm& e) {
  return {Vec(e.m + e.inner().size()), Scalar(-1)};
}

TbarPoint tbar_translate(const TbarPoint& v, const std::pair<Vec, Scalar>& model) {
  if (model.first.size() != v.dbase.size()) throw DimMismatch("model vector of T-bar");
  return {v.base, v.dbase + model.first, v.s, Scalar(v.ds + model.second)};
}

Scalar contact_tbar_pairing(const NormalForm& e, const ReducedCovector& c, const TbarPoint& v) {
  require_contact(c);
  const auto inner = e.inner();
  if (v.base.size() != e.m + inner.size() || v.dbase.size() != v.base.size())
    throw DimMismatch("T-bar point");
  const auto& w = c.rep();
  if (abar_coordinates(e, w) != v.base) throw BaseMismatch("contact and T-bar points lie over different points");
  // Representative of the T-bar class over s = -y^v, where pi_s = -pi_v = -1.
  const TbarPoint at = tbar_act(Scalar(-w.y[e.v]) - v.s, v);
  Scalar r = -at.ds;
  for (std::size_t a = 0; a < e.m; ++a) r += w.p[a] * v.dbase[a];
  for (std::size_t k = 0; k < inner.size(); ++k) r += w.pi[inner[k]] * v.dbase[e.m + k];
  return r;
}

dbl::DoublePoint afftg_class(const NormalForm& e, const Vec& x, const Vec& y, const Vec& xdot,
                             const Vec& ydot) {
  if (x.size() != e.m || xdot.size() != e.m || y.size() != e.fiber() || ydot.size() != e.fiber())
    throw DimMismatch("tangent vector on E");
  if (ydot[e.alpha] != 0) throw ConstraintViolated("tangent vector is not horizontal");
  const Constructed hull = build(SpaceKind::AffCtg, e);
  Vec yy(hull.side1.size()), yd(hull.side2.size());
  for (std::size_t k = 0; k < hull.side1.size(); ++k) yy[k] = y[hull.side1[k]];
  for (std::size_t k = 0; k < hull.side2.size(); ++k) yd[k] = ydot[hull.side2[k]];
  return dbl::DoublePoint(dbl::vertical_dual(hull.d), yy, xdot, yd);
}

namespace {

bool signed_permutation(const Mat& g) {
  if (g.rows() != g.cols()) return false;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    std::size_t in_row = 0, in_col = 0;
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (g(i, j) != 0) {
        if (g(i, j) != 1 && g(i, j) != -1) return false;
        ++in_row;
      }
      if (g(j, i) != 0) ++in_col;
    }
    if (in_row != 1 || in_col != 1) return false;
  }
  return true;
}

}  // namespace

AfftgReport afftg_and_duals(const NormalForm& e, const Vec& omega_m, std::uint64_t seed, int trials) {
  if (e.m == 0) throw ZeroForm("a nowhere vanishing 1-form needs a base of positive dimension");
  if (omega_m.size() != e.m) throw DimMismatch("omega_M");
  if (omega_m.is_zero()) throw ZeroForm("omega_M vanishes");
  const Constructed hull = build(SpaceKind::AffCtg, e);
  const Constructed phase = build(SpaceKind::PhaseP, e, omega_m);
  const auto sdot = dbl::vertical_dual(hull.d);
  AfftgReport r{sdot, phase.affine(), dbl::DoubleAffine(sdot, hull.l1, omega_m, hull.l2), Mat(), false, false,
                false, false};
  r.pdot_is_special_dual = r.pdot == dbl::special_dual_vertical(r.phase_p);

  // Fiber over a fixed y: hull basis (pi side, then p) against (xdot, ydot).
  const std::size_t n2 = hull.d.n2, n3 = hull.d.n3;
  const Vec y0(hull.d.n1);
  r.gram = Mat(n2 + n3, n3 + n2);
  for (std::size_t k = 0; k < n2 + n3; ++k) {
    dbl::DoublePoint xk(hull.d, y0, k < n2 ? Vec::unit(n2, k) : Vec(n2),
                        k < n2 ? Vec(n3) : Vec::unit(n3, k - n2));
    for (std::size_t l = 0; l < n3 + n2; ++l) {
      dbl::DoublePoint phi(sdot, y0, l < n3 ? Vec::unit(n3, l) : Vec(n3),
                           l < n3 ? Vec(n2) : Vec::unit(n2, l - n3));
      r.gram(k, l) = dbl::vertical_eval(phi, xk);
    }
  }
  r.gram_is_signed_permutation = signed_permutation(r.gram) && exact::rank(r.gram) == n2 + n3;

  // iota on the fiber over x = 0: columns are images of the unit vectors.
  const std::size_t ni = e.inner().size();
  const std::size_t src = 2 * ni + e.m;
  const std::size_t flat = hull.d.total();
  Mat im(flat, src);
  bool in_model = true;
  for (std::size_t j = 0; j < src; ++j) {
    Vec u = Vec::unit(src, j);
    auto w = iota(e, Vec(e.m), u.slice(0, ni), u.slice(ni, e.m), u.slice(ni + e.m, ni));
    auto p = hull.to_double(w);
    in_model = in_model && exact::dot(p.y(), hull.l1) == 0 && exact::dot(p.z(), hull.l2) == 0;
    Vec f = p.flat();
    for (std::size_t i = 0; i < flat; ++i) im(i, j) = f[i];
  }
  r.iota_is_bijection = in_model && exact::rank(im) == src && src + 2 == flat;

  // <Phi + l2, Psi> = <Phi, Psi> + 1 and the mirrored identity.
  verify::Rng rng(seed);
  const auto av = dbl::special_dual_vertical(r.phase_p);
  const auto ah = dbl::special_dual_horizontal(r.phase_p);
  bool ok = true;
  for (int k = 0; k < trials && ok; ++k) {
    auto p = verify::random_point_in(rng, av);
    dbl::DoublePoint q(ah.d(), p.z(), verify::level_point(rng, phase.l2), rng.vec(hull.d.n1));
    Scalar base = dbl::pairing(p, q, r.phase_p);
    dbl::DoublePoint shifted(av.d(), p.y(), p.z(), p.c() + phase.l2);
    dbl::DoublePoint lowered(ah.d(), q.y(), q.z(), q.c() - phase.l1);
    ok = dbl::pairing(shifted, q, r.phase_p) == base + 1 && dbl::pairing(p, lowered, r.phase_p) == base + 1;
  }
  r.adjoint_identity = ok;
  return r;
}

}  // namespace daff::phase

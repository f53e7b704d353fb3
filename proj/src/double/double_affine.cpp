#include "daff/double/double_affine.hpp"

#include <sstream>

#include "daff/error.hpp"

namespace daff::dbl {

namespace {

void require_dims(const Vec& v, std::size_t n, const char* what) {
  if (v.size() != n) {
    std::ostringstream os;
    os << what << " has size " << v.size() << ", expected " << n;
    throw DimMismatch(os.str());
  }
}

void require_shape(const Mat& m, std::size_t r, std::size_t c, const char* what) {
  if (m.rows() != r || m.cols() != c) {
    std::ostringstream os;
    os << what << " is " << m.rows() << "x" << m.cols() << ", expected " << r << "x" << c;
    throw DimMismatch(os.str());
  }
}

// Gamma(A ., B .)
Bilinear pull(const Bilinear& g, const Mat& a, const Mat& b) {
  Bilinear r(g.n3(), a.cols(), b.cols());
  for (std::size_t u = 0; u < g.n3(); ++u)
    for (std::size_t i = 0; i < a.cols(); ++i)
      for (std::size_t bb = 0; bb < b.cols(); ++bb) {
        Scalar s = 0;
        for (std::size_t ip = 0; ip < g.n1(); ++ip) {
          if (sgn(a(ip, i)) == 0) continue;
          for (std::size_t bp = 0; bp < g.n2(); ++bp) s += g(u, ip, bp) * a(ip, i) * b(bp, bb);
        }
        r(u, i, bb) = s;
      }
  return r;
}

// Sigma . Gamma
Bilinear push(const Mat& s, const Bilinear& g) {
  Bilinear r(s.rows(), g.n1(), g.n2());
  for (std::size_t u = 0; u < s.rows(); ++u)
    for (std::size_t w = 0; w < g.n3(); ++w) {
      if (sgn(s(u, w)) == 0) continue;
      for (std::size_t i = 0; i < g.n1(); ++i)
        for (std::size_t b = 0; b < g.n2(); ++b) r(u, i, b) += s(u, w) * g(w, i, b);
    }
  return r;
}

Bilinear add(Bilinear a, const Bilinear& b) {
  for (std::size_t u = 0; u < a.n3(); ++u)
    for (std::size_t i = 0; i < a.n1(); ++i)
      for (std::size_t k = 0; k < a.n2(); ++k) a(u, i, k) += b(u, i, k);
  return a;
}

// Some lambda with l_to . m = lambda l_from and l_to . shift = 1 - lambda,
// i.e. the affine map y -> shift + m y carries {l_from = 1} onto {l_to = 1}.
bool carries_level(const Vec& l_from, const Vec& l_to, const Mat& m, const Vec& shift) {
  Vec image = l_to * m;
  std::optional<Scalar> lambda;
  for (std::size_t i = 0; i < l_from.size(); ++i) {
    if (sgn(l_from[i]) != 0) {
      lambda = image[i] / l_from[i];
      break;
    }
  }
  if (!lambda || sgn(*lambda) == 0) return false;
  return image == *lambda * l_from && exact::dot(l_to, shift) == 1 - *lambda;
}

}  // namespace

DoublePoint::DoublePoint(DecomposedDouble owner, Vec y, Vec z, Vec c)
    : owner_(owner), y_(std::move(y)), z_(std::move(z)), c_(std::move(c)) {
  require_dims(y_, owner_.n1, "side coordinate y");
  require_dims(z_, owner_.n2, "side coordinate z");
  require_dims(c_, owner_.n3, "core coordinate c");
}

DoublePoint DoublePoint::zero(DecomposedDouble owner) {
  return DoublePoint(owner, Vec(owner.n1), Vec(owner.n2), Vec(owner.n3));
}

DoublePoint DoublePoint::from_flat(DecomposedDouble owner, const Vec& flat) {
  require_dims(flat, owner.total(), "flat point");
  return DoublePoint(owner, flat.slice(0, owner.n1), flat.slice(owner.n1, owner.n2),
                     flat.slice(owner.n1 + owner.n2, owner.n3));
}

Vec DoublePoint::flat() const { return Vec::concat(Vec::concat(y_, z_), c_); }

DoubleMorphism DoubleMorphism::identity(const DecomposedDouble& d) {
  return block_diagonal(d, Mat::identity(d.n1), Mat::identity(d.n2), Mat::identity(d.n3));
}

DoubleMorphism DoubleMorphism::block_diagonal(const DecomposedDouble& source, Mat a, Mat b,
                                              Mat sigma) {
  DecomposedDouble target{a.rows(), b.rows(), sigma.rows()};
  DoubleMorphism f{source,
                   target,
                   std::move(a),
                   std::move(b),
                   std::move(sigma),
                   Bilinear(target.n3, source.n1, source.n2),
                   Vec(target.n1),
                   Vec(target.n2),
                   Vec(target.n3),
                   Mat(target.n3, source.n1),
                   Mat(target.n3, source.n2)};
  f.validate();
  return f;
}

void DoubleMorphism::validate() const {
  require_shape(a, target.n1, source.n1, "A");
  require_shape(b, target.n2, source.n2, "B");
  require_shape(sigma, target.n3, source.n3, "Sigma");
  require_shape(gamma_y, target.n3, source.n1, "gamma_y");
  require_shape(gamma_z, target.n3, source.n2, "gamma_z");
  require_dims(alpha0, target.n1, "alpha0");
  require_dims(beta0, target.n2, "beta0");
  require_dims(gamma00, target.n3, "gamma00");
  if (gamma.n3() != target.n3 || gamma.n1() != source.n1 || gamma.n2() != source.n2)
    throw DimMismatch("Gamma shape");
}

bool DoubleMorphism::is_pure() const {
  return alpha0.is_zero() && beta0.is_zero() && gamma00.is_zero() && gamma_y.is_zero() &&
         gamma_z.is_zero();
}

bool DoubleMorphism::is_invertible() const {
  auto inv = [](const Mat& m) { return m.rows() == m.cols() && sgn(exact::det(m)) != 0; };
  return inv(a) && inv(b) && inv(sigma);
}

DoublePoint DoubleMorphism::apply(const DoublePoint& p) const {
  if (!(p.owner() == source)) throw DimMismatch("point is not in the morphism's source");
  Vec c = gamma00 + gamma_y * p.y() + gamma_z * p.z() + exact::bilinear_apply(gamma, p.y(), p.z()) +
          sigma * p.c();
  return DoublePoint(target, alpha0 + a * p.y(), beta0 + b * p.z(), std::move(c));
}

DoubleMorphism DoubleMorphism::then(const DoubleMorphism& next) const {
  if (!(next.source == target)) throw DimMismatch("morphisms are not composable");
  const DoubleMorphism& g = next;
  DoubleMorphism r{source,
                   g.target,
                   g.a * a,
                   g.b * b,
                   g.sigma * sigma,
                   add(pull(g.gamma, a, b), push(g.sigma, gamma)),
                   g.alpha0 + g.a * alpha0,
                   g.beta0 + g.b * beta0,
                   g.gamma00 + g.gamma_y * alpha0 + g.gamma_z * beta0 +
                       exact::bilinear_apply(g.gamma, alpha0, beta0) + g.sigma * gamma00,
                   g.gamma_y * a + g.gamma.fix_right(beta0) * a + g.sigma * gamma_y,
                   g.gamma_z * b + g.gamma.fix_left(alpha0) * b + g.sigma * gamma_z};
  return r;
}

DoubleAffine::DoubleAffine(DecomposedDouble d, Vec l1, Vec l2, std::optional<Vec> sigma)
    : d_(d), l1_(std::move(l1)), l2_(std::move(l2)), sigma_(std::move(sigma)) {
  require_dims(l1_, d_.n1, "l1");
  require_dims(l2_, d_.n2, "l2");
  if (l1_.is_zero()) throw ZeroFunctional("l1 vanishes");
  if (l2_.is_zero()) throw ZeroFunctional("l2 vanishes");
  if (sigma_) {
    require_dims(*sigma_, d_.n3, "sigma");
    if (sigma_->is_zero()) throw ConstraintViolated("core section sigma is zero");
  }
}

const Vec& DoubleAffine::sigma() const {
  if (!sigma_) throw NotSpecial("double affine space has no core section");
  return *sigma_;
}

bool DoubleAffine::contains(const DoublePoint& p) const {
  if (!(p.owner() == d_)) throw DimMismatch("point is not in the ambient double space");
  return exact::dot(l1_, p.y()) == 1 && exact::dot(l2_, p.z()) == 1;
}

DoublePoint aff1(const DoublePoint& p, const DoublePoint& q, const Scalar& lambda) {
  if (!(p.owner() == q.owner())) throw DimMismatch("points in different double spaces");
  if (!(p.y() == q.y())) throw FiberMismatch("aff1 needs points over the same y");
  return DoublePoint(p.owner(), p.y(), lambda * p.z() + (1 - lambda) * q.z(),
                     lambda * p.c() + (1 - lambda) * q.c());
}

DoublePoint aff2(const DoublePoint& p, const DoublePoint& q, const Scalar& lambda) {
  if (!(p.owner() == q.owner())) throw DimMismatch("points in different double spaces");
  if (!(p.z() == q.z())) throw FiberMismatch("aff2 needs points over the same z");
  return DoublePoint(p.owner(), lambda * p.y() + (1 - lambda) * q.y(), p.z(),
                     lambda * p.c() + (1 - lambda) * q.c());
}

bool ModelVV::contains(const DoublePoint& p) const {
  return sgn(exact::dot(l1, p.y())) == 0 && sgn(exact::dot(l2, p.z())) == 0;
}

DoublePoint ModelVV::embed(const DoublePoint& local) const {
  if (!(local.owner() == dims)) throw DimMismatch("point is not in the model");
  DecomposedDouble d{side1.rows(), side2.rows(), core.rows()};
  return DoublePoint(d, side1 * local.y(), side2 * local.z(), core * local.c());
}

ModelVV model_vv(const DoubleAffine& a) {
  const auto& d = a.d();
  Mat k1 = exact::nullspace(Mat::from_rows({a.l1()}, d.n1));
  Mat k2 = exact::nullspace(Mat::from_rows({a.l2()}, d.n2));
  return ModelVV{{k1.cols(), k2.cols(), d.n3}, k1, k2, Mat::identity(d.n3), a.l1(), a.l2()};
}

Hull hull(const DoubleAffine& a) { return Hull{a.d(), a.l1(), a.l2()}; }

DecomposedDouble vertical_dual(const DecomposedDouble& d) { return {d.n1, d.n3, d.n2}; }
DecomposedDouble horizontal_dual(const DecomposedDouble& d) { return {d.n3, d.n2, d.n1}; }
DecomposedDouble flip(const DecomposedDouble& d) { return {d.n2, d.n1, d.n3}; }

Scalar vertical_eval(const DoublePoint& phi, const DoublePoint& x) {
  if (!(phi.owner() == vertical_dual(x.owner())))
    throw DimMismatch("functional is not in the vertical dual");
  if (!(phi.y() == x.y())) throw FiberMismatch("vertical dual point over a different y");
  return exact::dot(phi.c(), x.z()) + exact::dot(phi.z(), x.c());
}

Scalar horizontal_eval(const DoublePoint& psi, const DoublePoint& x) {
  if (!(psi.owner() == horizontal_dual(x.owner())))
    throw DimMismatch("functional is not in the horizontal dual");
  if (!(psi.z() == x.z())) throw FiberMismatch("horizontal dual point over a different z");
  return exact::dot(psi.c(), x.y()) + exact::dot(psi.y(), x.c());
}

namespace {

// Solves for the dual point over `base` whose evaluation reproduces f on
// the fiber basis. `make` builds a dual point from its free coordinates,
// `fiber` builds the k-th fiber basis point (k = -1 gives the fiber origin).
DoublePoint represent(std::size_t free_dim, const std::function<DoublePoint(const Vec&)>& make,
                      const std::function<DoublePoint(long)>& fiber,
                      const std::function<Scalar(const DoublePoint&, const DoublePoint&)>& ev,
                      const FiberFunctional& f) {
  if (sgn(f(fiber(-1))) != 0) throw InvariantViolation("functional is not linear on the fiber");
  Mat gram(free_dim, free_dim);
  Vec rhs(free_dim);
  for (std::size_t j = 0; j < free_dim; ++j) {
    DoublePoint xj = fiber(static_cast<long>(j));
    rhs[j] = f(xj);
    for (std::size_t k = 0; k < free_dim; ++k) gram(j, k) = ev(make(Vec::unit(free_dim, k)), xj);
  }
  return make(exact::mat_inverse(gram) * rhs);
}

}  // namespace

DoublePoint represent_vertical(const DecomposedDouble& d, const Vec& y, const FiberFunctional& f) {
  require_dims(y, d.n1, "base point y");
  const DecomposedDouble dv = vertical_dual(d);
  auto make = [&](const Vec& u) {
    return DoublePoint(dv, y, u.slice(0, d.n3), u.slice(d.n3, d.n2));
  };
  auto fiber = [&](long k) {
    Vec w(d.n2 + d.n3);
    if (k >= 0) w[static_cast<std::size_t>(k)] = 1;
    return DoublePoint(d, y, w.slice(0, d.n2), w.slice(d.n2, d.n3));
  };
  return represent(d.n2 + d.n3, make, fiber, vertical_eval, f);
}

DoublePoint represent_horizontal(const DecomposedDouble& d, const Vec& z, const FiberFunctional& f) {
  require_dims(z, d.n2, "base point z");
  const DecomposedDouble dh = horizontal_dual(d);
  auto make = [&](const Vec& u) {
    return DoublePoint(dh, u.slice(0, d.n3), z, u.slice(d.n3, d.n1));
  };
  auto fiber = [&](long k) {
    Vec w(d.n1 + d.n3);
    if (k >= 0) w[static_cast<std::size_t>(k)] = 1;
    return DoublePoint(d, w.slice(0, d.n1), z, w.slice(d.n1, d.n3));
  };
  return represent(d.n1 + d.n3, make, fiber, horizontal_eval, f);
}

Scalar pairing(const DoublePoint& phi, const DoublePoint& psi, const DecomposedDouble& d) {
  if (!(phi.owner() == vertical_dual(d)) || !(psi.owner() == horizontal_dual(d)))
    throw DimMismatch("pairing arguments are not in the two duals");
  // Both must lie over the same element of V3*.
  if (!(phi.z() == psi.y())) throw BaseMismatch("core-dual projections differ");
  auto value_at = [&](const Vec& c) -> Scalar {
    DoublePoint x(d, phi.y(), psi.z(), c);
    return vertical_eval(phi, x) - horizontal_eval(psi, x);
  };
  const Scalar value = value_at(Vec(d.n3));
  for (std::size_t u = 0; u < d.n3; ++u)
    if (value_at(Vec::unit(d.n3, u)) != value)
      throw InvariantViolation("pairing depends on the interpolating point");
  return value;
}

Scalar pairing(const DoublePoint& phi, const DoublePoint& psi, const DoubleAffine& a) {
  return pairing(phi, psi, a.d());
}

DoubleAffine special_dual_vertical(const DoubleAffine& a) {
  return DoubleAffine(vertical_dual(a.d()), a.l1(), a.sigma(), a.l2());
}

DoubleAffine special_dual_horizontal(const DoubleAffine& a) {
  return DoubleAffine(horizontal_dual(a.d()), a.sigma(), a.l2(), a.l1());
}

DoubleAffine flip(const DoubleAffine& a) {
  return DoubleAffine(flip(a.d()), a.l2(), a.l1(), a.sigma_opt());
}

DoubleAffine adjoint(const DoubleAffine& a) {
  return DoubleAffine(a.d(), a.l1(), a.l2(), -a.sigma());
}

bool maps_onto(const DoubleMorphism& f, const DoubleAffine& from, const DoubleAffine& to) {
  if (!(f.source == from.d()) || !(f.target == to.d()) || !f.is_invertible()) return false;
  if (!carries_level(from.l1(), to.l1(), f.a, f.alpha0)) return false;
  if (!carries_level(from.l2(), to.l2(), f.b, f.beta0)) return false;
  if (from.is_special() != to.is_special()) return false;
  return !from.is_special() || f.sigma * from.sigma() == to.sigma();
}

HvhResult hvh_iso(const DoubleAffine& a) {
  if (!a.is_special()) throw NotSpecial("hvh_iso needs a core section");
  const DecomposedDouble d = a.d();
  const DecomposedDouble e = horizontal_dual(d);      // D^H
  const DecomposedDouble f = vertical_dual(e);        // D^{HV}
  const DecomposedDouble g = horizontal_dual(f);      // D^{HVH}
  const DecomposedDouble df = flip(d);
  if (!(g == df)) throw InvariantViolation("D^{HVH} and the flip have different dimensions");

  // x in D, seen in D^{HH} by evaluation, pairs with D^{HV} through the
  // pairing of D^H; that functional is a point of D^{HVH}.
  auto natural = [&](const DoublePoint& x) {
    DoublePoint xx = represent_horizontal(
        e, x.z(), [&](const DoublePoint& eta) { return horizontal_eval(eta, x); });
    return represent_horizontal(
        f, xx.y(), [&](const DoublePoint& phi) { return pairing(phi, xx, e); });
  };
  const std::size_t n = d.total();
  Mat m(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec col = natural(DoublePoint::from_flat(d, Vec::unit(n, k))).flat();
    for (std::size_t i = 0; i < n; ++i) m(i, k) = col[i];
  }
  // D^{HVH} -> D -> D^f, the last step reordering (y, z, c) to (z, y, c).
  Mat reorder(n, n);
  for (std::size_t i = 0; i < d.n2; ++i) reorder(i, d.n1 + i) = 1;
  for (std::size_t i = 0; i < d.n1; ++i) reorder(d.n2 + i, i) = 1;
  for (std::size_t i = 0; i < d.n3; ++i) reorder(d.n1 + d.n2 + i, d.n1 + d.n2 + i) = 1;
  Mat alpha = reorder * exact::mat_inverse(m);

  Mat side1 = alpha.block(0, 0, g.n1, g.n1);
  Mat side2 = alpha.block(g.n1, g.n1, g.n2, g.n2);
  Mat core = alpha.block(g.n1 + g.n2, g.n1 + g.n2, g.n3, g.n3);
  Mat diag(n, n);
  diag.set_block(0, 0, side1);
  diag.set_block(g.n1, g.n1, side2);
  diag.set_block(g.n1 + g.n2, g.n1 + g.n2, core);
  if (!(diag == alpha)) throw InvariantViolation("HVH isomorphism mixes components");

  HvhResult r{special_dual_horizontal(special_dual_vertical(special_dual_horizontal(a))),
              adjoint(flip(a)), DoubleMorphism::block_diagonal(g, side1, side2, core)};
  if (!maps_onto(r.iso, r.hvh, r.target))
    throw InvariantViolation("HVH isomorphism does not carry A^{HVH} onto the adjoint flip");
  return r;
}

}  // namespace daff::dbl

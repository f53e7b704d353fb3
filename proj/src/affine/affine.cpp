#include "daff/affine/affine.hpp"

#include "daff/error.hpp"

namespace daff::affine {

BispecialRep::BispecialRep(std::size_t hull_dim, Vec alpha, std::optional<Vec> v)
    : hull_dim_(hull_dim), alpha_(std::move(alpha)), v_(std::move(v)) {
  if (alpha_.size() != hull_dim_) throw DimMismatch("alpha does not match hull dimension");
  if (alpha_.is_zero()) throw ZeroFunctional("alpha vanishes");
  if (v_) {
    if (v_->size() != hull_dim_) throw DimMismatch("v does not match hull dimension");
    if (v_->is_zero()) throw ConstraintViolated("distinguished vector is zero");
    if (sgn(exact::dot(alpha_, *v_)) != 0) throw ConstraintViolated("alpha(v) != 0");
  }
}

const Vec& BispecialRep::special_vector() const {
  if (!v_) throw NotSpecial("space has no distinguished vector");
  return *v_;
}

Mat BispecialRep::model_basis() const {
  return exact::nullspace(Mat::from_rows({alpha_}, hull_dim_));
}

AffinePoint::AffinePoint(BispecialRep owner, Vec coords)
    : owner_(std::move(owner)), coords_(std::move(coords)) {
  if (coords_.size() != owner_.hull_dim()) throw DimMismatch("point dimension");
  if (!owner_.contains(coords_)) throw ConstraintViolated("point off the level alpha = 1");
}

AffineMap::AffineMap(BispecialRep source, BispecialRep target, Mat l, bool special)
    : source_(std::move(source)), target_(std::move(target)), l_(std::move(l)), special_(special) {
  if (l_.rows() != target_.hull_dim() || l_.cols() != source_.hull_dim())
    throw DimMismatch("affine map shape");
  if (target_.alpha() * l_ != source_.alpha())
    throw ConstraintViolated("map does not preserve the level alpha = 1");
  if (special_ && l_ * source_.special_vector() != target_.special_vector())
    throw ConstraintViolated("map does not preserve the distinguished vector");
}

AffinePoint AffineMap::apply(const AffinePoint& p) const {
  if (!(p.owner() == source_)) throw SpaceMismatch("point not in the map's source");
  return AffinePoint(target_, l_ * p.coords());
}

Vec AffineMap::apply_model(const Vec& v) const {
  if (!source_.in_model(v)) throw ConstraintViolated("vector not in the source model");
  return l_ * v;
}

AffinePoint aff(const AffinePoint& a, const AffinePoint& b, const Scalar& lambda) {
  if (!(a.owner() == b.owner())) throw SpaceMismatch("aff of points in different spaces");
  return AffinePoint(a.owner(), lambda * a.coords() + (1 - lambda) * b.coords());
}

Vec model_vector(const AffinePoint& a, const AffinePoint& b) {
  if (!(a.owner() == b.owner())) throw SpaceMismatch("model vector between different spaces");
  return b.coords() - a.coords();
}

AffinePoint translate(const AffinePoint& a, const Vec& v) {
  if (!a.owner().in_model(v)) throw ConstraintViolated("translation vector not in model");
  return AffinePoint(a.owner(), a.coords() + v);
}

BispecialRep level_set_hull(std::size_t v_dim, const Vec& l) {
  if (l.size() != v_dim) throw DimMismatch("functional does not match dimension");
  if (l.is_zero()) throw ZeroFunctional("level set of the zero functional");
  return BispecialRep(v_dim, l);
}

BispecialRep special_dual(const BispecialRep& a) {
  // Hull of the dual is the dual hull in the dual basis; its functional is
  // evaluation at v_A and its distinguished vector is alpha_A.
  const Vec& v = a.special_vector();
  return BispecialRep(a.hull_dim(), v, a.alpha());
}

BispecialRep adjoint(const BispecialRep& a) {
  return BispecialRep(a.hull_dim(), a.alpha(), -a.special_vector());
}

bool is_isomorphism(const Mat& l, const BispecialRep& a, const BispecialRep& b) {
  if (l.rows() != b.hull_dim() || l.cols() != a.hull_dim() || l.rows() != l.cols()) return false;
  if (sgn(exact::det(l)) == 0) return false;
  if (b.alpha() * l != a.alpha()) return false;
  if (a.is_special() != b.is_special()) return false;
  if (a.is_special() && l * *a.v() != *b.v()) return false;
  return true;
}

Mat double_dual_evaluation(const BispecialRep& a) {
  // In dual-of-dual bases, ev_x(f) = f(x) has the identity matrix.
  return Mat::identity(a.hull_dim());
}

}  // namespace daff::affine

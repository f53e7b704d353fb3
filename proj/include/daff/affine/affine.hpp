#pragma once

#include <optional>

#include "daff/exact/linalg.hpp"

namespace daff::affine {

using exact::Mat;
using exact::Scalar;
using exact::Vec;

// An affine space stored through its vector hull: A = {alpha = 1}, model
// ker alpha, and for special spaces a distinguished model vector v.
class BispecialRep {
 public:
  BispecialRep(std::size_t hull_dim, Vec alpha, std::optional<Vec> v = std::nullopt);

  std::size_t hull_dim() const { return hull_dim_; }
  const Vec& alpha() const { return alpha_; }
  const std::optional<Vec>& v() const { return v_; }
  bool is_special() const { return v_.has_value(); }
  const Vec& special_vector() const;

  bool contains(const Vec& x) const { return exact::dot(alpha_, x) == 1; }
  bool in_model(const Vec& x) const { return sgn(exact::dot(alpha_, x)) == 0; }
  // Columns form a basis of the model space ker alpha.
  Mat model_basis() const;

  friend bool operator==(const BispecialRep& a, const BispecialRep& b) {
    return a.hull_dim_ == b.hull_dim_ && a.alpha_ == b.alpha_ && a.v_ == b.v_;
  }

 private:
  std::size_t hull_dim_;
  Vec alpha_;
  std::optional<Vec> v_;
};

class AffinePoint {
 public:
  AffinePoint(BispecialRep owner, Vec coords);

  const BispecialRep& owner() const { return owner_; }
  const Vec& coords() const { return coords_; }

  friend bool operator==(const AffinePoint& a, const AffinePoint& b) {
    return a.owner_ == b.owner_ && a.coords_ == b.coords_;
  }

 private:
  BispecialRep owner_;
  Vec coords_;
};

// Linear map of hulls preserving the level alpha = 1; special maps also
// send v_source to v_target.
class AffineMap {
 public:
  AffineMap(BispecialRep source, BispecialRep target, Mat l, bool special = false);

  const BispecialRep& source() const { return source_; }
  const BispecialRep& target() const { return target_; }
  const Mat& linear() const { return l_; }
  bool is_special() const { return special_; }

  AffinePoint apply(const AffinePoint& p) const;
  Vec apply_model(const Vec& v) const;

 private:
  BispecialRep source_, target_;
  Mat l_;
  bool special_;
};

AffinePoint aff(const AffinePoint& a, const AffinePoint& b, const Scalar& lambda);
Vec model_vector(const AffinePoint& a, const AffinePoint& b);
AffinePoint translate(const AffinePoint& a, const Vec& v);

BispecialRep level_set_hull(std::size_t v_dim, const Vec& l);
BispecialRep special_dual(const BispecialRep& a);
BispecialRep adjoint(const BispecialRep& a);

// True when l is invertible, alpha_b o l = alpha_a and, for special spaces,
// l v_a = v_b.
bool is_isomorphism(const Mat& l, const BispecialRep& a, const BispecialRep& b);

// Evaluation map from the hull of a into the hull of special_dual(special_dual(a)).
Mat double_dual_evaluation(const BispecialRep& a);

}  // namespace daff::affine

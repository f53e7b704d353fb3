#pragma once

#include <functional>
#include <optional>

#include "daff/exact/linalg.hpp"

// Double vector spaces over a point in decomposed form V1 x V2 x V3 with
// coordinates (y, z, c) of degrees (0,1), (1,0), (1,1).
namespace daff::dbl {

using exact::Bilinear;
using exact::Mat;
using exact::Scalar;
using exact::Vec;

struct DecomposedDouble {
  std::size_t n1 = 0, n2 = 0, n3 = 0;

  std::size_t total() const { return n1 + n2 + n3; }
  friend bool operator==(const DecomposedDouble&, const DecomposedDouble&) = default;
};

class DoublePoint {
 public:
  DoublePoint(DecomposedDouble owner, Vec y, Vec z, Vec c);
  static DoublePoint zero(DecomposedDouble owner);
  static DoublePoint from_flat(DecomposedDouble owner, const Vec& flat);

  const DecomposedDouble& owner() const { return owner_; }
  const Vec& y() const { return y_; }
  const Vec& z() const { return z_; }
  const Vec& c() const { return c_; }
  Vec flat() const;

  friend bool operator==(const DoublePoint&, const DoublePoint&) = default;

 private:
  DecomposedDouble owner_;
  Vec y_, z_, c_;
};

// Constant-coefficient morphism of trivial double affine bundles:
//   y' = alpha0 + A y
//   z' = beta0 + B z
//   c' = gamma00 + Gy y + Gz z + Gamma(y, z) + Sigma c
struct DoubleMorphism {
  DecomposedDouble source, target;
  Mat a, b, sigma;
  Bilinear gamma;
  Vec alpha0, beta0, gamma00;
  Mat gamma_y, gamma_z;

  static DoubleMorphism identity(const DecomposedDouble& d);
  // Zero affine parts and zero Gamma.
  static DoubleMorphism block_diagonal(const DecomposedDouble& source, Mat a, Mat b, Mat sigma);

  void validate() const;
  bool is_pure() const;
  DoublePoint apply(const DoublePoint& p) const;
  // next o this
  DoubleMorphism then(const DoubleMorphism& next) const;
  bool is_invertible() const;

  friend bool operator==(const DoubleMorphism&, const DoubleMorphism&) = default;
};

// {l1(y) = 1, l2(z) = 1} inside D, special when sigma is present.
class DoubleAffine {
 public:
  DoubleAffine(DecomposedDouble d, Vec l1, Vec l2, std::optional<Vec> sigma = std::nullopt);

  const DecomposedDouble& d() const { return d_; }
  const Vec& l1() const { return l1_; }
  const Vec& l2() const { return l2_; }
  const std::optional<Vec>& sigma_opt() const { return sigma_; }
  bool is_special() const { return sigma_.has_value(); }
  const Vec& sigma() const;

  bool contains(const DoublePoint& p) const;

  friend bool operator==(const DoubleAffine&, const DoubleAffine&) = default;

 private:
  DecomposedDouble d_;
  Vec l1_, l2_;
  std::optional<Vec> sigma_;
};

// aff1 combines points of one pi_1 fiber (equal y); aff2 of one pi_2 fiber.
DoublePoint aff1(const DoublePoint& p, const DoublePoint& q, const Scalar& lambda);
DoublePoint aff2(const DoublePoint& p, const DoublePoint& q, const Scalar& lambda);

struct ModelVV {
  DecomposedDouble dims;   // (n1 - 1, n2 - 1, n3)
  Mat side1, side2, core;  // columns embed each component into D
  Vec l1, l2;

  bool contains(const DoublePoint& p) const;
  DoublePoint embed(const DoublePoint& local) const;
};

struct Hull {
  DecomposedDouble d;
  Vec l1, l2;
};

ModelVV model_vv(const DoubleAffine& a);
Hull hull(const DoubleAffine& a);

// V(D) = (V1, V3*; core V2*): point (y; gamma; zeta) acts on the pi_1 fiber
// over y by zeta(z) + gamma(c).
// H(D) = (V3*, V2; core V1*): point (gamma'; z; eta) acts on the pi_2 fiber
// over z by eta(y) + gamma'(c).
DecomposedDouble vertical_dual(const DecomposedDouble& d);
DecomposedDouble horizontal_dual(const DecomposedDouble& d);
DecomposedDouble flip(const DecomposedDouble& d);

Scalar vertical_eval(const DoublePoint& phi, const DoublePoint& x);
Scalar horizontal_eval(const DoublePoint& psi, const DoublePoint& x);

using FiberFunctional = std::function<Scalar(const DoublePoint&)>;
// The point of V(d) over y that represents a linear functional on the pi_1
// fiber over y; found by solving against the evaluation Gram matrix.
DoublePoint represent_vertical(const DecomposedDouble& d, const Vec& y, const FiberFunctional& f);
DoublePoint represent_horizontal(const DecomposedDouble& d, const Vec& z, const FiberFunctional& f);

// <Phi, Psi> = Phi(x) - Psi(x) for x over (d1, d2); Phi in V(D), Psi in H(D).
Scalar pairing(const DoublePoint& phi, const DoublePoint& psi, const DecomposedDouble& d);
Scalar pairing(const DoublePoint& phi, const DoublePoint& psi, const DoubleAffine& a);

DoubleAffine special_dual_vertical(const DoubleAffine& a);
DoubleAffine special_dual_horizontal(const DoubleAffine& a);
DoubleAffine flip(const DoubleAffine& a);
DoubleAffine adjoint(const DoubleAffine& a);

// True when f is invertible and maps the level set and core section of
// `from` onto those of `to`.
bool maps_onto(const DoubleMorphism& f, const DoubleAffine& from, const DoubleAffine& to);

struct HvhResult {
  DoubleAffine hvh;        // A^{HVH}
  DoubleAffine target;     // adjoint(flip(A))
  DoubleMorphism iso;      // A^{HVH} -> target
};

HvhResult hvh_iso(const DoubleAffine& a);

}  // namespace daff::dbl

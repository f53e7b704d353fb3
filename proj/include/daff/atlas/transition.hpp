#pragma once

#include <functional>
#include <optional>
#include <string>

#include "daff/double/double_affine.hpp"
#include "daff/exact/base_map.hpp"
#include "daff/exact/poly_matrix.hpp"

namespace daff::atlas {

using exact::BaseMap;
using exact::Mat;
using exact::Poly;
using exact::PolyBilinear;
using exact::PolyMat;
using exact::PolyVec;
using exact::Scalar;
using exact::Vec;

struct FiberDims {
  std::size_t n1 = 0, n2 = 0, n3 = 0;
  friend bool operator==(const FiberDims&, const FiberDims&) = default;
};

// Change of adapted coordinates between two charts, coefficients being
// polynomials in the source chart's base coordinates:
//   x' = P x + q
//   y' = alpha0 + alpha y
//   z' = beta0 + beta z
//   c' = gamma00 + gamma_y y + gamma_z z + gamma_yz(y, z) + sigma c
struct TransitionData {
  BaseMap base;
  PolyVec alpha0;
  PolyMat alpha;
  PolyVec beta0;
  PolyMat beta;
  PolyVec gamma00;
  PolyMat gamma_y, gamma_z;
  PolyBilinear gamma_yz;
  PolyMat sigma;

  static TransitionData identity(std::size_t m, const FiberDims& dims);
  // All fiber coefficients zero except the identity blocks.
  static TransitionData linear(BaseMap base, PolyMat alpha, PolyMat beta, PolyMat sigma);

  std::size_t base_dim() const { return base.dim(); }
  FiberDims dims() const { return {alpha.rows(), beta.rows(), sigma.rows()}; }
  void validate() const;

  // Coefficients evaluated at a base point: the fiber map over x.
  dbl::DoubleMorphism at(const Vec& x) const;
  // Pulls every coefficient back along a base map (coefficients as
  // functions on that map's source).
  TransitionData pulled_back(const BaseMap& b) const;

  friend bool operator==(const TransitionData&, const TransitionData&) = default;
};

using CoefficientVisitor = std::function<void(const std::string& name, const Poly& value)>;
// Visits every fiber coefficient with a stable name such as "gamma_yz[0][1][0]".
void for_each_coefficient(const TransitionData& t, const CoefficientVisitor& visit);

struct Difference {
  std::string coefficient;
  std::string expected, actual;
};
// First coefficient where the two transitions differ, in visiting order.
std::optional<Difference> first_difference(const TransitionData& expected,
                                           const TransitionData& actual);

// t_ac = t_bc o t_ab.
TransitionData compose(const TransitionData& t_ab, const TransitionData& t_bc);
// Requires alpha, beta, sigma with nonzero constant determinants.
TransitionData inverse(const TransitionData& t);

// Drops the affine parts that the first (resp. second) model construction
// linearizes: induce_v1 keeps alpha0 and gamma_z, induce_v2 keeps beta0 and
// gamma_y, induce_model keeps neither.
TransitionData induce_v1(const TransitionData& t);
TransitionData induce_v2(const TransitionData& t);
TransitionData induce_model(const TransitionData& t);
// Hull transition on fibers (n1+1, n2+1, n3): index 0 on the y side is t,
// index 0 on the z side is s, both invariant.
TransitionData induce_hull(const TransitionData& t);
// Sets the hull coordinates t and s to constants, recovering an ordinary
// transition on (n1, n2, n3).
TransitionData restrict_hull(const TransitionData& hull, const Scalar& s, const Scalar& t);

}  // namespace daff::atlas

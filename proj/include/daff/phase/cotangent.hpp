#pragma once

#include <utility>

#include "daff/exact/linalg.hpp"

namespace daff::phase {

using exact::Mat;
using exact::Scalar;
using exact::Vec;

// Vector hull E of a special affine bundle over Q^m in normal form: fiber
// coordinates y^0..y^{n+1}, A = {y^alpha = 1}, v_A = e_v. The bundle itself
// uses alpha = n+1, v = 0; its affine dual swaps the two indices.
struct NormalForm {
  std::size_t m = 0, n = 0;
  std::size_t alpha = 1, v = 0;

  static NormalForm of(std::size_t m, std::size_t n) { return {m, n, n + 1, 0}; }
  NormalForm dual() const { return {m, n, v, alpha}; }
  std::size_t fiber() const { return n + 2; }
  // Fiber indices other than alpha and v, in increasing order.
  std::vector<std::size_t> inner() const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

// (x, y; p, pi) on T*E.
struct CotangentPoint {
  Vec x, y, p, pi;
  friend bool operator==(const CotangentPoint&, const CotangentPoint&) = default;
};

void check_point(const NormalForm& e, const CotangentPoint& w);

// chi_1 translates y^v, chi_2 translates pi_alpha.
enum Mask : unsigned { kNoMask = 0, kChi1 = 1, kChi2 = 2, kChi = 3 };

// Orbit of a cotangent point under the masked actions, stored by its
// canonical representative (masked coordinates set to zero).
class ReducedCovector {
 public:
  ReducedCovector(NormalForm e, unsigned mask, CotangentPoint w);

  const NormalForm& form() const { return e_; }
  unsigned mask() const { return mask_; }
  const CotangentPoint& rep() const { return w_; }
  bool masks(Mask m) const { return (mask_ & m) != 0; }
  // Coarser orbit.
  ReducedCovector project(unsigned mask) const { return {e_, mask_ | mask, w_}; }

  friend bool operator==(const ReducedCovector&, const ReducedCovector&) = default;

 private:
  NormalForm e_;
  unsigned mask_;
  CotangentPoint w_;
};

CotangentPoint chi(const NormalForm& e, const Scalar& s, const Scalar& t, const CotangentPoint& w);

// (l1~, l2~) = (y^alpha, pi_v); constant on chi orbits.
std::pair<Scalar, Scalar> lifts(const ReducedCovector& w);

// h^1 scales (p, pi), h^2 scales (y, p).
CotangentPoint homothety(int which, const Scalar& t, const CotangentPoint& w);

// The isomorphism T*E -> T*E* onto the dual normal form:
// (x, y; p, pi) -> (x, pi; -p, y). Masks swap roles.
CotangentPoint beta(const CotangentPoint& w);
ReducedCovector beta(const ReducedCovector& w);

// Change of adapted fiber basis: pi' = a pi, y' = a^{-T} y. Admissible when
// it fixes v_A and alpha_A: a_vv = a_aa = 1, a_vj = 0 (j != v),
// a_ia = 0 (i != alpha).
bool is_adapted(const NormalForm& e, const Mat& a);
CotangentPoint change_basis(const Mat& a, const CotangentPoint& w);
ReducedCovector change_basis(const Mat& a, const ReducedCovector& w);

}  // namespace daff::phase

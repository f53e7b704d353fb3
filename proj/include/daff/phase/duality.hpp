#pragma once

#include "daff/phase/spaces.hpp"

namespace daff::phase {

// Contact point (chi_2 orbit in Bbl) -> chi_1 orbit in Bbl, with
// pi_alpha = -sum_{i != alpha} y^i pi_i.
ReducedCovector tau(const ReducedCovector& c);
// beta o tau: contact bundle of A to that of its affine dual.
ReducedCovector kappa(const ReducedCovector& c);

// The pair (a, f) in A x A^# under a contact point, f completed by tau;
// its image lies in {f(a) = 0}.
std::pair<Vec, Vec> contact_pair(const ReducedCovector& c);
bool in_contact_image(const Vec& y, const Vec& pi);

// T Z for the AV-bundle A -> A-bar: base coordinates (x, y^inner), fiber
// s = -y^v, modulo (s, sdot) ~ (s + t, sdot - t).
struct TbarPoint {
  Vec base, dbase;
  Scalar s, ds;
  friend bool operator==(const TbarPoint&, const TbarPoint&) = default;
};

TbarPoint tbar_canonical(const TbarPoint& v);
TbarPoint tbar_act(const Scalar& t, const TbarPoint& v);
// X_Z = -d/ds as a model vector (dbase, ds).
std::pair<Vec, Scalar> tbar_x_z(const NormalForm& e);
TbarPoint tbar_translate(const TbarPoint& v, const std::pair<Vec, Scalar>& model);
// Pairing with a contact point over the same point of A-bar.
Scalar contact_tbar_pairing(const NormalForm& e, const ReducedCovector& c, const TbarPoint& v);

// Horizontal tangent vector (x, y; xdot, ydot) with ydot^alpha = 0, as a
// point of the vertical dual of the hull of the phase bundle.
dbl::DoublePoint afftg_class(const NormalForm& e, const Vec& x, const Vec& y, const Vec& xdot,
                             const Vec& ydot);

struct AfftgReport {
  dbl::DecomposedDouble sdot;  // vertical dual of the hull
  dbl::DoubleAffine phase_p;   // (P A, omega_M)
  dbl::DoubleAffine pdot;      // P^bullet A
  Mat gram;                    // hull fiber basis against sdot fiber basis
  bool gram_is_signed_permutation = false;
  bool pdot_is_special_dual = false;
  bool iota_is_bijection = false;
  bool adjoint_identity = false;
};

AfftgReport afftg_and_duals(const NormalForm& e, const Vec& omega_m, std::uint64_t seed = 1,
                            int trials = 10);

}  // namespace daff::phase

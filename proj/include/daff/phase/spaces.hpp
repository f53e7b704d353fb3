#pragma once

#include <optional>
#include <string>
#include <vector>

#include "daff/double/double_affine.hpp"
#include "daff/phase/cotangent.hpp"

namespace daff::phase {

enum class SpaceKind { AffCtg, PhaseP, Bbl, ContactC };
std::string to_string(SpaceKind k);

// y^i = value or pi_i = value.
struct Constraint {
  bool on_pi = false;
  std::size_t index = 0;
  Scalar value;
};

// One of the reductions of T*E together with its double structure: side 1
// is over the y-side base, side 2 over the pi-side base, the core holds p
// (and y^v for the contact bundle).
struct Constructed {
  SpaceKind kind;
  NormalForm e;
  unsigned mask = kNoMask;
  std::vector<Constraint> constraints;
  std::vector<std::size_t> side1, side2;  // fiber indices of y and pi kept
  bool core_has_y = false;
  dbl::DecomposedDouble d;
  Vec l1, l2;
  std::optional<Vec> core_section;

  ReducedCovector reduce(const CotangentPoint& w) const { return {e, mask, w}; }
  bool contains(const ReducedCovector& w) const;
  dbl::DoublePoint to_double(const ReducedCovector& w) const;
  // Inverse of to_double on canonical representatives over x.
  ReducedCovector from_double(const Vec& x, const dbl::DoublePoint& p) const;
  Vec project1(const ReducedCovector& w) const { return to_double(w).y(); }
  Vec project2(const ReducedCovector& w) const { return to_double(w).z(); }
  // The constrained set as a (special) double affine subspace of d.
  dbl::DoubleAffine affine() const;
};

// omega_M only matters for PhaseP, where it is the core section.
Constructed build(SpaceKind kind, const NormalForm& e, std::optional<Vec> omega_m = std::nullopt);

// T* of the model of A-bar over x (coordinates y^i, pi_i for the inner
// indices) injected into the hull of the phase bundle.
ReducedCovector iota(const NormalForm& e, const Vec& x, const Vec& ybar, const Vec& p, const Vec& pibar);

}  // namespace daff::phase

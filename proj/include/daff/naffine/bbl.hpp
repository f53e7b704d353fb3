#pragma once

#include "daff/double/double_affine.hpp"
#include "daff/naffine/graded.hpp"

namespace daff::naffine {

// Coordinate of T*E: y_alpha^j or its momentum p_alpha^j.
struct CotangentCoord {
  bool momentum = false;
  Degree alpha = 0;
  std::size_t j = 0;
};

struct Bbl {
  NAffine b;                           // order n+1
  std::vector<CotangentCoord> coords;  // one per coordinate of b
  std::size_t index_of(bool momentum, Degree alpha, std::size_t j) const;
};

// (n+1)-affine dual: momenta of y_alpha get degree 1^{n+1} - alpha,
// l_{n+1} = <sigma, p_{1^n}>.
Bbl bbl_n(const NAffine& a);

struct SideBase {
  std::size_t k;                   // side index, 0..n
  std::vector<std::size_t> kept;   // coordinates of b with entry k zero
  bool is_a = false;               // k = n: the bundle itself
  bool is_dual = false;            // k < n: special dual of A -> A_k
};

struct PairCheck {
  std::size_t i, j;
  bool vertical_matches = false;    // side base j against double.special_dual_vertical
  bool horizontal_matches = false;  // side base i against double.special_dual_horizontal
  bool adjoint_pairing = false;
};

struct SideBaseReport {
  std::vector<SideBase> sides;
  std::vector<PairCheck> pairs;
  std::vector<std::string> flags;  // every failed check, described
  bool passed() const { return flags.empty(); }
};

SideBaseReport side_bases(const NAffine& a, const Bbl& bbl, std::uint64_t seed = 1, int trials = 5);

// The special double affine restriction (A, aff_i, aff_j): y has entry i
// only, z entry j only, the core both; other coordinates are base.
dbl::DoubleAffine restrict_pair(const NAffine& a, std::size_t i, std::size_t j);

}  // namespace daff::naffine

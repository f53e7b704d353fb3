#pragma once

#include "daff/atlas/atlas.hpp"
#include "daff/verify/random.hpp"

namespace daff::verify {

// L(x) C U(x) with unitriangular polynomial L, U and constant unimodular C,
// so the determinant is a nonzero constant.
exact::PolyMat random_poly_invertible(Rng& rng, std::size_t n, std::size_t m, unsigned degree);

atlas::TransitionData random_transition(Rng& rng, std::size_t m, const atlas::FiberDims& d,
                                        unsigned degree = 1);

// Charts a, b, c with t_ac = compose(t_ab, t_bc), reverse edges filled by
// inversion and a few sample points per forward edge.
atlas::Atlas random_atlas3(Rng& rng, std::size_t m, const atlas::FiberDims& d, unsigned degree = 1);

}  // namespace daff::verify

#pragma once

#include "daff/naffine/graded.hpp"
#include "daff/verify/random.hpp"

namespace daff::verify {

// Each target row of degree mu gets a unimodular same-degree block plus
// products of coordinates whose degrees are disjoint and fit inside mu.
naffine::FilteredMap random_filtered(Rng& rng, const naffine::GradedSpace& e, std::size_t m);

}  // namespace daff::verify

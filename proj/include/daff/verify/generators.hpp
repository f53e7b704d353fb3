#pragma once

#include "daff/double/double_affine.hpp"
#include "daff/verify/random.hpp"

namespace daff::verify {

// Random v with l . v = 1; l must be nonzero.
Vec level_point(Rng& rng, const Vec& l);
// Random v with l . v = 0.
Vec kernel_point(Rng& rng, const Vec& l);

dbl::DecomposedDouble random_dims(Rng& rng, std::size_t max_dim);
dbl::DoubleAffine random_double_affine(Rng& rng, std::size_t max_dim, bool special);
dbl::DoubleAffine random_double_affine(Rng& rng, const dbl::DecomposedDouble& d, bool special);
dbl::DoublePoint random_point(Rng& rng, const dbl::DecomposedDouble& d);
dbl::DoublePoint random_point_in(Rng& rng, const dbl::DoubleAffine& a);
// Invertible morphism with random affine parts and Gamma.
dbl::DoubleMorphism random_morphism(Rng& rng, const dbl::DecomposedDouble& d);

}  // namespace daff::verify

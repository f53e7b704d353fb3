#pragma once

#include "daff/phase/cotangent.hpp"
#include "daff/verify/random.hpp"

namespace daff::verify {

phase::CotangentPoint random_cotangent(Rng& rng, const phase::NormalForm& e);
// Random point with y^alpha = 1 and pi_v = 1.
phase::CotangentPoint random_bbl_point(Rng& rng, const phase::NormalForm& e);
// Random invertible basis change fixing v_A and alpha_A.
Mat random_adapted(Rng& rng, const phase::NormalForm& e);

}  // namespace daff::verify

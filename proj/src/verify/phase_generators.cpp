#include "daff/verify/phase_generators.hpp"

namespace daff::verify {

phase::CotangentPoint random_cotangent(Rng& rng, const phase::NormalForm& e) {
  return {rng.vec(e.m), rng.vec(e.fiber()), rng.vec(e.m), rng.vec(e.fiber())};
}

phase::CotangentPoint random_bbl_point(Rng& rng, const phase::NormalForm& e) {
  auto w = random_cotangent(rng, e);
  w.y[e.alpha] = 1;
  w.pi[e.v] = 1;
  return w;
}

Mat random_adapted(Rng& rng, const phase::NormalForm& e) {
  const std::size_t n = e.fiber();
  for (;;) {
    Mat a = Mat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != e.v && j != e.alpha) a(i, j) = rng.scalar(3);
    if (phase::is_adapted(e, a)) return a;
  }
}

}  // namespace daff::verify

#include "daff/verify/atlas_generators.hpp"

namespace daff::verify {

using exact::Poly;
using exact::PolyMat;
using exact::PolyVec;

namespace {

Poly small_poly(Rng& rng, std::size_t m, unsigned degree) {
  return rng.poly(m, degree, 2, 2);
}

PolyVec random_pvec(Rng& rng, std::size_t n, std::size_t m, unsigned degree) {
  PolyVec v(n, m);
  for (std::size_t i = 0; i < n; ++i) v[i] = small_poly(rng, m, degree);
  return v;
}

PolyMat random_pmat(Rng& rng, std::size_t r, std::size_t c, std::size_t m, unsigned degree) {
  PolyMat a(r, c, m);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = small_poly(rng, m, degree);
  return a;
}

}  // namespace

PolyMat random_poly_invertible(Rng& rng, std::size_t n, std::size_t m, unsigned degree) {
  PolyMat l = PolyMat::identity(n, m), u = PolyMat::identity(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (rng.coin()) l(i, j) = small_poly(rng, m, degree);
      if (rng.coin()) u(j, i) = small_poly(rng, m, degree);
    }
  return l * PolyMat::from_constant(rng.unimodular(n), m) * u;
}

atlas::TransitionData random_transition(Rng& rng, std::size_t m, const atlas::FiberDims& d,
                                        unsigned degree) {
  atlas::TransitionData t = atlas::TransitionData::linear(
      exact::BaseMap(rng.unimodular(m), rng.vec(m, 2)), random_poly_invertible(rng, d.n1, m, degree),
      random_poly_invertible(rng, d.n2, m, degree), random_poly_invertible(rng, d.n3, m, degree));
  t.alpha0 = random_pvec(rng, d.n1, m, degree);
  t.beta0 = random_pvec(rng, d.n2, m, degree);
  t.gamma00 = random_pvec(rng, d.n3, m, degree);
  t.gamma_y = random_pmat(rng, d.n3, d.n1, m, degree);
  t.gamma_z = random_pmat(rng, d.n3, d.n2, m, degree);
  for (std::size_t u = 0; u < d.n3; ++u)
    for (std::size_t i = 0; i < d.n1; ++i)
      for (std::size_t b = 0; b < d.n2; ++b) t.gamma_yz(u, i, b) = small_poly(rng, m, degree);
  return t;
}

atlas::Atlas random_atlas3(Rng& rng, std::size_t m, const atlas::FiberDims& d, unsigned degree) {
  auto ab = random_transition(rng, m, d, degree);
  auto bc = random_transition(rng, m, d, degree);
  auto ac = atlas::compose(ab, bc);
  std::map<atlas::Atlas::Edge, std::vector<Vec>> samples;
  for (const char* e : {"ab", "bc", "ac"})
    samples[{std::string(1, e[0]), std::string(1, e[1])}] = {rng.vec(m, 3), rng.vec(m, 3)};
  return atlas::Atlas(m, d, {"a", "b", "c"},
                      {{{"a", "b"}, std::move(ab)}, {{"b", "c"}, std::move(bc)}, {{"a", "c"}, std::move(ac)}},
                      std::move(samples));
}

}  // namespace daff::verify

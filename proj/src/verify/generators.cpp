#include "daff/verify/generators.hpp"

#include "daff/error.hpp"

namespace daff::verify {

Vec level_point(Rng& rng, const Vec& l) {
  if (l.is_zero()) throw ZeroFunctional("cannot sample a level set of zero");
  Vec v = rng.vec(l.size());
  std::size_t pivot = 0;
  while (sgn(l[pivot]) == 0) ++pivot;
  v[pivot] = 0;
  v[pivot] = (1 - exact::dot(l, v)) / l[pivot];
  return v;
}

Vec kernel_point(Rng& rng, const Vec& l) {
  Vec v = rng.vec(l.size());
  if (l.is_zero()) return v;
  std::size_t pivot = 0;
  while (sgn(l[pivot]) == 0) ++pivot;
  v[pivot] = 0;
  v[pivot] = -exact::dot(l, v) / l[pivot];
  return v;
}

dbl::DecomposedDouble random_dims(Rng& rng, std::size_t max_dim) {
  auto pick = [&] { return static_cast<std::size_t>(rng.uniform(1, std::int64_t(max_dim))); };
  std::size_t n1 = pick(), n2 = pick(), n3 = pick();
  return {n1, n2, n3};
}

dbl::DoubleAffine random_double_affine(Rng& rng, std::size_t max_dim, bool special) {
  return random_double_affine(rng, random_dims(rng, max_dim), special);
}

dbl::DoubleAffine random_double_affine(Rng& rng, const dbl::DecomposedDouble& d, bool special) {
  std::optional<Vec> sigma;
  Vec l1 = rng.nonzero_vec(d.n1), l2 = rng.nonzero_vec(d.n2);
  if (special) sigma = rng.nonzero_vec(d.n3);
  return dbl::DoubleAffine(d, l1, l2, sigma);
}

dbl::DoublePoint random_point(Rng& rng, const dbl::DecomposedDouble& d) {
  return dbl::DoublePoint(d, rng.vec(d.n1), rng.vec(d.n2), rng.vec(d.n3));
}

dbl::DoublePoint random_point_in(Rng& rng, const dbl::DoubleAffine& a) {
  return dbl::DoublePoint(a.d(), level_point(rng, a.l1()), level_point(rng, a.l2()),
                          rng.vec(a.d().n3));
}

dbl::DoubleMorphism random_morphism(Rng& rng, const dbl::DecomposedDouble& d) {
  dbl::DoubleMorphism f = dbl::DoubleMorphism::block_diagonal(
      d, rng.invertible(d.n1), rng.invertible(d.n2), rng.invertible(d.n3));
  f.alpha0 = rng.vec(d.n1);
  f.beta0 = rng.vec(d.n2);
  f.gamma00 = rng.vec(d.n3);
  f.gamma_y = rng.mat(d.n3, d.n1);
  f.gamma_z = rng.mat(d.n3, d.n2);
  for (std::size_t u = 0; u < d.n3; ++u)
    for (std::size_t i = 0; i < d.n1; ++i)
      for (std::size_t b = 0; b < d.n2; ++b) f.gamma(u, i, b) = rng.scalar();
  return f;
}

}  // namespace daff::verify

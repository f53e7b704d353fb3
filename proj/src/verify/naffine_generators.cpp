#include "daff/verify/naffine_generators.hpp"

namespace daff::verify {

using exact::Poly;
using naffine::Degree;

naffine::FilteredMap random_filtered(Rng& rng, const naffine::GradedSpace& e, std::size_t m) {
  const std::size_t nv = m + e.total();
  naffine::FilteredMap f{m, std::vector<Poly>(nv, Poly(nv))};
  for (std::size_t k = 0; k < m; ++k) f.f[k] = Poly::variable(nv, k) + Poly::constant(nv, rng.scalar());
  for (const auto& [mu, dim] : e.dims()) {
    const Mat block = rng.unimodular(dim);
    const std::size_t off = m + e.offset(mu);
    for (std::size_t a = 0; a < dim; ++a) {
      Poly& row = f.f[off + a];
      for (std::size_t b = 0; b < dim; ++b) row += block(a, b) * Poly::variable(nv, off + b);
      row += rng.poly(m, 1, 2).extend(nv);
      for (int t = 0; t < 4; ++t) {
        const std::size_t v1 = m + rng.index(e.total()), v2 = m + rng.index(e.total());
        const Degree d1 = e.degree_of(v1 - m), d2 = e.degree_of(v2 - m);
        if ((d1 & d2) || ((d1 | d2) & ~mu)) continue;
        Poly coeff = rng.poly(m, 1, 1).extend(nv);
        if (coeff.is_zero()) coeff = Poly::constant(nv, Scalar(1));
        row += coeff * Poly::variable(nv, v1) * Poly::variable(nv, v2);
      }
    }
  }
  return f;
}

}  // namespace daff::verify

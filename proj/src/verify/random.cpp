#include "daff/verify/random.hpp"

namespace daff::verify {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) {
  // splitmix64 finalizer over a mix of both inputs.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

Scalar Rng::scalar(std::int64_t bound) {
  Scalar s(mpz_class(static_cast<long>(uniform(-bound, bound))),
           mpz_class(static_cast<long>(uniform(1, 3))));
  s.canonicalize();
  return s;
}

Scalar Rng::nonzero_scalar(std::int64_t bound) {
  Scalar s;
  do {
    s = scalar(bound);
  } while (sgn(s) == 0);
  return s;
}

Vec Rng::vec(std::size_t n, std::int64_t bound) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = scalar(bound);
  return v;
}

Vec Rng::nonzero_vec(std::size_t n, std::int64_t bound) {
  Vec v;
  do {
    v = vec(n, bound);
  } while (v.is_zero());
  return v;
}

Mat Rng::mat(std::size_t r, std::size_t c, std::int64_t bound) {
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = scalar(bound);
  return m;
}

Mat Rng::invertible(std::size_t n, std::int64_t bound) {
  for (;;) {
    Mat m = mat(n, n, bound);
    if (sgn(exact::det(m)) != 0) return m;
  }
}

Mat Rng::unimodular(std::size_t n) {
  Mat l = Mat::identity(n), u = Mat::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j < i) l(i, j) = uniform(-2, 2);
      if (j > i) u(i, j) = uniform(-2, 2);
    }
  Mat m = l * u;
  if (n && coin())
    for (std::size_t j = 0; j < n; ++j) m(0, j) = -m(0, j);
  return m;
}

exact::Poly Rng::poly(std::size_t nvars, unsigned max_degree, std::size_t max_terms,
                      std::int64_t bound) {
  exact::Poly p(nvars);
  std::size_t terms = static_cast<std::size_t>(uniform(0, std::int64_t(max_terms)));
  for (std::size_t t = 0; t < terms; ++t) {
    exact::Monomial e(nvars, 0);
    unsigned deg = static_cast<unsigned>(uniform(0, max_degree));
    for (unsigned k = 0; k < deg && nvars; ++k) ++e[index(nvars)];
    p.add_term(e, scalar(bound));
  }
  return p;
}

}  // namespace daff::verify

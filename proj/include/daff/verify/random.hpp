#pragma once

#include <cstdint>
#include <random>

#include "daff/exact/linalg.hpp"
#include "daff/exact/poly.hpp"

namespace daff::verify {

using exact::Mat;
using exact::Scalar;
using exact::Vec;

// Per-trial seed derived from (global seed, trial index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi]; computed by rejection so results are identical
  // across standard library implementations.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, std::int64_t(n) - 1)); }
  bool coin() { return uniform(0, 1) == 1; }

  // Small rational p/q with |p| <= bound, 1 <= q <= 3.
  Scalar scalar(std::int64_t bound = 5);
  Scalar nonzero_scalar(std::int64_t bound = 5);
  Vec vec(std::size_t n, std::int64_t bound = 5);
  Vec nonzero_vec(std::size_t n, std::int64_t bound = 5);
  Mat mat(std::size_t r, std::size_t c, std::int64_t bound = 5);
  Mat invertible(std::size_t n, std::int64_t bound = 3);
  // Random unimodular integer matrix (det = +-1); entries stay small.
  Mat unimodular(std::size_t n);
  exact::Poly poly(std::size_t nvars, unsigned max_degree, std::size_t max_terms,
                   std::int64_t bound = 4);

 private:
  std::mt19937_64 engine_;
};

}  // namespace daff::verify
